"""Numerical laboratory for a Hamiltonian whose spectrum is tied to the zeta zeros.

Modules
-------
specfun      Gamma, eta, zeta, F = Gamma eta, Laguerre/Bessel/Kelvin, Bernoulli table
quadrature   adaptive Gauss-Kronrod on [0, inf) and Mellin transforms
operators    truncated su(1,1) matrices and the transformed Hamiltonian
eigensystem  eigenfunctions, boundary values and the zero locator
mellinspace  the Mellin-space ODE, moments and the integral boundary condition
weightspace  the weight function, the domain condition and the trivial kernel
borel        Borel sums of the Laguerre and Bernoulli series
suites, cli  verification reports and the command-line interface
"""
from .specfun import DomainError, ExcludedPointError, F, F_prime, riemann_zeta
from .quadrature import AccuracyError
from .operators import ModelParams
from .eigensystem import SpectralPoint, find_zeros

__all__ = ["DomainError", "ExcludedPointError", "AccuracyError", "F", "F_prime",
           "riemann_zeta", "ModelParams", "SpectralPoint", "find_zeros"]
__version__ = "0.1.0"
