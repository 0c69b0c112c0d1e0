"""The eigenvalue problem in Mellin space.

Writing the eigenstate as sum_k f_k |k> with f_k = g_k / k! and
g_k = int_0^inf z**(k-1) g_s(z) dz turns the three-term-plus-series
recurrence for f_k into the first-order ODE

    (-i z d/dz + i/2 - i z - i z / (1 + e^{-z})) g = i (1/2 - s) g,

solved by g_s(z) = g0 z**s e^{-z} / (1 + e^z).  The moment form of the
recurrence involves sum_m c_m g_{k+m}; that series is only asymptotic
(the c_m series for x / (1 + e^{-x}) has radius pi), so residuals are
reported next to the size of the last term kept.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import specfun
from .quadrature import (DEFAULT, FERMI_SECTOR, IntegrandProfile, fermi, fermi_profile,
                         mellin_transform)
from .specfun import DomainError, bernoulli_and_c


# g_k grows like k! 2**-k and k! itself leaves double range at 171
K_LIMIT = 160


class AccuracyWarning(UserWarning):
    """A truncated expansion has not visibly converged."""


@dataclass(frozen=True)
class MellinEigenprofile:
    s: complex
    g0: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "s", complex(self.s))

    @property
    def eigenvalue(self):
        return 1j * (0.5 - self.s)

    def g(self, z):
        z = np.asarray(z)
        return self.g0 * np.exp(self.s * np.log(z) - z) * fermi(z)

    def dg(self, z):
        """Analytic derivative: g (s/z - 1 - 1/(1 + e^{-z}))."""
        z = np.asarray(z)
        return self.g(z) * (self.s / z - 1.0 - fermi(-z))

    def weight_profile(self):
        """g0 e^{-z}/(1+e^z): the moments are its Mellin transform at k + s."""
        g0 = self.g0
        return IntegrandProfile(lambda z: g0 * np.exp(-z) * fermi(z), 0.0,
                                "exponential", 2.0, FERMI_SECTOR)


def ode_residual(profile, z):
    """Left side minus right side of the Mellin-space ODE at z > 0."""
    if np.any(np.asarray(z) <= 0):
        raise DomainError("ode_residual needs z > 0")
    g, dg = profile.g(z), profile.dg(z)
    lhs = -1j * z * dg + 0.5j * g - 1j * z * g - 1j * z * g * fermi(-z)
    return lhs - profile.eigenvalue * g


@dataclass(frozen=True)
class MomentVector:
    """g_k and f_k = g_k / k! for k = 0 .. k_max, with quadrature errors."""

    s: complex
    g: np.ndarray
    errors: np.ndarray = field(repr=False)

    @property
    def k_max(self):
        return len(self.g) - 1

    @property
    def f(self):
        fact = np.array([math.factorial(k) for k in range(len(self.g))], dtype=float)
        return self.g / fact


def moments(profile, k_max, cfg=DEFAULT):
    """Moments g_k = {M g_s}(k) by quadrature, k = 0 .. k_max."""
    if not 2 <= k_max <= K_LIMIT:
        raise ValueError(f"k_max must lie in [2, {K_LIMIT}]")
    if not profile.s.real > 0:
        raise DomainError("moments need Re(s) > 0")
    w = profile.weight_profile()
    out = [mellin_transform(w, k + profile.s, cfg, full_output=True) for k in range(k_max + 1)]
    g = np.array([r.value for r in out], dtype=complex)
    err = np.array([r.error for r in out])
    return MomentVector(profile.s, g, err)


def recurrence_terms(mv, k, m_max):
    """Terms c_m g_{k+m} / k!, m = 0 .. m_max (these equal c_m f_{k+m} (k+m)!/k!)."""
    if k + m_max > mv.k_max:
        raise ValueError("need k + m_max <= k_max")
    c = bernoulli_and_c(max(m_max, 1)).c[: m_max + 1]
    return c * mv.g[k: k + m_max + 1] / math.factorial(k)


def recurrence_residual(mv, s, k, m_max):
    """Residual of the moment recurrence truncated at m_max.

    Returns ``(residual, tail)`` where ``tail`` is |c_{m_max} f_{k+m_max}
    (k+m_max)!/k!|, the magnitude of the last term kept.
    """
    s = complex(s)
    f = mv.f
    terms = recurrence_terms(mv, k, m_max)
    series = complex(math.fsum(terms.real), math.fsum(terms.imag))
    lhs = 1j * f[k] * (k + 0.5) - 1j * f[k + 1] * (k + 1) - 1j * series
    return lhs - 1j * (0.5 - s) * f[k], float(abs(terms[-1]))


def optimal_truncation(mv, k, m_limit=None):
    """Index m of the smallest non-zero term |c_m g_{k+m}| (m >= 2)."""
    m_limit = mv.k_max - k if m_limit is None else m_limit
    mags = np.abs(recurrence_terms(mv, k, m_limit))
    candidates = [m for m in range(2, m_limit + 1) if mags[m] > 0]
    return min(candidates, key=lambda m: mags[m])


def integral_bc(profile, cfg=DEFAULT):
    """int_0^inf (dz/z) e^z g_s(z) = g0 {M 1/(1+e^z)}(s) by quadrature."""
    if not profile.s.real > 0:
        raise DomainError("integral_bc needs Re(s) > 0")
    return profile.g0 * mellin_transform(fermi_profile(), profile.s, cfg)


def reconstruct(profile, x, n_max, cfg=DEFAULT, mv=None, warn_ratio=1e-8):
    """Partial sum sum_{n <= n_max} chi_n(x) f_n of the position-space eigenfunction.

    Returns ``(value, last_term)``; warns with `AccuracyWarning` when the
    last term exceeds ``warn_ratio`` times the value.
    """
    if x < 0:
        raise DomainError("x must be non-negative")
    mv = moments(profile, max(n_max, 2), cfg) if mv is None else mv
    chi = specfun.chi_table(n_max, np.array(float(x)))
    terms = chi * mv.f[: n_max + 1]
    value = complex(math.fsum(terms.real), math.fsum(terms.imag))
    last = float(abs(terms[-1]))
    if last > warn_ratio * abs(value):
        warnings.warn(f"reconstruction at x={x} not converged: last term {last:.2e}, "
                      f"value {abs(value):.2e}", AccuracyWarning, stacklevel=2)
    return value, last
