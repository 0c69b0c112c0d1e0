"""Borel sums of the Laguerre generating series and the Bernoulli series.

S1: sum_n L_n(z) x**n = exp(-z x / (1 - x)) / (1 - x).  The Borel integral
    e^z int_0^inf e^{u (x-1)} J0(2 sqrt(z u)) du continues it to Re(x) < 1,
    including |x| >= 1 where the series diverges.
S2: sum_n B_n x**n / n! = x / (1 - e^{-x}), radius 2 pi.  The resummed form
    1 + x/2 + (x coth(x/2) - 2)/2 continues it to Re(x) > 0, |Im x| < 2 pi.

The Kelvin-function reduction and the integral representation of the even
Bernoulli numbers that underlie S2 are checked by quadrature.

Near x = 1 the S1 integral is exponentially small (e^{-z/(1-x)} against an
integrand of size one near u = 0), so its relative accuracy there is
limited by rounding, not by the quadrature rule.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from . import specfun
from .quadrature import DEFAULT, IntegrandProfile, integrate_halfline
from .specfun import DomainError, bernoulli_and_c


@dataclass(frozen=True)
class BorelCase:
    """Parameter domain of one resummation."""

    case_id: str
    description: str

    def contains(self, x, z=None):
        x = complex(x)
        if self.case_id == "S1_laguerre":
            return x.real < 1 and (z is None or z >= 0)
        return x.real > 0 and abs(x.imag) < 2 * math.pi

    def require(self, x, z=None):
        if not self.contains(x, z):
            raise DomainError(f"{self.case_id}: ({x}, {z}) outside {self.description}")


S1 = BorelCase("S1_laguerre", "Re(x) < 1, z >= 0")
S2 = BorelCase("S2_bernoulli", "Re(x) > 0, |Im(x)| < 2 pi")


# ---------------------------------------------------------------------------
# S1
# ---------------------------------------------------------------------------

def s1_closed(x, z):
    S1.require(x, z)
    x = complex(x)
    return cmath.exp(-z * x / (1 - x)) / (1 - x)


def s1_borel_integral(x, z, cfg=DEFAULT, full_output=False):
    """e^z int_0^inf e^{u(x-1)} J0(2 sqrt(z u)) du by adaptive quadrature."""
    S1.require(x, z)
    x = complex(x)
    p = 1 - x
    root_z = math.sqrt(z)

    def ev(u):
        return np.exp(-p * u) * specfun.bessel_j0(2 * root_z * np.sqrt(u))

    # J0 zeros are spaced by about pi in 2 sqrt(z u); splitting there keeps
    # panels inside one lobe until the envelope has decayed.
    u_env = min(40.0 / p.real, 4000.0)
    splits = tuple(_j0_zero_splits(z, u_env))
    cfg = replace(cfg, split_points=tuple(cfg.split_points) + splits)
    prof = IntegrandProfile(ev, 0.0, "exponential", p.real)
    res = integrate_halfline(prof, cfg, oscillation=abs(p.imag), full_output=True)
    scale = math.exp(z)
    if full_output:
        return type(res)(scale * res.value, scale * res.error, scale * res.l1)
    return scale * res.value


def _j0_zero_splits(z, u_max, limit=400):
    if z == 0:
        return []
    out = []
    k = 1
    while len(out) < limit:
        j = (k - 0.25) * math.pi      # McMahon's leading term for the k-th zero
        u = j * j / (4 * z)
        if u > u_max:
            break
        out.append(u)
        k += 1
    return out


def s1_partial(x, z, N):
    """sum_{n <= N} L_n(z) x**n (any x; diverges for |x| >= 1)."""
    x = complex(x)
    terms = [1.0 + 0j]
    prev, cur = 1.0, 1.0 - z
    if N >= 1:
        terms.append(cur * x)
    xn = x
    for k in range(1, N):
        prev, cur = cur, ((2 * k + 1 - z) * cur - k * prev) / (k + 1)
        xn *= x
        terms.append(cur * xn)
    arr = np.array(terms)
    return complex(math.fsum(arr.real), math.fsum(arr.imag))


# ---------------------------------------------------------------------------
# S2
# ---------------------------------------------------------------------------

def s2_closed(x):
    """x / (1 - e^{-x}), with the removable value 1 at x = 0."""
    x = complex(x)
    if x == 0:
        return 1.0 + 0j
    den = -np.expm1(-x)
    if den == 0:
        raise DomainError(f"pole of x / (1 - e^-x) at {x}")
    return x / den


def s2_resummed(x):
    """1 + x/2 + (x coth(x/2) - 2)/2."""
    S2.require(x)
    x = complex(x)
    return 1 + x / 2 + (x / cmath.tanh(x / 2) - 2) / 2


def s2_terms(x, N):
    """Terms B_n x**n / n!, n = 0 .. N."""
    table = bernoulli_and_c(max(N, 1))
    x = complex(x)
    out, xn = [], 1.0 + 0j
    for n in range(N + 1):
        out.append(float(table.bernoulli[n] / math.factorial(n)) * xn)
        xn *= x
    return np.array(out)


def s2_partial(x, N):
    t = s2_terms(x, N)
    return complex(math.fsum(t.real), math.fsum(t.imag))


# ---------------------------------------------------------------------------
# Integral representations
# ---------------------------------------------------------------------------

def kelvin_integrand(x, u):
    """t -> e^{-t} (sqrt(t x u)/(2 sqrt 2)) (ber1 + bei1)(2 sqrt(t x u))."""
    xu = x * u

    def ev(t):
        r = np.sqrt(t * xu)
        ber, bei = specfun.kelvin_ber1_bei1(2 * r)
        return np.exp(-t) * r / (2 * math.sqrt(2)) * (ber + bei)

    return ev


def kelvin_integral_check(x, u, cfg=DEFAULT):
    """Quadrature of the Kelvin integral minus -(ux/2) sin(ux).

    Returns ``(residual, scale)`` where the acceptance bound is
    1e-6 * scale, scale = 1 + ux/2.
    """
    if not (x > 0 and u > 0 and x * u <= 50):
        raise DomainError("need x > 0, u > 0 and x u <= 50")
    # The integrand behaves like t near 0.  Its envelope exp(sqrt(2 x u t) - t)
    # peaks at t = xu/2 and only decays like e^{-t} beyond t ~ 2 xu.
    xu = x * u
    prof = IntegrandProfile(kelvin_integrand(x, u), 1.0, "exponential", 1.0)
    cfg2 = replace(cfg, split_points=tuple(cfg.split_points) + (max(xu / 2, 1.0),),
                   tail_cutoff=max(cfg.tail_cutoff, 2 * xu + cfg.tail_cutoff))
    lhs = integrate_halfline(prof, cfg2)
    rhs = -0.5 * u * x * math.sin(u * x)
    return float(lhs.real - rhs), 1 + 0.5 * u * x


def bernoulli_integral(n, cfg=DEFAULT):
    """4 n (-1)**(n+1) int_0^inf u**(2n-1) / (e^{2 pi u} - 1) du."""
    if not 1 <= n <= 10:
        raise DomainError("n must lie in 1..10")
    k = 2 * n - 1

    def ev(u):
        return np.exp(k * np.log(u)) / np.expm1(2 * math.pi * u)

    prof = IntegrandProfile(ev, 2 * n - 2, "exponential", 2 * math.pi)
    return 4 * n * (-1) ** (n + 1) * integrate_halfline(prof, cfg).real


def bernoulli_integral_check(n, cfg=DEFAULT):
    """Quadrature value minus the exact B_{2n}."""
    exact = bernoulli_and_c(2 * n).bernoulli[2 * n]
    return bernoulli_integral(n, cfg) - float(Fraction(exact))
