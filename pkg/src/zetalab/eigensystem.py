"""Position-space eigenfunctions, their boundary values, and the zero locator.

The eigenfunction for spectral parameter s is

    Psi_s(x) = sqrt(t)/sqrt(2 pi) * int_0^inf z**(s-1) e^{alpha z} / (1 + e^z)
               * sum_n t**n chi_n(x) chi_n(z) dz,

and at x = 0 the Laguerre generating function collapses the kernel, leaving
sqrt(t) / (sqrt(2 pi) (1 - t)) * Gamma(s) eta(s).  The Dirichlet condition
Psi_s(0) = 0 therefore picks out zeros of zeta; `find_zeros` locates those
on the critical line from sign changes of the Hardy function.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import specfun
from .quadrature import (DEFAULT, IntegrandProfile, QuadResult, fermi, fermi_profile,
                         integrate_halfline, mellin_transform)
from .specfun import DomainError

SQRT_2PI = math.sqrt(2 * math.pi)
SUPPORTED_HEIGHT = 100.0


@dataclass(frozen=True)
class SpectralPoint:
    s: complex

    @property
    def eigenvalue(self):
        """E_s = i (1/2 - s)."""
        return 1j * (0.5 - complex(self.s))

    @property
    def on_critical_line(self):
        return complex(self.s).real == 0.5

    @classmethod
    def on_line(cls, height):
        return cls(complex(0.5, height))


@dataclass(frozen=True)
class ZeroRecord:
    index: int
    height: float
    bracket: tuple
    residual: float          # |F(1/2 + i height)|
    zeta_residual: float     # |zeta(1/2 + i height)|
    flagged: bool = False

    @property
    def point(self):
        return SpectralPoint.on_line(self.height)

    @property
    def eigenvalue(self):
        return self.point.eigenvalue


def prefactor(params):
    """sqrt(t) / (sqrt(2 pi) (1 - t))."""
    return params.sqrt_t / (SQRT_2PI * (1 - params.t))


def generating_function(t, z):
    """Closed form of sum_n t**n chi_n(z): e^{-alpha z} / (1 - t), Re(t) < 1."""
    t = complex(t)
    if t == 1 or not t.real < 1:
        raise DomainError("generating function needs Re(t) < 1")
    alpha = (1 + t) / (2 - 2 * t)
    return np.exp(-alpha * np.asarray(z)) / (1 - t)


def generating_partial(t, z, n_max):
    """Partial sum sum_{n <= n_max} t**n chi_n(z)."""
    rows = specfun.chi_table(n_max, np.asarray(z, dtype=float))
    powers = complex(t) ** np.arange(n_max + 1)
    return np.tensordot(powers, rows, axes=1)


def kernel_terms(t, eps=1e-15):
    """Terms needed so that |t|**(n+1) / (1 - |t|) < eps."""
    r = abs(complex(t))
    if r == 0:
        return 0
    if not r < 1:
        raise DomainError("truncated kernel needs |t| < 1")
    return max(1, math.ceil(math.log(eps * (1 - r)) / math.log(r)))


def eigenfunction(s, params, x, n_max=None, cfg=DEFAULT, full_output=False):
    """Psi_s(x) with the Laguerre kernel truncated after `n_max` terms.

    Requires |t| < 1 and Re(alpha) < 1 (otherwise e^{alpha z} / (1 + e^z)
    does not decay and the truncated kernel cannot compensate).  With
    ``full_output`` returns ``QuadResult(value, error, scale)`` where the
    error includes the kernel tail bound and ``scale`` is the integral of
    the modulus of the integrand times |prefactor|.
    """
    s = complex(s)
    t = params.t
    if not abs(t) < 1:
        raise DomainError("eigenfunction quadrature path needs |t| < 1")
    if not params.alpha.real < 1:
        raise DomainError("eigenfunction quadrature path needs Re(alpha) < 1")
    if not 0 < s.real:
        raise DomainError("eigenfunction needs Re(s) > 0")
    if x < 0:
        raise DomainError("x must be non-negative")
    n_max = kernel_terms(t) if n_max is None else n_max
    powers = t ** np.arange(n_max + 1)
    chi_x = specfun.chi_table(n_max, np.array(float(x)))
    coeffs = powers * chi_x
    alpha = params.alpha

    def ev(z):
        kern = np.tensordot(coeffs, specfun.chi_table(n_max, z), axes=1)
        return np.exp((s - 1) * np.log(z) + (alpha - 1) * z) * fermi(-z) * kern

    prof = IntegrandProfile(ev, s.real - 1, "exponential", 1 - alpha.real)
    res = integrate_halfline(prof, cfg, oscillation=abs(s.imag), full_output=True)
    pref = params.sqrt_t / SQRT_2PI
    value = pref * res.value
    if not full_output:
        return value
    r = abs(t)
    tail = r ** (n_max + 1) / (1 - r)
    weight = abs(complex(specfun.gamma(s.real))) / (1 - alpha.real) ** s.real
    err = abs(pref) * (res.error + tail * weight)
    return QuadResult(value, err, abs(pref) * res.l1)


def boundary_value_closed(s, params):
    """Psi_s(0) = sqrt(t) / (sqrt(2 pi)(1 - t)) * (1 - 2**(1-s)) Gamma(s) zeta(s)."""
    return prefactor(params) * specfun.F(s)


def boundary_value_quadrature(s, params, cfg=DEFAULT, full_output=False):
    """Psi_s(0) from the Mellin transform of 1/(1+e^z) by quadrature."""
    res = mellin_transform(fermi_profile(), s, cfg, full_output=True)
    pref = prefactor(params)
    if full_output:
        return QuadResult(pref * res.value, abs(pref) * res.error, abs(pref) * res.l1)
    return pref * res.value


def general_boundary(W, s, params, cfg=DEFAULT):
    """Boundary value when 1/(1+e^x) is replaced by an arbitrary W(x)."""
    return prefactor(params) * mellin_transform(W, s, cfg)


# ---------------------------------------------------------------------------
# Zero location
# ---------------------------------------------------------------------------

def locator(t):
    """Real-valued Hardy function Z(t)."""
    return specfun.hardy_z(t).real


def _grid(lo, hi, step):
    n = int(math.floor((hi - lo) / step + 1e-9))
    ts = lo + step * np.arange(n + 1)
    if ts[-1] < hi - 1e-12:
        ts = np.append(ts, hi)
    return ts


def find_zeros(height_max, step=0.1, xtol=1e-12, residual_tol=1e-6, threads=1,
               t_min=None):
    """Zeros of zeta(1/2 + i t) with 0 < t <= height_max.

    The Hardy function is sampled every `step`; each sign change is
    bracketed and refined with Brent's method to |dt| <= xtol (well under
    the 1e-9 requirement).  Records whose |F| exceeds `residual_tol` are
    returned with ``flagged=True`` rather than dropped.  The grid does not
    depend on `threads`, so the output is identical for any thread count.
    """
    if height_max > SUPPORTED_HEIGHT:
        raise DomainError(f"zeros are supported up to height {SUPPORTED_HEIGHT}")
    lo = step if t_min is None else t_min
    if height_max <= lo:
        return []
    ts = _grid(lo, height_max, step)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            vals = np.array(list(pool.map(locator, ts)))
    else:
        vals = np.array([locator(t) for t in ts])
    records = []
    for i in range(len(ts) - 1):
        a, b = ts[i], ts[i + 1]
        fa, fb = vals[i], vals[i + 1]
        if fa == 0.0:
            root = a
        elif fa * fb < 0:
            root = brentq(locator, a, b, xtol=xtol, rtol=4 * np.finfo(float).eps)
        else:
            continue
        if records and abs(records[-1].height - root) < xtol:
            continue
        s = complex(0.5, root)
        resid = abs(specfun.F(s))
        records.append(ZeroRecord(len(records) + 1, float(root), (float(a), float(b)),
                                  resid, abs(specfun.riemann_zeta(s)), resid > residual_tol))
    return records
