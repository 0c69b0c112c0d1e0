"""Complex special functions used throughout the package.

Everything here works in double precision.  The Dirichlet eta function is
summed with the Borwein/Cohen-Villegas-Zagier Chebyshev acceleration, which
is what makes critical-line evaluation up to height 100 cheap; zeta is
obtained from eta, and the boundary function F(s) = Gamma(s) eta(s) never
divides by the removable factor 1 - 2**(1-s).
"""
from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import special as _sp


class DomainError(ValueError):
    """Argument outside the domain where a function is implemented."""


class ExcludedPointError(DomainError):
    """Argument is a zero of 1 - 2**(1-s), where zeta = eta / (1 - 2**(1-s)) breaks."""


def _check_finite(value, name):
    if not np.all(np.isfinite(value)):
        raise FloatingPointError(f"{name} produced a non-finite value")
    return value


# ---------------------------------------------------------------------------
# Gamma and digamma
# ---------------------------------------------------------------------------

# B_{2k} / (2k (2k-1)) for the Stirling series, k = 1..10
_STIRLING = (
    1 / 12, -1 / 360, 1 / 1260, -1 / 1680, 1 / 1188, -691 / 360360,
    1 / 156, -3617 / 122400, 43867 / 244188, -174611 / 125400,
)
# B_{2k} / (2k) for the digamma asymptotic series
_DIGAMMA = (
    1 / 12, -1 / 120, 1 / 252, -1 / 240, 1 / 132, -691 / 32760,
    1 / 12, -3617 / 8160, 43867 / 14364, -174611 / 6600,
)
_SHIFT = 15.0
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)


def _as_complex_array(s):
    arr = np.asarray(s, dtype=complex)
    return arr, arr.ndim == 0


def _check_gamma_poles(arr):
    near_int = np.abs(arr - np.round(arr.real))
    if np.any((arr.real <= 0) & (near_int == 0)):
        raise DomainError("Gamma has a pole at non-positive integers")


def _shift_amounts(arr):
    return np.maximum(0, np.ceil(_SHIFT - arr.real)).astype(int)


def ln_gamma(s):
    """Principal branch of log Gamma(s).

    Uses upward recurrence to Re(s) >= 15 followed by a ten-term Stirling
    series.  The branch agrees with the analytic continuation of
    log Gamma from the positive real axis, with a cut along the negative
    real axis.  Accepts scalars or arrays.
    """
    arr, scalar = _as_complex_array(s)
    _check_gamma_poles(arr)
    shift = _shift_amounts(arr)
    z = arr + shift
    corr = np.zeros_like(arr)
    for k in range(int(shift.max(initial=0))):
        active = shift > k
        corr = corr + np.where(active, np.log(np.where(active, arr + k, 1.0)), 0.0)
    inv = 1.0 / z
    inv2 = inv * inv
    series = np.zeros_like(z)
    for coef in reversed(_STIRLING):
        series = series * inv2 + coef
    out = (z - 0.5) * np.log(z) - z + _HALF_LOG_2PI + series * inv - corr
    _check_finite(out, "ln_gamma")
    return complex(out) if scalar else out


def gamma(s):
    """Gamma(s) as exp(ln_gamma(s))."""
    return np.exp(ln_gamma(s))


def digamma(s):
    """Logarithmic derivative of Gamma, with the same shift strategy as `ln_gamma`."""
    arr, scalar = _as_complex_array(s)
    _check_gamma_poles(arr)
    shift = _shift_amounts(arr)
    z = arr + shift
    corr = np.zeros_like(arr)
    for k in range(int(shift.max(initial=0))):
        active = shift > k
        corr = corr + np.where(active, 1.0 / np.where(active, arr + k, 1.0), 0.0)
    inv2 = 1.0 / (z * z)
    series = np.zeros_like(z)
    for coef in reversed(_DIGAMMA):
        series = series * inv2 + coef
    out = np.log(z) - 0.5 / z - series * inv2 - corr
    _check_finite(out, "digamma")
    return complex(out) if scalar else out


# ---------------------------------------------------------------------------
# Dirichlet eta, Riemann zeta, boundary function
# ---------------------------------------------------------------------------

_ETA_MAX_TERMS = 380   # d_n ~ 5.83**n must stay below the float range


def eta_terms(s, digits=16):
    """Number of accelerated terms used for eta at `s`.

    The Chebyshev acceleration converges like (3 + sqrt 8)**-n times a
    factor exp(pi |Im s| / 2) that comes from the oscillation of
    (k+1)**-s; this gives n ~ 1.31 digits + 0.9 |Im s|.
    """
    n = math.ceil(1.31 * digits + 0.9 * abs(complex(s).imag)) + 4
    return min(max(20, n), _ETA_MAX_TERMS)


@functools.lru_cache(maxsize=64)
def _borwein_weights(n):
    d = np.empty(n + 1)
    term = acc = 1.0
    d[0] = 1.0
    for i in range(1, n + 1):
        term *= 4.0 * (n + i - 1) * (n - i + 1) / ((2 * i - 1) * (2 * i))
        acc += term
        d[i] = acc
    w = (d[n] - d[:n]) / d[n]
    w[1::2] *= -1.0
    w.setflags(write=False)
    return w


def _fsum_complex(values):
    return complex(math.fsum(values.real), math.fsum(values.imag))


def _eta_and_derivative(s, want_derivative):
    s = complex(s)
    if not s.real > 0:
        raise DomainError("dirichlet_eta is implemented for Re(s) > 0 only")
    n = eta_terms(s)
    if want_derivative:
        n = min(n + 8, _ETA_MAX_TERMS)
    w = _borwein_weights(n)
    logk = np.log(np.arange(1, n + 1, dtype=float))
    terms = w * np.exp(-s * logk)
    eta = _fsum_complex(terms)
    deta = _fsum_complex(-logk * terms) if want_derivative else None
    _check_finite(eta, "dirichlet_eta")
    return eta, deta


def dirichlet_eta(s):
    """Dirichlet eta function sum_{m>=0} (-1)**m / (m+1)**s for Re(s) > 0.

    Parameters
    ----------
    s : complex
        Point with positive real part.  Accuracy is about 1e-13 relative
        for |Im s| <= 100 away from zeros of eta.

    Returns
    -------
    complex
    """
    return _eta_and_derivative(s, False)[0]


def dirichlet_eta_derivative(s):
    """d/ds eta(s), by term-wise differentiation of the accelerated series."""
    return _eta_and_derivative(s, True)[1]


def _removable_factor(s):
    return 1.0 - 2.0 ** (1.0 - s)


def riemann_zeta(s):
    """Riemann zeta on Re(s) > 0 as eta(s) / (1 - 2**(1-s)).

    Raises `ExcludedPointError` at zeros of the denominator, i.e. at
    s = 1 + 2 pi i m / ln 2.
    """
    s = complex(s)
    if not s.real > 0:
        raise DomainError("riemann_zeta is implemented for Re(s) > 0 only")
    denom = _removable_factor(s)
    if abs(denom) < 1e-13:
        raise ExcludedPointError(f"1 - 2**(1-s) vanishes at s = {s}")
    return dirichlet_eta(s) / denom


def F(s):
    """Boundary function (1 - 2**(1-s)) Gamma(s) zeta(s), computed as Gamma(s) eta(s)."""
    s = complex(s)
    if not s.real > 0:
        raise DomainError("F is implemented for Re(s) > 0 only")
    return complex(gamma(s)) * dirichlet_eta(s)


def F_prime(s, method="analytic", step=1e-6):
    """Complex derivative of `F`.

    ``method="analytic"`` uses Gamma(s) (psi(s) eta(s) + eta'(s));
    ``method="difference"`` is a central difference with the given step,
    kept as a cross-check.
    """
    s = complex(s)
    if not s.real > 0:
        raise DomainError("F_prime is implemented for Re(s) > 0 only")
    if method == "analytic":
        eta, deta = _eta_and_derivative(s, True)
        return complex(gamma(s)) * (complex(digamma(s)) * eta + deta)
    if method == "difference":
        return (F(s + step) - F(s - step)) / (2 * step)
    raise ValueError(f"unknown method {method!r}")


def hardy_theta(t):
    """Riemann-Siegel theta: Im ln_gamma(1/4 + i t/2) - (t/2) ln pi."""
    return ln_gamma(0.25 + 0.5j * t).imag - 0.5 * t * math.log(math.pi)


def hardy_z(t):
    """exp(i theta(t)) zeta(1/2 + i t), returned as a complex number.

    Its imaginary part vanishes up to rounding; callers locate zeros from
    the sign of the real part.
    """
    return cmath.exp(1j * hardy_theta(t)) * riemann_zeta(0.5 + 1j * t)


# ---------------------------------------------------------------------------
# Laguerre basis
# ---------------------------------------------------------------------------

def laguerre(n, x):
    """Laguerre polynomial L_n(x) by the three-term recurrence."""
    if n < 0:
        raise DomainError("Laguerre degree must be non-negative")
    x = np.asarray(x, dtype=float)
    prev, cur = np.ones_like(x), 1.0 - x
    if n == 0:
        out = prev
    else:
        for k in range(1, n):
            prev, cur = cur, ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
        out = cur
    return float(out) if out.ndim == 0 else out


def chi(n, x):
    """Number-operator eigenfunction exp(-x/2) L_n(x)."""
    x = np.asarray(x, dtype=float)
    out = np.exp(-0.5 * x) * laguerre(n, x)
    return float(out) if out.ndim == 0 else out


def chi_table(n_max, x):
    """Rows chi_0(x) ... chi_{n_max}(x) stacked along the first axis.

    `x` may be complex (used on rotated integration rays).
    """
    x = np.asarray(x)
    out = np.empty((n_max + 1,) + x.shape, dtype=np.result_type(x, float))
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 1.0 - x
    for k in range(1, n_max):
        out[k + 1] = ((2 * k + 1 - x) * out[k] - k * out[k - 1]) / (k + 1)
    return out * np.exp(-0.5 * x)


# ---------------------------------------------------------------------------
# Bessel and Kelvin functions
# ---------------------------------------------------------------------------

_KELVIN_ROT = cmath.exp(0.75j * math.pi)


def bessel_j0(x):
    """Bessel J_0 (thin wrapper over scipy.special.j0)."""
    return _sp.j0(x)


def bessel_i0(x):
    """Modified Bessel I_0 (thin wrapper over scipy.special.i0)."""
    return _sp.i0(x)


def kelvin_ber1_bei1(x):
    """Kelvin functions (ber_1(x), bei_1(x)) from J_1(x exp(3 pi i / 4))."""
    val = _sp.jv(1, np.asarray(x, dtype=float) * _KELVIN_ROT)
    return val.real, val.imag


# ---------------------------------------------------------------------------
# Bernoulli numbers and the c_m table
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoefficientTable:
    """Bernoulli numbers (B_1 = +1/2) and c_m = B_m (2**m - 1) / m!.

    ``bernoulli`` and ``c_exact`` hold exact rationals; ``c`` is the float
    image of ``c_exact``.  The power series sum c_m x**m equals
    x / (1 + exp(-x)) and converges for |x| < pi.
    """

    bernoulli: tuple
    c_exact: tuple
    c: np.ndarray

    @property
    def m_max(self):
        return len(self.bernoulli) - 1


@functools.lru_cache(maxsize=8)
def bernoulli_and_c(m_max=64):
    if m_max < 0:
        raise DomainError("m_max must be non-negative")
    B = [Fraction(1)]
    for m in range(1, m_max + 1):
        acc = sum(math.comb(m + 1, k) * B[k] for k in range(m))
        B.append((m + 1 - acc) / (m + 1))
    c_exact = tuple(B[m] * (2 ** m - 1) / math.factorial(m) for m in range(m_max + 1))
    c = np.array([float(v) for v in c_exact])
    c.setflags(write=False)
    return CoefficientTable(tuple(B), c_exact, c)
