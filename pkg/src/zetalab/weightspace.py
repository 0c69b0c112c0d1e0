"""The weight function of the transformed inner product and its consequences.

With sigma(u) = 1/(1 + e^u) the weight is

    w(z, y) = sigma(y/z)/z + sigma(z/y)/y,

symmetric in its arguments and homogeneous of degree -1, which is exactly
the transport condition z dw/dz = -d/dy (y w(y, z)).  For power profiles
u'(y) = y**(s-1) the substitutions y = z w and y = z / w reduce the
boundary-term integral to F(s) + F(1 - s), independent of z.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from . import specfun
from .eigensystem import SpectralPoint
from .quadrature import (DEFAULT, FERMI_SECTOR, IntegrandProfile, fermi, integrate_halfline,
                         integrate_interval, mellin_profile, ray_angle)
from .specfun import DomainError

# The integrand sigma(z/y)/y vanishes like exp(-z cos(theta)/r) at the origin
# of a ray; the log grid starts this many e-folds into that decay.
_B_HEAD_EFOLDS = 80.0


def _sig_prime(u):
    return -fermi(u) * fermi(-u)


def _check_positive(*args):
    for a in args:
        if np.any(np.asarray(a) <= 0):
            raise DomainError("weight arguments must be positive")


def weight(z, y):
    """w(z, y) = (1/z)/(1 + e^{y/z}) + (1/y)/(1 + e^{z/y})."""
    _check_positive(z, y)
    z, y = np.asarray(z, dtype=float), np.asarray(y, dtype=float)
    return fermi(y / z) / z + fermi(z / y) / y


def weight_partials(z, y):
    """(dw/dz, dw/dy) from sigma' = -sigma(u) sigma(-u)."""
    _check_positive(z, y)
    z, y = np.asarray(z, dtype=float), np.asarray(y, dtype=float)
    a, b = y / z, z / y
    dz = -fermi(a) / z**2 - y * _sig_prime(a) / z**3 + _sig_prime(b) / y**2
    dy = _sig_prime(a) / z**2 - fermi(b) / y**2 - z * _sig_prime(b) / y**3
    return dz, dy


def check_transport(z, y):
    """Residual of z dw(z,y)/dz + d/dy [y w(y, z)] and the scale |w(z, y)|.

    The second term is expanded as w(y, z) + y (d_1 w)(y, z), i.e. with the
    roles of the arguments as written, not by appeal to symmetry.
    """
    dz, _ = weight_partials(z, y)
    d1_yz, _ = weight_partials(y, z)
    resid = z * dz + weight(y, z) + y * d1_yz
    return resid, np.abs(weight(z, y))


# ---------------------------------------------------------------------------
# Boundary-term integrals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TestProfile:
    """A test function u'(y) for the boundary term.

    kind is ``"power"`` (u' = y**(s-1)), ``"compact"`` (smooth bump on
    [lo, hi]) or ``"custom"`` (evaluator plus an `IntegrandProfile`-style
    shape description used for the y-integration).
    """

    __test__ = False  # not a pytest class

    evaluator: Callable
    kind: str
    s: Optional[complex] = None
    support: Optional[tuple] = None
    shape: Optional[IntegrandProfile] = None

    @classmethod
    def power(cls, s):
        s = complex(s)
        return cls(lambda y: np.exp((s - 1) * np.log(y)), "power", s=s)

    @classmethod
    def bump(cls, lo=1.0, hi=2.0):
        """exp(-1 / ((y - lo)(hi - y))) on (lo, hi), zero elsewhere."""
        if not 0 < lo < hi:
            raise ValueError("need 0 < lo < hi")

        def ev(y):
            y = np.asarray(y, dtype=float)
            inside = (y > lo) & (y < hi)
            d = np.where(inside, (y - lo) * (hi - y), 1.0)
            return np.where(inside, np.exp(-1.0 / d), 0.0)

        return cls(ev, "compact", support=(lo, hi))

    @classmethod
    def custom(cls, evaluator, shape):
        return cls(evaluator, "custom", shape=shape)


def _term_a_profile(z):
    """y -> sigma(y/z)/z."""
    return IntegrandProfile(lambda y: fermi(y / z) / z, 0.0, "exponential", 1.0 / z,
                            FERMI_SECTOR)


def _term_b_profile(z):
    """y -> sigma(z/y)/y, which tends to 1/(2y) at infinity."""
    return IntegrandProfile(lambda y: fermi(z / y) / y, 0.0, "power", 1.0, FERMI_SECTOR)


def _power_term(f, s, z, cfg, vanishing_head):
    angle = ray_angle(f, s)
    prof = mellin_profile(f, s, angle)
    if vanishing_head:
        # The log grid starts at ln r = -39 / (a + 1); choose a so that it
        # starts where exp(-z cos(angle) / r) is negligible.
        depth = max(-math.log(z * math.cos(angle) / _B_HEAD_EFOLDS), 1.0)
        a = max(prof.singularity_exponent, 39.0 / depth - 1.0)
        prof = replace(prof, singularity_exponent=a)
    if prof.decay_class == "power" and prof.decay_rate <= 1:
        raise DomainError("second boundary term diverges at infinity for Re(s) >= 1")
    return integrate_halfline(prof, cfg, oscillation=abs(s.imag))


def boundary_terms(u, z, cfg=DEFAULT):
    """The two pieces of int_0^inf w(z, y) u'(y) dy, unnormalised.

    Returns ``(A, B)`` with A = int sigma(y/z) u'(y) dy / z and
    B = int sigma(z/y) u'(y) dy / y.  Raises `DomainError` for a piece that
    diverges (for power profiles: A needs Re(s) > 0, B needs Re(s) < 1).
    """
    if z <= 0:
        raise DomainError("z must be positive")
    if u.kind == "power":
        s = u.s
        if not s.real > 0:
            raise DomainError("first boundary term diverges at the origin for Re(s) <= 0")
        a = _power_term(_term_a_profile(z), s, z, cfg, False)
        b = _power_term(_term_b_profile(z), s, z, cfg, True)
        return a, b
    if u.kind == "compact":
        lo, hi = u.support
        ev = u.evaluator
        edges = dict(n_init=8)
        a = integrate_interval(lambda y: fermi(y / z) / z * ev(y), lo, hi, cfg, **edges)
        b = integrate_interval(lambda y: fermi(z / y) / y * ev(y), lo, hi, cfg, **edges)
        return a, b
    shape, ev = u.shape, u.evaluator
    pa = IntegrandProfile(lambda y: fermi(y / z) / z * ev(y), shape.singularity_exponent,
                          shape.decay_class, shape.decay_rate)
    # sigma(z/y)/y -> 1/(2y) adds one power of decay; exponential decay is kept
    rate_b = shape.decay_rate + 1 if shape.decay_class == "power" else shape.decay_rate
    pb = IntegrandProfile(lambda y: fermi(z / y) / y * ev(y),
                          max(shape.singularity_exponent, 10.0), shape.decay_class, rate_b)
    return integrate_halfline(pa, cfg), integrate_halfline(pb, cfg)


def boundary_term_probe(u, z, cfg=DEFAULT):
    """(1/u'(z)) int_0^inf w(z, y) u'(y) dy at finite z.

    For compactly supported profiles u'(z) vanishes outside the support;
    there the probe returns z int w(z, y) u'(y) dy, the factor that
    multiplies u'(z) in the boundary term itself.
    """
    a, b = boundary_terms(u, z, cfg)
    total = a + b
    uz = complex(u.evaluator(np.array(float(z))))
    if u.kind == "compact" and uz == 0:
        return z * total
    if uz == 0:
        raise DomainError("u'(z) vanishes; probe undefined at this z")
    return total / uz


@dataclass(frozen=True)
class DomainLimit:
    s: complex
    closed: complex
    z_values: tuple
    quadrature: tuple

    @property
    def spread(self):
        """Largest distance between the quadrature values at different z."""
        q = self.quadrature
        return max(abs(a - b) for a in q for b in q)

    @property
    def deviation(self):
        """Largest distance between a quadrature value and the closed form."""
        return max(abs(v - self.closed) for v in self.quadrature)

    @property
    def value(self):
        return self.closed


def domain_limit_closed(s):
    """F(s) + F(1 - s) with F = Gamma eta; equals 2 Re F(s) on Re(s) = 1/2."""
    s = complex(s)
    if not 0 < s.real < 1:
        raise DomainError("domain limit needs 0 < Re(s) < 1")
    return specfun.F(s) + specfun.F(1 - s)


def domain_limit(s, cfg=DEFAULT, z_values=(0.5, 1.0, 2.0)):
    """Closed form and direct y-quadrature (one per z) of the domain limit."""
    closed = domain_limit_closed(s)
    u = TestProfile.power(s)
    quad = tuple(boundary_term_probe(u, z, cfg) for z in z_values)
    return DomainLimit(complex(s), closed, tuple(z_values), quad)


# ---------------------------------------------------------------------------
# Trivial kernel and the linearised orthogonality relation
# ---------------------------------------------------------------------------

def kernel_trivial_case(z, y, n_trunc=40):
    """sum_{n <= n_trunc} (zy)**(n-1) / (n!)**2 and I0(2 sqrt(zy))/(zy).

    Returns ``(series, closed)``.
    """
    if not (0 < z <= 10 and 0 < y <= 10):
        raise DomainError("z and y must lie in (0, 10]")
    if n_trunc < 40:
        raise ValueError("n_trunc must be at least 40")
    w = z * y
    term, acc = 1.0 / w, [1.0 / w]
    for n in range(1, n_trunc + 1):
        term *= w / (n * n)
        acc.append(term)
    series = math.fsum(acc)
    closed = float(specfun.bessel_i0(2 * math.sqrt(w))) / w
    return series, closed


@dataclass(frozen=True)
class OrthogonalityResult:
    rho: complex
    eps: tuple
    quotients: tuple          # complex [F(conj rho + e) + F(rho + e)] / (2 e)
    richardson: float         # second-order extrapolation of the real parts
    reference: float          # Re F'(rho), analytic

    @property
    def max_imag_ratio(self):
        return max(abs(q.imag) / abs(q) for q in self.quotients)

    @property
    def rel_error(self):
        return abs(self.richardson - self.reference) / abs(self.reference)

    @property
    def rel_errors(self):
        """Errors of the raw quotients, then of first and second extrapolation."""
        r = [q.real for q in self.quotients]
        first = [2 * r[1] - r[0], 2 * r[2] - r[1]]
        seq = [r[0], r[1], r[2], first[1], self.richardson]
        return [abs(v - self.reference) / abs(self.reference) for v in seq]


def orthogonality_quotient(rho, eps):
    rho = complex(rho)
    return (specfun.F(rho.conjugate() + eps) + specfun.F(rho + eps)) / (2 * eps)


def orthogonality_linearized(rho, eps=1e-3, cfg=DEFAULT, zero_tol=1e-6):
    """Quotients at eps, eps/2, eps/4 and their Richardson limit.

    The limit approaches Re F'(rho).  `rho` must be a verified zero on the
    critical line: |F(rho)| <= zero_tol and also |zeta(rho)| <= zero_tol
    (the first test alone is weak high up the line, where Gamma is tiny).
    """
    rho = complex(rho.s if isinstance(rho, SpectralPoint) else rho)
    if rho.real != 0.5:
        raise DomainError("rho must lie on the critical line")
    if abs(specfun.F(rho)) > zero_tol or abs(specfun.riemann_zeta(rho)) > zero_tol:
        raise DomainError(f"{rho} is not a verified zero")
    if not 1e-6 <= eps <= 1e-3:
        raise DomainError("eps must lie in [1e-6, 1e-3]")
    epss = (eps, eps / 2, eps / 4)
    qs = tuple(complex(orthogonality_quotient(rho, e)) for e in epss)
    r = [q.real for q in qs]
    # q(e) = L + a e + b e^2 + ...
    first = [2 * r[1] - r[0], 2 * r[2] - r[1]]
    second = (4 * first[1] - first[0]) / 3
    ref = complex(specfun.F_prime(rho)).real
    return OrthogonalityResult(rho, epss, qs, second, ref)
