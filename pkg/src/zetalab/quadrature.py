"""Adaptive quadrature on [0, inf) and Mellin transforms.

The engine is a vectorised global-adaptive Gauss-Kronrod (7/15) rule with
dyadic bisection.  A half-line integral is split into

* a logarithmic segment z = exp(v) covering (0, cutoff], which absorbs the
  z**a behaviour at the origin and turns z**(i t) into a pure oscillation
  exp(i t v) that is resolved with panels tied to the wavelength;
* a tail segment [cutoff, inf) mapped onto [0, 1) according to the declared
  decay class.

Mellin transforms of integrands that are analytic and decaying in a sector
|arg z| < theta are evaluated on the ray arg z = +-theta.  On the real axis
the integral of z**(s-1) f(z) loses about pi |Im s| / 2 / ln 10 digits to
cancellation; on the rotated ray the loss drops to (pi/2 - theta)|Im s|.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from typing import Callable, NamedTuple, Sequence

import numpy as np

_EPS = np.finfo(float).eps

# Gauss-Kronrod 15-point abscissae (positive half, descending) and weights.
_XGK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0,
])
_WGK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
])
NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
# Gauss nodes sit at odd positions of NODES (indices 1, 3, ..., 13).
GAUSS_WEIGHTS = np.concatenate([_WG[:-1], _WG[::-1]])

_MAX_PANELS = 400_000


class QuadResult(NamedTuple):
    value: complex
    error: float
    l1: float           # integral of |integrand|, the cancellation scale


class AccuracyError(ArithmeticError):
    """Adaptive refinement hit its depth limit before meeting the tolerance.

    The best available estimate and its error bound are kept on the
    exception.
    """

    def __init__(self, message, value, error):
        super().__init__(message)
        self.value = value
        self.error = error


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    split_points: Sequence[float] = ()
    tail_cutoff: float = 40.0
    max_depth: int = 30

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.abs_tol < 0 or self.tail_cutoff <= 0 or self.max_depth < 1:
            raise ValueError("invalid quadrature configuration")


DEFAULT = QuadratureConfig()


@dataclass(frozen=True)
class IntegrandProfile:
    """A half-line integrand together with what is known about its shape.

    Attributes
    ----------
    evaluator : callable
        Vectorised map from an array of abscissae to values.  When
        ``sector > 0`` it must also accept complex abscissae.
    singularity_exponent : float
        ``a`` such that the integrand behaves like z**a as z -> 0+.  Must be
        > -1.  Integrands that vanish faster than any power may use a large
        value.
    decay_class : {"exponential", "power"}
        Tail behaviour: exp(-rate z) or z**(-rate).
    decay_rate : float
        The ``rate`` above.  Power decay needs rate > 1.
    sector : float
        Half-angle of a sector |arg z| < sector in which the integrand is
        analytic and keeps its decay; 0 means real axis only.
    """

    evaluator: Callable[[np.ndarray], np.ndarray]
    singularity_exponent: float = 0.0
    decay_class: str = "exponential"
    decay_rate: float = 1.0
    sector: float = 0.0

    def __post_init__(self):
        if not self.singularity_exponent > -1:
            raise ValueError("integrand is not integrable at the origin (a <= -1)")
        if self.decay_class not in ("exponential", "power"):
            raise ValueError(f"unknown decay class {self.decay_class!r}")
        if not self.decay_rate > 0:
            raise ValueError("decay rate must be positive")


# ---------------------------------------------------------------------------
# Finite-interval engine
# ---------------------------------------------------------------------------

def _gk15(fun, lo, hi):
    centre = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    x = centre[:, None] + half[:, None] * NODES[None, :]
    fx = np.asarray(fun(x))
    if fx.shape != x.shape:
        fx = np.broadcast_to(fx, x.shape)
    kron = half * (fx @ KRONROD_WEIGHTS)
    gauss = half * (fx[:, 1::2] @ GAUSS_WEIGHTS)
    l1 = np.abs(half) * (np.abs(fx) @ KRONROD_WEIGHTS)
    if not (np.all(np.isfinite(kron)) and np.all(np.isfinite(gauss))):
        raise FloatingPointError("integrand produced non-finite values")
    return kron, np.abs(kron - gauss), l1


def _fsum(values):
    values = np.asarray(values)
    if np.iscomplexobj(values):
        return complex(math.fsum(values.real), math.fsum(values.imag))
    return math.fsum(values)


class _Accumulator:
    """Collects accepted panels across the segments of one integral."""

    def __init__(self):
        self.values, self.errors, self.l1 = [], [], []
        self.failed = False

    def add(self, v, e, l):
        self.values.append(v)
        self.errors.append(e)
        self.l1.append(l)

    def totals(self):
        vals = np.concatenate(self.values) if self.values else np.zeros(0)
        errs = np.concatenate(self.errors) if self.errors else np.zeros(0)
        l1 = np.concatenate(self.l1) if self.l1 else np.zeros(0)
        return _fsum(vals), float(np.sum(errs)), float(np.sum(l1))


def _tolerance(cfg, value, l1):
    return max(cfg.abs_tol, cfg.rel_tol * abs(value), 50 * _EPS * l1)


def _adaptive(fun, edges, cfg, acc, scale_hint):
    """Refine the panels in `edges` until each meets its share of the tolerance.

    `scale_hint` is a running estimate of |integral| used to translate the
    relative tolerance into a per-panel absolute target before the final
    value is known.
    """
    edges = np.asarray(edges, dtype=float)
    lo, hi = edges[:-1], edges[1:]
    width_total = float(edges[-1] - edges[0])
    if width_total <= 0:
        return
    depth = np.zeros(lo.shape, dtype=int)
    count = 0
    while lo.size:
        count += lo.size
        if count > _MAX_PANELS:
            acc.failed = True
            v, e, l = _gk15(fun, lo, hi)
            acc.add(v, e, l)
            return
        v, e, l = _gk15(fun, lo, hi)
        current = abs(scale_hint[0]) + abs(_fsum(v))
        target = _tolerance(cfg, current, 0.0) * (hi - lo) / width_total
        ok = (e <= target) | (e <= 50 * _EPS * l)
        too_deep = depth >= cfg.max_depth
        if np.any(~ok & too_deep):
            acc.failed = True
        accept = ok | too_deep
        acc.add(v[accept], e[accept], l[accept])
        scale_hint[0] = scale_hint[0] + _fsum(v[accept])
        keep = ~accept
        lo, hi, depth = lo[keep], hi[keep], depth[keep]
        mid = 0.5 * (lo + hi)
        lo, hi = np.concatenate([lo, mid]), np.concatenate([mid, hi])
        depth = np.concatenate([depth, depth]) + 1


def integrate_interval(fun, a, b, cfg=DEFAULT, n_init=1, full_output=False):
    """Adaptive Gauss-Kronrod integral of a vectorised `fun` over [a, b]."""
    acc = _Accumulator()
    _adaptive(fun, np.linspace(a, b, max(1, int(n_init)) + 1), cfg, acc, [0.0])
    return _finish(acc, cfg, full_output)


def _finish(acc, cfg, full_output):
    value, err, l1 = acc.totals()
    if acc.failed and err > _tolerance(cfg, value, l1):
        raise AccuracyError(
            f"quadrature did not converge: value {value!r}, error {err:.3e}", value, err)
    return QuadResult(value, err, l1) if full_output else value


# ---------------------------------------------------------------------------
# Half-line
# ---------------------------------------------------------------------------

_HEAD_DECADES = 39.0   # exp(-39) ~ 1e-17 of the integrand scale near z = 1
_V_FLOOR = -700.0      # exp(-700) is still a normal double
_OSC_PANELS_PER_RAD = 1.0 / math.pi


def _log_edges(v_lo, v_hi, anchors, oscillation):
    pts = [v_lo, v_hi] + [a for a in anchors if v_lo < a < v_hi]
    pts = sorted(set(pts))
    edges = [pts[0]]
    for left, right in zip(pts[:-1], pts[1:]):
        n = max(2, math.ceil((right - left) * max(oscillation, 1.0) * _OSC_PANELS_PER_RAD))
        edges.extend(np.linspace(left, right, n + 1)[1:])
    return np.array(edges)


def integrate_halfline(f, cfg=DEFAULT, oscillation=0.0, full_output=False):
    """Integral of `f.evaluator` over [0, inf).

    Parameters
    ----------
    f : IntegrandProfile
    cfg : QuadratureConfig
    oscillation : float
        Angular frequency of a z**(i t) factor in the integrand, i.e. |t|.
        Only used to size the initial panels of the logarithmic segment.
    full_output : bool
        Return a `QuadResult` (value, error estimate, L1 norm).

    Returns
    -------
    complex or QuadResult

    Raises
    ------
    ValueError
        Power-class integrand with rate <= 1.
    AccuracyError
        Refinement reached ``cfg.max_depth`` without meeting
        max(abs_tol, rel_tol |value|).
    """
    fun = f.evaluator
    a = f.singularity_exponent
    if f.decay_class == "power" and f.decay_rate <= 1:
        raise ValueError("power-decaying integrand needs rate > 1")
    if f.decay_class == "exponential":
        # push past the peak of z**a e^{-rate z} when a is large
        cutoff = (cfg.tail_cutoff + 2.0 * max(a, 0.0)) / f.decay_rate
    else:
        cutoff = cfg.tail_cutoff
    ln_cut = math.log(cutoff)
    v_lo = max(min(0.0, ln_cut) - _HEAD_DECADES / (a + 1.0), _V_FLOOR)
    if f.decay_class == "power":
        v_hi = ln_cut + _HEAD_DECADES / (f.decay_rate - 1.0)
    else:
        v_hi = ln_cut
    anchors = [math.log(p) for p in cfg.split_points if p > 0] + [0.0]

    def head(v):
        z = np.exp(v)
        return fun(z) * z

    acc = _Accumulator()
    hint = [0.0]
    if v_lo == _V_FLOOR:
        # z**a behaviour below the floor: the dropped piece is about head(v_lo)/(a+1)
        dropped = abs(complex(head(np.array(v_lo)))) / (a + 1.0)
        acc.add(np.zeros(1), np.array([dropped]), np.array([dropped]))
        acc.failed = True   # _finish raises if the dropped piece matters
    _adaptive(head, _log_edges(v_lo, v_hi, anchors, oscillation), cfg, acc, hint)
    if f.decay_class == "exponential":
        rate = f.decay_rate

        def tail(w):
            one_minus = 1.0 - w
            z = cutoff - np.log(one_minus) / rate
            return fun(z) / (rate * one_minus)

        _adaptive(tail, np.linspace(0.0, 1.0, 5), cfg, acc, hint)
    return _finish(acc, cfg, full_output)


# ---------------------------------------------------------------------------
# Mellin transform
# ---------------------------------------------------------------------------

_ROTATION_THRESHOLD = 1.0


def mellin_profile(f, s, angle=0.0):
    """Profile of the integrand r**(s-1) f(r e^{i angle}) e^{i angle s} on a ray.

    With ``angle = 0`` this is the ordinary Mellin integrand.
    """
    s = complex(s)
    fun = f.evaluator
    phase = cmath.exp(1j * angle * s)
    rot = cmath.exp(1j * angle)

    if angle == 0.0:
        def ev(z):
            return np.exp((s - 1.0) * np.log(z)) * fun(z)
    else:
        def ev(r):
            return phase * np.exp((s - 1.0) * np.log(r)) * fun(r * rot)

    a = f.singularity_exponent + s.real - 1.0
    if f.decay_class == "power":
        return IntegrandProfile(ev, a, "power", f.decay_rate - (s.real - 1.0))
    return IntegrandProfile(ev, a, "exponential", f.decay_rate * math.cos(angle))


def ray_angle(f, s):
    """Integration ray used by `mellin_transform` for profile `f` at `s`."""
    s = complex(s)
    if f.sector <= 0 or abs(s.imag) <= _ROTATION_THRESHOLD:
        return 0.0
    theta = min(f.sector, math.atan2(abs(s.imag), max(s.real, 0.0)))
    return math.copysign(theta, s.imag)


def mellin_transform(f, s, cfg=DEFAULT, full_output=False, rotate=True):
    """Mellin transform {M f}(s) = int_0^inf z**(s-1) f(z) dz.

    If the profile declares an analytic sector and |Im s| > 1, the
    integral is taken along the ray arg z = sign(Im s) * theta with
    theta = min(f.sector, atan(|Im s| / Re s)), which balances the
    e^{-theta |Im s|} gain against the 1/cos(theta)**Re(s) growth of the
    modulus on the ray.  Set ``rotate=False`` to force the real axis.
    """
    s = complex(s)
    prof = mellin_profile(f, s, ray_angle(f, s) if rotate else 0.0)
    if prof.singularity_exponent <= -1:
        raise ValueError("Mellin integrand not integrable at the origin for this s")
    if prof.decay_class == "power" and prof.decay_rate <= 1:
        raise ValueError("Mellin integrand not integrable at infinity for this s")
    return integrate_halfline(prof, cfg, oscillation=abs(s.imag), full_output=full_output)


# ---------------------------------------------------------------------------
# Stock profiles
# ---------------------------------------------------------------------------

FERMI_SECTOR = 0.5 * math.pi - 0.3


def fermi(z):
    """1 / (1 + e^z) without overflow for large |Re z|; accepts complex input."""
    z = np.asarray(z)
    pos = z.real > 0
    w = np.exp(-np.where(pos, z, -z))
    return np.where(pos, w / (1.0 + w), 1.0 / (1.0 + w))


def fermi_profile():
    """1 / (1 + e^z): Mellin transform is Gamma(s) eta(s)."""
    return IntegrandProfile(fermi, 0.0, "exponential", 1.0, FERMI_SECTOR)


def exponential_profile():
    """e^{-z}: Mellin transform is Gamma(s)."""
    return IntegrandProfile(lambda z: np.exp(-z), 0.0, "exponential", 1.0, FERMI_SECTOR)


def gaussian_profile():
    """e^{-z^2}: Mellin transform is Gamma(s/2)/2."""
    return IntegrandProfile(lambda z: np.exp(-z * z), 0.0, "exponential", 1.0,
                            0.25 * math.pi - 0.15)


def scaled(f, lam):
    """Profile of z -> f(lam z) for lam > 0."""
    ev = f.evaluator
    rate = f.decay_rate * lam if f.decay_class == "exponential" else f.decay_rate
    return replace(f, evaluator=lambda z: ev(lam * z), decay_rate=rate)


def combine(f, g, a=1.0, b=1.0):
    """Profile of a f + b g; shape data take the weaker of the two."""
    fe, ge = f.evaluator, g.evaluator
    if f.decay_class == g.decay_class:
        cls, rate = f.decay_class, min(f.decay_rate, g.decay_rate)
    else:
        cls = "power"
        rate = f.decay_rate if f.decay_class == "power" else g.decay_rate
    return IntegrandProfile(lambda z: a * fe(z) + b * ge(z),
                            min(f.singularity_exponent, g.singularity_exponent),
                            cls, rate, min(f.sector, g.sector))
