"""Verification suites, one per module, producing `VerificationReport`s.

Each check compares two independent routes (or a route and a known
constant) and records the residual against a named tolerance.  Tolerances
live in `TOLERANCES`; `RunConfig` may tighten them, and loosening requires
``allow_loose``.
"""
from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import borel, eigensystem, mellinspace, operators, quadrature, specfun, weightspace
from .operators import ModelParams
from .report import CheckRecord, VerificationReport

# Heights of the first ten zeros on the critical line (standard tables).
KNOWN_ZEROS = (
    14.134725141734693790, 21.022039638771554993, 25.010857580145688763,
    30.424876125859513210, 32.935061587739189691, 37.586178158825671257,
    40.918719012147495187, 43.327073280914999519, 48.005150881167159727,
    49.773832477672302182,
)

TOLERANCES = {
    "specfun": 1e-12,
    "fprime": 1e-7,
    "quad": 1e-10,
    "gk_exact": 1e-14,
    "su11": 1e-12,
    "htilde": 1e-13,
    "zero_height": 1e-6,
    "zero_residual": 1e-9,
    "eigenvalue": 1e-9,
    "boundary": 1e-7,
    "eigfun": 1e-8,
    "ode": 1e-12,
    "bc": 1e-8,
    "bc_zero": 1e-6,
    "moments": 1e-10,
    "transport": 1e-12,
    "covariance": 1e-14,
    "domain_zero": 1e-6,
    "domain_spread": 1e-6,
    "domain_closed": 1e-7,
    "kernel": 1e-10,
    "ortho": 1e-4,
    "ortho_real": 1e-10,
    "s1": 1e-8,
    "s2": 1e-12,
    "kelvin": 1e-6,
    "bernoulli": 1e-9,
}

SUITES = ("specfun", "quadrature", "su11", "eigensystem", "mellinspace", "weightspace", "borel")
SUITE_ALIASES = {"operators": "su11"}


class ConfigError(ValueError):
    """Invalid run configuration (maps to exit code 2)."""


@dataclass
class RunConfig:
    suites: tuple = SUITES
    tolerances: dict = field(default_factory=dict)
    allow_loose: bool = False
    n_max: int = 128
    m_max: int = 12
    height_max: float = 50.0
    threads: int = field(default_factory=lambda: os.cpu_count() or 1)
    seed: int = 20240601
    out: str | None = None

    KEYS = ("suites", "tolerances", "allow_loose", "n_max", "m_max", "height_max",
            "threads", "seed", "out")

    def __post_init__(self):
        suites = []
        for s in self.suites:
            s = SUITE_ALIASES.get(s, s)
            if s not in SUITES:
                raise ConfigError(f"unknown suite {s!r}; choose from {', '.join(SUITES)}")
            if s not in suites:
                suites.append(s)
        self.suites = tuple(suites)
        for name, value in self.tolerances.items():
            if name not in TOLERANCES:
                raise ConfigError(f"unknown tolerance {name!r}")
            if not value > 0:
                raise ConfigError(f"tolerance {name} must be positive")
            if value > TOLERANCES[name] and not self.allow_loose:
                raise ConfigError(f"tolerance {name}={value:g} is looser than the default "
                                  f"{TOLERANCES[name]:g}; pass --allow-loose to permit it")
        if self.n_max < 16:
            raise ConfigError("n_max must be at least 16")
        if not 2 <= self.m_max:
            raise ConfigError("m_max must be at least 2")
        if not 0 < self.height_max <= eigensystem.SUPPORTED_HEIGHT:
            raise ConfigError(f"height_max must lie in (0, {eigensystem.SUPPORTED_HEIGHT}]")
        if self.threads < 1:
            raise ConfigError("threads must be at least 1")

    def tol(self, name):
        return self.tolerances.get(name, TOLERANCES[name])

    @classmethod
    def from_mapping(cls, data):
        unknown = set(data) - set(cls.KEYS)
        if unknown:
            raise ConfigError(f"unknown configuration keys: {', '.join(sorted(unknown))}")
        data = dict(data)
        if "suites" in data:
            data["suites"] = tuple(data["suites"])
        return cls(**data)


def _relerr(value, ref):
    return abs(value - ref) / abs(ref)


def _rec(rep, cid, identity, inputs, value, reference, residual, tol, oracle):
    rep.add(CheckRecord(cid, identity, inputs, value, reference, residual, tol, oracle))


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

def suite_specfun(cfg, rng):
    rep = VerificationReport()
    tol = cfg.tol("specfun")
    z2 = complex(specfun.riemann_zeta(2.0))
    _rec(rep, "specfun.zeta2", "zeta(2) = pi^2/6", {"s": 2.0}, z2, math.pi**2 / 6,
         _relerr(z2, math.pi**2 / 6), tol, "TRIVIAL")
    e1 = complex(specfun.dirichlet_eta(1.0))
    _rec(rep, "specfun.eta1", "eta(1) = ln 2", {"s": 1.0}, e1, math.log(2),
         _relerr(e1, math.log(2)), tol, "TRIVIAL")
    gh = complex(specfun.gamma(0.5))
    _rec(rep, "specfun.gamma_half", "Gamma(1/2) = sqrt(pi)", {"s": 0.5}, gh,
         math.sqrt(math.pi), _relerr(gh, math.sqrt(math.pi)), tol, "TRIVIAL")
    for i in range(5):
        s = complex(rng.uniform(0.1, 0.9), rng.uniform(-20, 20))
        lhs = complex(specfun.gamma(s) * specfun.gamma(1 - s))
        rhs = complex(np.pi / np.sin(np.pi * s))
        _rec(rep, f"specfun.reflection.{i}", "Gamma(s) Gamma(1-s) = pi / sin(pi s)",
             {"s": s}, lhs, rhs, _relerr(lhs, rhs), tol, "DERIVED")
    for i in range(5):
        s = complex(rng.uniform(0.1, 0.9), rng.uniform(1, 30))
        lhs = complex(specfun.riemann_zeta(s))
        chi = 2**s * np.pi**(s - 1) * np.sin(np.pi * s / 2) * complex(specfun.gamma(1 - s))
        rhs = chi * complex(specfun.riemann_zeta(1 - s))
        _rec(rep, f"specfun.functional.{i}", "zeta(s) = chi(s) zeta(1-s)", {"s": s},
             lhs, rhs, _relerr(lhs, rhs), 100 * tol, "DERIVED")
    for i in range(3):
        s = complex(rng.uniform(0.2, 0.8), rng.uniform(-30, 30))
        a = complex(specfun.F_prime(s))
        d = complex(specfun.F_prime(s, method="difference"))
        _rec(rep, f"specfun.fprime.{i}", "F' analytic = central difference", {"s": s},
             a, d, _relerr(a, d), cfg.tol("fprime"), "DERIVED")
    z = complex(specfun.hardy_z(KNOWN_ZEROS[0] + 0.5))
    _rec(rep, "specfun.hardy_real", "Im Z(t) = 0", {"t": KNOWN_ZEROS[0] + 0.5}, z.imag, 0.0,
         abs(z.imag) / abs(z), tol, "TRIVIAL")
    table = specfun.bernoulli_and_c(12)
    b = table.bernoulli
    ok = b[2] == Fraction(1, 6) and b[4] == Fraction(-1, 30) and b[12] == Fraction(-691, 2730)
    _rec(rep, "specfun.bernoulli", "B2 = 1/6, B4 = -1/30, B12 = -691/2730", {},
         [float(b[2]), float(b[4]), float(b[12])], [1 / 6, -1 / 30, -691 / 2730],
         0.0 if ok else 1.0, 0.0, "TRIVIAL")
    cs = specfun.bernoulli_and_c(60).c
    x = 1.0
    series = math.fsum(cs[m] * x**m for m in range(61))
    ref = x / (1 + math.exp(-x))
    _rec(rep, "specfun.c_series", "sum c_m x^m = x / (1 + e^-x), |x| < pi", {"x": x},
         series, ref, _relerr(series, ref), tol, "DERIVED")
    return rep


def suite_quadrature(cfg, rng):
    rep = VerificationReport()
    tol = cfg.tol("quad")
    xs = quadrature.NODES
    w = quadrature.KRONROD_WEIGHTS
    worst = max(abs(float(w @ xs**k) - (2 / (k + 1) if k % 2 == 0 else 0.0))
                for k in range(23))
    _rec(rep, "quad.gk_exact", "Kronrod rule exact for degree <= 22", {"degree": 22},
         worst, 0.0, worst, cfg.tol("gk_exact"), "TRIVIAL")
    g = complex(quadrature.integrate_halfline(quadrature.gaussian_profile()))
    _rec(rep, "quad.gaussian", "int e^{-z^2} = sqrt(pi)/2", {}, g, math.sqrt(math.pi) / 2,
         _relerr(g, math.sqrt(math.pi) / 2), tol, "TRIVIAL")
    m2 = complex(quadrature.mellin_transform(quadrature.fermi_profile(), 2.0))
    _rec(rep, "quad.mellin_fermi2", "M[1/(1+e^z)](2) = pi^2/12", {"s": 2.0}, m2,
         math.pi**2 / 12, _relerr(m2, math.pi**2 / 12), tol, "TRIVIAL")
    m1 = complex(quadrature.mellin_transform(quadrature.fermi_profile(), 1.0))
    _rec(rep, "quad.mellin_fermi1", "M[1/(1+e^z)](1) = ln 2", {"s": 1.0}, m1, math.log(2),
         _relerr(m1, math.log(2)), tol, "TRIVIAL")
    for i in range(10):
        s = complex(rng.uniform(0.2, 3), rng.uniform(-30, 30))
        v = complex(quadrature.mellin_transform(quadrature.exponential_profile(), s))
        ref = complex(specfun.gamma(s))
        _rec(rep, f"quad.mellin_exp.{i}", "M[e^-z](s) = Gamma(s)", {"s": s}, v, ref,
             _relerr(v, ref), tol, "DERIVED")
    return rep


def suite_su11(cfg, rng):
    rep = VerificationReport()
    sizes = sorted({16, 64, 128, cfg.n_max})
    for n in sizes:
        sub = operators.check_su11(n)
        for c in sub.checks:
            c.tolerance = cfg.tol("su11")
            c.status = "pass" if c.residual <= c.tolerance else "fail"
        rep.extend(sub)
    n = max(24, cfg.m_max + 21)
    H = operators.build_H_tilde(n, m_max=cfg.m_max).entries
    c = specfun.bernoulli_and_c(cfg.m_max).c
    worst = 0.0
    for m in range(2, cfg.m_max + 1):
        for k in range(21):
            ref = -1j * c[m] * math.perm(k + m, m)
            if ref == 0:
                worst = max(worst, abs(H[k, k + m]))
            else:
                worst = max(worst, abs(H[k, k + m] - ref) / abs(ref))
    _rec(rep, "htilde.structure", "entry (k, k+m) = -i c_m (k+m)!/k!",
         {"m_max": cfg.m_max, "k_max": 20}, worst, 0.0, worst, cfg.tol("htilde"), "PAPER")
    return rep


def suite_eigensystem(cfg, rng):
    rep = VerificationReport()
    zeros = eigensystem.find_zeros(cfg.height_max, threads=1)
    expected = [t for t in KNOWN_ZEROS if t <= cfg.height_max]
    # the table is complete below 50 (the next zero is near 52.97)
    if cfg.height_max <= 50:
        count_ref = len(expected)
        _rec(rep, "eig.zero_count", "number of zeros below height_max",
             {"height_max": cfg.height_max}, len(zeros), count_ref,
             abs(len(zeros) - count_ref), 0.0, "DERIVED")
    for ref, z in zip(expected, zeros):
        _rec(rep, f"eig.zero_height.{z.index}", "located height = tabulated height",
             {"index": z.index}, z.height, ref, abs(z.height - ref), cfg.tol("zero_height"),
             "DERIVED")
    for z in zeros:
        _rec(rep, f"eig.zero_residual.{z.index}", "|zeta(1/2 + i t)| at the located zero",
             {"height": z.height}, z.zeta_residual, 0.0, z.zeta_residual,
             cfg.tol("zero_residual"), "DERIVED")
        e = z.eigenvalue
        _rec(rep, f"eig.eigenvalue_real.{z.index}", "Im E = 0 for E = i(1/2 - s)",
             {"height": z.height}, e, complex(z.height, 0.0), abs(e.imag),
             cfg.tol("eigenvalue"), "TRIVIAL")
    params = ModelParams.beta_one()
    for i in range(50):
        s = complex(rng.uniform(0.2, 0.8), rng.uniform(-30, 30))
        c = complex(eigensystem.boundary_value_closed(s, params))
        q = complex(eigensystem.boundary_value_quadrature(s, params))
        _rec(rep, f"eig.boundary.{i}", "Psi_s(0): closed form = Mellin quadrature",
             {"s": s}, q, c, _relerr(q, c), cfg.tol("boundary"), "DERIVED")
    for t in (0.25, params.t.real):
        p = ModelParams(t)
        s = complex(2.0, 0.0)
        v = eigensystem.eigenfunction(s, p, 0.0, full_output=True)
        c = complex(eigensystem.boundary_value_closed(s, p))
        _rec(rep, f"eig.eigfun_origin.t{t:.4f}", "truncated-kernel Psi_s(0) = closed form",
             {"s": s, "t": t}, complex(v.value), c, _relerr(v.value, c), cfg.tol("eigfun"),
             "DERIVED")
    return rep


def suite_mellinspace(cfg, rng):
    rep = VerificationReport()
    rho1 = complex(0.5, KNOWN_ZEROS[0])
    for s in (2.0, complex(0.5, 3.0), rho1):
        p = mellinspace.MellinEigenprofile(s)
        for z in (0.1, 1.0, 5.0):
            r = complex(mellinspace.ode_residual(p, z))
            scale = abs(complex(p.g(z))) * (1 + abs(complex(s)))
            _rec(rep, f"mellin.ode.s{complex(s).real:g}{complex(s).imag:+.4f}i.z{z:g}",
                 "g_s solves the Mellin-space ODE", {"s": complex(s), "z": z}, r, 0.0,
                 abs(r) / scale, cfg.tol("ode"), "TRIVIAL")
    p2 = mellinspace.MellinEigenprofile(2.0)
    v = complex(mellinspace.integral_bc(p2))
    _rec(rep, "mellin.bc.s2", "integral condition at s = 2 equals pi^2/12", {"s": 2.0}, v,
         math.pi**2 / 12, _relerr(v, math.pi**2 / 12), cfg.tol("bc"), "DERIVED")
    for k, t in enumerate(KNOWN_ZEROS[:2], 1):
        s = complex(0.5, t)
        p = mellinspace.MellinEigenprofile(s)
        v = complex(mellinspace.integral_bc(p))
        _rec(rep, f"mellin.bc.zero{k}", "integral condition vanishes at a zero", {"s": s},
             v, 0.0, abs(v), cfg.tol("bc_zero"), "DERIVED")
        norm = abs(v) / abs(complex(specfun.gamma(s)) * (1 - 2 ** (1 - s)))
        _rec(rep, f"mellin.bc.zero{k}.normalised",
             "integral condition / |Gamma(s)(1 - 2^(1-s))| vanishes at a zero", {"s": s},
             norm, 0.0, norm, cfg.tol("bc_zero"), "DERIVED")
    mv = mellinspace.moments(p2, 14)
    series = 2 * math.fsum((-1) ** m / (m + 2) ** 3 for m in range(200000))
    _rec(rep, "mellin.moment1", "g_1 at s = 2 equals 2 sum (-1)^m/(m+2)^3", {"s": 2.0},
         complex(mv.g[1]), series, _relerr(complex(mv.g[1]), series), cfg.tol("moments"),
         "DERIVED")
    res, tail = mellinspace.recurrence_residual(mv, 2.0, 1, 12)
    _rec(rep, "mellin.recurrence", "truncated moment recurrence residual below last term",
         {"s": 2.0, "k": 1, "m_max": 12}, complex(res), tail, max(0.0, abs(res) - tail), 0.0,
         "DERIVED")
    return rep


def suite_weightspace(cfg, rng):
    rep = VerificationReport()
    zs = rng.uniform(1e-3, 1e3, 1000)
    ys = rng.uniform(1e-3, 1e3, 1000)
    asym = float(np.max(np.abs(weightspace.weight(zs, ys) - weightspace.weight(ys, zs))))
    _rec(rep, "weight.symmetry", "w(z, y) = w(y, z)", {"pairs": 1000}, asym, 0.0, asym, 0.0,
         "PAPER")
    g = np.logspace(-2, 2, 20)
    Z, Y = np.meshgrid(g, g)
    r, sc = weightspace.check_transport(Z, Y)
    worst = float(np.max(np.abs(r) / sc))
    _rec(rep, "weight.transport", "z dw/dz + d/dy (y w(y, z)) = 0", {"grid": "20x20 [1e-2, 1e2]"},
         worst, 0.0, worst, cfg.tol("transport"), "PAPER")
    worst = 0.0
    for lam in (0.1, 3.0, 40.0):
        base = weightspace.weight(Z, Y)
        worst = max(worst, float(np.max(np.abs(lam * weightspace.weight(lam * Z, lam * Y) - base)
                                        / base)))
    _rec(rep, "weight.covariance", "lam w(lam z, lam y) = w(z, y)", {"lam": [0.1, 3.0, 40.0]},
         worst, 0.0, worst, cfg.tol("covariance"), "TRIVIAL")
    zeros = [t for t in KNOWN_ZEROS if t <= min(cfg.height_max, 50.0)]
    for k, t in enumerate(zeros, 1):
        d = weightspace.domain_limit(complex(0.5, t))
        _rec(rep, f"weight.domain_zero.{k}", "domain limit vanishes at a zero",
             {"t": t}, d.closed, 0.0, abs(d.closed), cfg.tol("domain_zero"), "DERIVED")
        _rec(rep, f"weight.domain_spread.{k}", "domain limit quadrature independent of z",
             {"t": t, "z": list(d.z_values)}, d.spread, 0.0, d.spread,
             cfg.tol("domain_spread"), "DERIVED")
    for j in range(1, 21):
        t = 0.15 * j
        d = weightspace.domain_limit(complex(0.5, t))
        mag = abs(d.closed)
        rep.add(CheckRecord(f"weight.domain_control.{j}", "domain limit >= 1e-3 off the zeros",
                            {"t": t}, mag, 1e-3, max(0.0, 1e-3 - mag), 0.0, "DERIVED"))
        _rec(rep, f"weight.domain_quad.{j}", "domain limit: quadrature = closed form",
             {"t": t}, d.quadrature[1], d.closed, d.deviation / mag,
             cfg.tol("domain_closed"), "DERIVED")
    worst = 0.0
    for z in np.linspace(0.2, 4, 12):
        for y in np.linspace(0.2, 4, 12):
            s, c = weightspace.kernel_trivial_case(z, y)
            worst = max(worst, abs(s - c) / abs(c))
    _rec(rep, "weight.kernel", "sum (zy)^(n-1)/(n!)^2 = I0(2 sqrt(zy))/(zy)",
         {"grid": "12x12 (0, 4]"}, worst, 0.0, worst, cfg.tol("kernel"), "PAPER")
    o = weightspace.orthogonality_linearized(complex(0.5, KNOWN_ZEROS[0]), 1e-3)
    _rec(rep, "weight.ortho", "Richardson limit of the eps-quotient = Re F'(rho)",
         {"eps": list(o.eps)}, o.richardson, o.reference, o.rel_error, cfg.tol("ortho"),
         "DERIVED")
    _rec(rep, "weight.ortho_real", "eps-quotient is real", {"eps": list(o.eps)},
         o.max_imag_ratio, 0.0, o.max_imag_ratio, cfg.tol("ortho_real"), "TRIVIAL")
    return rep


def suite_borel(cfg, rng):
    rep = VerificationReport()
    for re_ in (-3.0, -1.0, 0.0, 0.5, 0.9):
        for im in (0.0, 1.0, -1.0):
            for z in (0.1, 1.0, 5.0):
                x = complex(re_, im)
                c = borel.s1_closed(x, z)
                v = complex(borel.s1_borel_integral(x, z))
                _rec(rep, f"borel.s1.x{re_:g}{im:+g}i.z{z:g}",
                     "Borel integral = exp(-zx/(1-x))/(1-x)", {"x": x, "z": z}, v, c,
                     _relerr(v, c), cfg.tol("s1"), "PAPER")
    for x in (0.5, complex(1, 1), 3.0, complex(2, 6), complex(0.1, -6)):
        r = complex(borel.s2_resummed(x))
        c = complex(borel.s2_closed(x))
        _rec(rep, f"borel.s2.{complex(x)}", "resummed form = x/(1 - e^-x)", {"x": complex(x)},
             r, c, abs(r - c), cfg.tol("s2"), "PAPER")
    for x, u in ((1.0, math.pi), (1.0, 1.0), (2.0, 0.5)):
        r, sc = borel.kelvin_integral_check(x, u)
        _rec(rep, f"borel.kelvin.x{x:g}.u{u:.4f}", "Kelvin integral = -(ux/2) sin(ux)",
             {"x": x, "u": u}, r, 0.0, abs(r) / sc, cfg.tol("kelvin"), "PAPER")
    table = specfun.bernoulli_and_c(20).bernoulli
    for n in range(1, 11):
        exact = float(table[2 * n])
        v = borel.bernoulli_integral(n)
        _rec(rep, f"borel.bernoulli.{2 * n}", "integral representation of B_2n", {"n": n}, v,
             exact, _relerr(v, exact), cfg.tol("bernoulli"), "PAPER")
    return rep


SUITE_FUNCS = {
    "specfun": suite_specfun,
    "quadrature": suite_quadrature,
    "su11": suite_su11,
    "eigensystem": suite_eigensystem,
    "mellinspace": suite_mellinspace,
    "weightspace": suite_weightspace,
    "borel": suite_borel,
}


def _run_one(name, cfg):
    # each suite gets its own stream so results do not depend on scheduling
    rng = np.random.default_rng([cfg.seed, SUITES.index(name)])
    t0 = time.perf_counter()
    rep = SUITE_FUNCS[name](cfg, rng)
    rep.timings[name] = time.perf_counter() - t0
    return rep


def run(cfg=None):
    """Run the selected suites and merge their reports in canonical order."""
    cfg = RunConfig() if cfg is None else cfg
    if cfg.threads > 1 and len(cfg.suites) > 1:
        with ThreadPoolExecutor(cfg.threads) as pool:
            parts = list(pool.map(lambda n: _run_one(n, cfg), cfg.suites))
    else:
        parts = [_run_one(n, cfg) for n in cfg.suites]
    report = VerificationReport()
    for p in parts:
        report.extend(p)
    return report
