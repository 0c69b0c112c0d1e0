"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -v``.
"""
import math
import time
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest

from zetalab import (borel, eigensystem, mellinspace, operators, specfun, suites,
                     weightspace)
from zetalab.operators import ModelParams
from zetalab.suites import RunConfig

SEED = 20240601


@pytest.fixture
def verdict(capsys, request):
    """Print one summary line for the criterion, then assert on it."""

    def report(number, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {number:2d}] {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail

    return report


def sign_scan_zeros(t_max, step=0.05):
    """Independent locator: mpmath's Z(t) on a grid, refined by mpmath findroot."""
    ts = np.arange(step, t_max, step)
    vals = [float(mp.siegelz(t)) for t in ts]
    roots = []
    for a, b, fa, fb in zip(ts, ts[1:], vals, vals[1:]):
        if fa * fb < 0:
            roots.append(float(mp.findroot(mp.siegelz, (a, b), solver="anderson")))
    return roots


def test_criterion_01_zero_location(verdict):
    t0 = time.perf_counter()
    zeros = eigensystem.find_zeros(50)
    elapsed = time.perf_counter() - t0
    oracle = sign_scan_zeros(50)
    dt = max(abs(z.height - r) for z, r in zip(zeros, oracle))
    ok = len(zeros) == len(oracle) == 10 and dt <= 1e-6 and elapsed <= 60
    verdict(1, ok, f"{len(zeros)} zeros below 50, max |dt| = {dt:.1e}, {elapsed:.2f} s")


def test_criterion_02_boundary_cross_check(verdict):
    rng = np.random.default_rng(SEED)
    s = rng.uniform(0.2, 0.8, 50) + 1j * rng.uniform(-30, 30, 50)
    p = ModelParams.beta_one()
    t0 = time.perf_counter()
    worst = max(abs(eigensystem.boundary_value_quadrature(v, p) - eigensystem.boundary_value_closed(v, p))
                / abs(eigensystem.boundary_value_closed(v, p)) for v in s)
    elapsed = time.perf_counter() - t0
    verdict(2, worst <= 1e-7 and elapsed <= 30, f"worst relative gap {worst:.1e} over 50 points, {elapsed:.2f} s")


def test_criterion_03_su11(verdict):
    t0 = time.perf_counter()
    reps = [operators.check_su11(n) for n in (16, 64, 128)]
    elapsed = time.perf_counter() - t0
    worst = max(c.residual for r in reps for c in r.checks)
    verdict(3, worst <= 1e-12 and elapsed <= 5, f"worst interior residual {worst:.1e}, {elapsed:.2f} s")


def test_criterion_04_matrix_structure(verdict):
    H = operators.build_H_tilde(40, m_max=12).entries
    c = specfun.bernoulli_and_c(12).c_exact
    worst, exact_zero = 0.0, True
    for m in range(2, 13):
        for k in range(21):
            ref = -1j * float(c[m] * Fraction(math.perm(k + m, m)))
            if ref == 0:
                exact_zero &= H[k, k + m] == 0
            else:
                worst = max(worst, abs(H[k, k + m] - ref) / abs(ref))
    verdict(4, worst <= 1e-13 and exact_zero, f"worst relative entry error {worst:.1e}")


def test_criterion_05_mellin_ode(verdict):
    rho1 = complex(0.5, suites.KNOWN_ZEROS[0])
    worst = 0.0
    for s in (2.0, 0.5 + 3j, rho1):
        p = mellinspace.MellinEigenprofile(s)
        for z in (0.1, 1.0, 5.0):
            scale = abs(p.g(z)) * (1 + abs(s))
            worst = max(worst, abs(mellinspace.ode_residual(p, z)) / scale)
    verdict(5, worst <= 1e-12, f"worst scaled residual {worst:.1e}")


def test_criterion_06_integral_bc(verdict):
    v2 = mellinspace.integral_bc(mellinspace.MellinEigenprofile(2.0))
    r2 = abs(v2 - math.pi**2 / 12) / (math.pi**2 / 12)
    at_zeros = [abs(mellinspace.integral_bc(mellinspace.MellinEigenprofile(complex(0.5, t))))
                for t in suites.KNOWN_ZEROS[:2]]
    ok = r2 <= 1e-8 and max(at_zeros) <= 1e-6
    verdict(6, ok, f"s=2 relative error {r2:.1e}, |value| at zeros {max(at_zeros):.1e}")


def test_criterion_07_borel(verdict):
    s1_fail, s1_worst = [], 0.0
    for re in (-3, -1, 0, 0.5, 0.9):
        for im in (0, 1, -1):
            for z in (0.1, 1, 5):
                x = complex(re, im)
                closed = borel.s1_closed(x, z)
                e = abs(borel.s1_borel_integral(x, z) - closed) / abs(closed)
                s1_worst = max(s1_worst, e)
                if e > 1e-8:
                    s1_fail.append(f"x={x}, z={z}: {e:.1e}")
    s2 = max(abs(borel.s2_resummed(x) - borel.s2_closed(x)) / abs(borel.s2_closed(x))
             for x in (0.5, 1 + 1j, 3.0, 0.1 - 6j, 20 + 5j))
    kel = max(abs(r) / sc for r, sc in (borel.kelvin_integral_check(x, u)
                                        for x, u in ((1, math.pi), (1, 1), (2, 0.5))))
    bern = max(abs(borel.bernoulli_integral_check(n)) / abs(float(mp.bernoulli(2 * n))) for n in (1, 2))
    ok = not s1_fail and s2 <= 1e-12 and kel <= 1e-6 and bern <= 1e-9
    detail = (f"S1 worst {s1_worst:.1e} ({45 - len(s1_fail)}/45 within 1e-8"
              + (f"; over: {'; '.join(s1_fail)}" if s1_fail else "")
              + f"), S2 {s2:.1e}, Kelvin {kel:.1e}, Bernoulli {bern:.1e}")
    verdict(7, ok, detail)


def test_criterion_08_weight_identities(verdict):
    rng = np.random.default_rng(SEED)
    z, y = np.exp(rng.uniform(-5, 5, (2, 1000)))
    symmetric = np.array_equal(weightspace.weight(z, y), weightspace.weight(y, z))
    g = np.logspace(-2, 2, 20)
    gz, gy = np.meshgrid(g, g)
    resid, scale = weightspace.check_transport(gz, gy)
    transport = float(np.max(np.abs(resid) / scale))
    cov = max(float(np.max(np.abs(lam * weightspace.weight(lam * z, lam * y) - weightspace.weight(z, y))
                           / weightspace.weight(z, y))) for lam in (0.1, 3.0, 40.0))
    ok = symmetric and transport <= 1e-12 and cov <= 1e-14
    verdict(8, ok, f"symmetry exact: {symmetric}, transport {transport:.1e}, covariance {cov:.1e}")


def test_criterion_09_domain_condition(verdict):
    zeros = eigensystem.find_zeros(50)
    at_zeros = max(abs(weightspace.domain_limit_closed(complex(0.5, z.height))) for z in zeros)
    controls = [0.15 * j for j in range(1, 21)]
    off = min(abs(weightspace.domain_limit_closed(complex(0.5, t))) for t in controls)
    spread = max(weightspace.domain_limit(complex(0.5, t)).spread
                 for t in [z.height for z in zeros] + controls)
    ok = at_zeros <= 1e-6 and off >= 1e-3 and spread <= 1e-6
    verdict(9, ok, f"max at zeros {at_zeros:.1e}, min at controls {off:.1e}, z-spread {spread:.1e}")


def test_criterion_10_trivial_kernel(verdict):
    g = np.linspace(0.01, 4, 25)
    worst = 0.0
    for z in g:
        for y in g:
            series, closed = weightspace.kernel_trivial_case(z, y)
            worst = max(worst, abs(series - closed) / closed)
    verdict(10, worst <= 1e-10, f"worst relative gap {worst:.1e} on a 25x25 grid")


def test_criterion_11_orthogonality(verdict):
    rho = eigensystem.find_zeros(15)[0].point
    r = weightspace.orthogonality_linearized(rho, 1e-3)
    ok = r.rel_error <= 1e-4 and r.max_imag_ratio <= 1e-10
    verdict(11, ok, f"Richardson relative error {r.rel_error:.1e}, imaginary ratio {r.max_imag_ratio:.1e}")


def test_criterion_12_eigenvalue_reality(verdict):
    zeros = eigensystem.find_zeros(eigensystem.SUPPORTED_HEIGHT)
    worst = max(abs(z.eigenvalue.imag) for z in zeros)
    verdict(12, worst <= 1e-9, f"max |Im E| {worst:.1e} over {len(zeros)} zeros")


def test_criterion_13_full_verify(verdict):
    cfg = RunConfig(threads=1, seed=SEED)
    t0 = time.perf_counter()
    first = suites.run(cfg)
    elapsed = time.perf_counter() - t0
    second = suites.run(RunConfig(threads=1, seed=SEED))
    same = first.canonical() == second.canonical()
    ok = elapsed <= 300 and same
    verdict(13, ok, f"{len(first.checks)} checks in {elapsed:.1f} s, deterministic: {same}")
