import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetalab import borel
from zetalab.specfun import DomainError

from conftest import rel

S1_GRID = [(complex(re, im), z) for re in (-3, -1, 0, 0.5, 0.9) for im in (0, 1, -1)
           for z in (0.1, 1, 5)]


def mp_s1_integral(x, z):
    """The same Borel integral in mpmath, summed lobe by lobe."""
    x = mp.mpc(x)
    f = lambda u: mp.exp(u * (x - 1)) * mp.besselj(0, 2 * mp.sqrt(z * u))
    return complex(mp.exp(z) * mp.quadosc(f, [0, mp.inf], zeros=lambda k: ((k - 0.25) * mp.pi) ** 2 / (4 * z)))


# --- S1 ---------------------------------------------------------------------------

@pytest.mark.parametrize("z", [0.0, 0.3, 2.0, 7.0])
def test_s1_at_origin(z):
    assert borel.s1_closed(0, z) == 1
    assert abs(borel.s1_borel_integral(0, z) - 1) < 1e-10


def test_s1_example_minus_one():
    assert abs(borel.s1_closed(-1, 1.0) - math.exp(0.5) / 2) < 1e-15
    assert rel(borel.s1_borel_integral(-1, 1.0), math.exp(0.5) / 2) < 1e-8


def test_s1_partial_sums_converge_inside():
    assert abs(borel.s1_partial(0.5, 1.0, 60) - borel.s1_closed(0.5, 1.0)) < 1e-10


def test_s1_partial_sums_diverge_outside():
    a, b = abs(borel.s1_partial(-3, 1.0, 20)), abs(borel.s1_partial(-3, 1.0, 40))
    assert b > 1e6 * a


def test_s1_partial_matches_mpmath_laguerre():
    x, z = 0.3 - 0.2j, 2.5
    ref = sum(complex(mp.laguerre(n, 0, z)) * x**n for n in range(31))
    assert abs(borel.s1_partial(x, z, 30) - ref) < 1e-13


@pytest.mark.parametrize("x, z", [p for p in S1_GRID if not (p[0].real == 0.9 and p[1] == 5)],
                         ids=lambda v: str(v))
def test_s1_grid(x, z):
    assert rel(borel.s1_borel_integral(x, z), borel.s1_closed(x, z)) <= 1e-8


def test_s1_near_one_is_rounding_limited():
    # x = 0.9, z = 5: the value e^{-45}/0.1 sits far below the integrand's L1 norm,
    # so the absolute error is at the rounding floor even though the relative error is not
    r = borel.s1_borel_integral(0.9, 5.0, full_output=True)
    closed = borel.s1_closed(0.9, 5.0)
    assert abs(closed) < 1e-17 * r.l1
    assert abs(r.value - closed) <= 1e-13 * r.l1


@pytest.mark.parametrize("x, z", [(-1 + 1j, 1.0), (0.5 - 1j, 5.0), (-3.0, 0.1)])
def test_s1_integral_vs_mpmath(x, z):
    assert rel(borel.s1_borel_integral(x, z), mp_s1_integral(x, z)) < 1e-9


def test_s1_domain():
    with pytest.raises(DomainError):
        borel.s1_closed(1.0, 1.0)
    with pytest.raises(DomainError):
        borel.s1_borel_integral(1.5 + 1j, 1.0)
    with pytest.raises(DomainError):
        borel.s1_closed(0.5, -1.0)
    assert not borel.S1.contains(1.0) and borel.S1.contains(-10.0, 3.0)


# --- S2 ---------------------------------------------------------------------------

@pytest.mark.parametrize("x", [0.5, 1 + 1j, 3.0])
def test_s2_identity(x):
    assert abs(borel.s2_resummed(x) - borel.s2_closed(x)) <= 1e-12 * abs(borel.s2_closed(x))


def test_s2_values():
    assert abs(borel.s2_closed(1) - 1 / (1 - math.exp(-1))) < 1e-15
    assert borel.s2_closed(0) == 1


@given(st.builds(complex, st.floats(1e-3, 40), st.floats(-6.2, 6.2)))
@settings(max_examples=100)
def test_s2_identity_region(x):
    assert abs(borel.s2_resummed(x) - borel.s2_closed(x)) <= 1e-12 * max(1, abs(borel.s2_closed(x)))


@pytest.mark.parametrize("x", [1.0, 1j, cmath.exp(2j)])
def test_s2_partial_sums_inside(x):
    assert abs(borel.s2_partial(x, 30) - borel.s2_closed(x)) < 1e-10


def test_s2_partial_sums_diverge_outside():
    # |B_n x^n / n!| ~ 2 zeta(n) (x / 2 pi)^n: zeta(n) -> 1 wins first, then the power
    x = 6.5
    mags = np.abs(borel.s2_terms(x, 200))[2::2]
    smallest = int(np.argmin(mags))
    assert 0 < smallest < 5
    assert np.all(np.diff(mags[smallest:]) > 0)
    assert mags[-1] > 100 * mags[smallest]


def test_s2_bernoulli_terms_vs_mpmath():
    t = borel.s2_terms(1.0, 12)
    for n in range(2, 13):
        assert abs(t[n] - float(mp.bernoulli(n) / mp.factorial(n))) < 1e-16
    assert t[1] == 0.5   # B_1 = +1/2 in this convention


def test_s2_domain():
    with pytest.raises(DomainError):
        borel.s2_resummed(-1.0)
    with pytest.raises(DomainError):
        borel.s2_resummed(1 + 7j)


# --- Kelvin and Bernoulli integrals -----------------------------------------------

@pytest.mark.parametrize("x, u", [(1, math.pi), (1, 1), (2, 0.5), (3, 2.0), (5, 2.0)])
def test_kelvin(x, u):
    resid, scale = borel.kelvin_integral_check(x, u)
    assert abs(resid) <= 1e-6 * scale


def test_kelvin_integrand_vs_mpmath():
    x, u = 2.0, 1.5
    f = lambda t: mp.exp(-t) * mp.sqrt(t * x * u) / (2 * mp.sqrt(2)) * (
        mp.ber(1, 2 * mp.sqrt(t * x * u)) + mp.bei(1, 2 * mp.sqrt(t * x * u)))
    lhs = mp.quad(f, [0, 1, 5, 20, 60, 200])   # e^{-200} ends it
    assert abs(lhs + u * x / 2 * mp.sin(u * x)) < 1e-20
    ev = borel.kelvin_integrand(x, u)
    for t in (0.1, 2.0, 9.0):
        assert rel(ev(np.array(t)), float(f(t))) < 1e-12


def test_kelvin_precision_floor():
    # cancellation against an envelope e^{xu/2} limits the residual at large xu
    small, _ = borel.kelvin_integral_check(1.0, 10.0)
    big, _ = borel.kelvin_integral_check(1.0, 40.0)
    assert abs(small) < 1e-10
    assert abs(big) > abs(small)


def test_kelvin_domain():
    with pytest.raises(DomainError):
        borel.kelvin_integral_check(1.0, 60.0)
    with pytest.raises(DomainError):
        borel.kelvin_integral_check(-1.0, 1.0)


@pytest.mark.parametrize("n", range(1, 11))
def test_bernoulli_integral(n):
    exact = float(mp.bernoulli(2 * n))
    assert abs(borel.bernoulli_integral_check(n)) <= 1e-9 * abs(exact)
    assert math.copysign(1, borel.bernoulli_integral(n)) == math.copysign(1, exact)


def test_bernoulli_integral_zeta_form():
    # 4 int u/(e^{2 pi u} - 1) du = 4 zeta(2) / (2 pi)^2
    assert abs(borel.bernoulli_integral(1) - 4 * (math.pi**2 / 6) / (2 * math.pi) ** 2) < 1e-14


def test_bernoulli_integral_domain():
    for n in (0, 11):
        with pytest.raises(DomainError):
            borel.bernoulli_integral(n)
