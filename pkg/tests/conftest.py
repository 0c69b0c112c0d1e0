"""Shared oracles.  mpmath works at elevated precision and never touches
the package's own special-function code, so it serves as the independent
reference throughout."""
import mpmath as mp
import pytest

mp.mp.dps = 30


def mp_F(s):
    """Gamma(s) eta(s) at 30 digits."""
    return complex(mp.gamma(s) * mp.altzeta(s))


def mp_Fprime(s):
    return complex(mp.diff(lambda w: mp.gamma(w) * mp.altzeta(w), s))


def rel(a, b):
    return abs(a - b) / abs(b)


@pytest.fixture(scope="session")
def mp_zeros():
    """Heights of the first 30 zeros from mpmath's independent zero finder."""
    return [float(mp.zetazero(k).imag) for k in range(1, 31)]


@pytest.fixture(scope="session")
def rho1(mp_zeros):
    return complex(0.5, mp_zeros[0])
