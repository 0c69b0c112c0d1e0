"""Truncated Laguerre-basis matrices for the su(1,1) generators.

Basis vectors |n>, n = 0 .. dim-1, are the eigenstates of the shifted
number operator N (eigenvalue n + 1/2).  Ladder conventions:

    N+ |m> = (m + 1) |m + 1>,     N- |m> = m |m - 1>,
    K = (N+ + N-) / 2,            D = (N+ - N-) / (2i).

Products of banded matrices are wrong in the last few rows and columns of
a truncation, so identities are checked on an interior block.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .report import CheckRecord, VerificationReport
from .specfun import bernoulli_and_c

MIN_DIM = 8


@dataclass(frozen=True)
class TruncatedOperator:
    """Dense matrix of an operator in the first `dim` Laguerre states."""

    entries: np.ndarray
    edge_width: int = 1

    def __post_init__(self):
        n, m = self.entries.shape
        if n != m or n < MIN_DIM:
            raise ValueError(f"need a square matrix of dimension >= {MIN_DIM}")

    @property
    def dim(self):
        return self.entries.shape[0]

    def interior(self, width=None):
        """Block of indices below dim - width (default: own edge width)."""
        k = self.dim - (self.edge_width if width is None else width)
        return self.entries[:k, :k]

    def __matmul__(self, other):
        return TruncatedOperator(self.entries @ other.entries,
                                 self.edge_width + other.edge_width)

    def __add__(self, other):
        return TruncatedOperator(self.entries + other.entries,
                                 max(self.edge_width, other.edge_width))

    def __sub__(self, other):
        return TruncatedOperator(self.entries - other.entries,
                                 max(self.edge_width, other.edge_width))

    def __mul__(self, scalar):
        return TruncatedOperator(self.entries * scalar, self.edge_width)

    __rmul__ = __mul__


def _check_dim(n_max):
    if n_max < MIN_DIM:
        raise ValueError(f"n_max must be at least {MIN_DIM}")


def commutator(a, b):
    return a @ b - b @ a


@dataclass(frozen=True)
class ModelParams:
    """Similarity-transform parameter t and the quantities derived from it.

    alpha = (1 + t) / (2 - 2t), beta = (t**2 - 1) / t and, for real t only,
    the dilation parameter with sinh(lambda) = 2t / (t**2 - 1).
    """

    t: complex
    alpha: complex = field(init=False)
    beta: complex = field(init=False)
    lam: float | None = field(init=False)

    def __post_init__(self):
        t = complex(self.t)
        if not t.real < 1:
            raise ValueError("t must satisfy Re(t) < 1")
        if t in (0, 1, -1):
            raise ValueError("t must avoid 0 and +-1")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "alpha", (1 + t) / (2 - 2 * t))
        object.__setattr__(self, "beta", (t * t - 1) / t)
        lam = math.asinh((2 * t.real) / (t.real ** 2 - 1)) if t.imag == 0 else None
        object.__setattr__(self, "lam", lam)

    @classmethod
    def beta_one(cls):
        """The root t = (1 - sqrt 5) / 2 of t**2 - t - 1 = 0, giving beta = 1."""
        return cls((1 - math.sqrt(5)) / 2)

    @property
    def sqrt_t(self):
        return cmath.sqrt(self.t)


def build_number(n_max):
    """N = diag(n + 1/2)."""
    _check_dim(n_max)
    return TruncatedOperator(np.diag(np.arange(n_max) + 0.5).astype(complex), 0)


def build_ladders(n_max):
    """(N+, N-) with <m+1|N+|m> = m + 1 and <m-1|N-|m> = m."""
    _check_dim(n_max)
    up = np.diag(np.arange(1, n_max, dtype=float), -1).astype(complex)
    down = np.diag(np.arange(1, n_max, dtype=float), 1).astype(complex)
    return TruncatedOperator(up, 1), TruncatedOperator(down, 1)


def build_K_D(n_max):
    up, down = build_ladders(n_max)
    K = (up + down) * 0.5
    D = (up - down) * (1 / 2j)
    return K, D


def check_su11(n_max, edge_width=4):
    """Commutation relations and Casimir of su(1,1) on the interior block.

    Returns a `VerificationReport` with one record per identity; the full
    matrix residual (which includes truncation artefacts) is recorded in
    each record's inputs for comparison.
    """
    if n_max < 16:
        raise ValueError("check_su11 needs n_max >= 16")
    N = build_number(n_max)
    K, D = build_K_D(n_max)
    eye = TruncatedOperator(np.eye(n_max, dtype=complex), 0)
    identities = [
        ("su11.DN", "[D,N] = iK", commutator(D, N) - K * 1j),
        ("su11.NK", "[N,K] = iD", commutator(N, K) - D * 1j),
        ("su11.KD", "[K,D] = -iN", commutator(K, D) + N * 1j),
        ("su11.casimir", "D^2 + K^2 - N^2 = I/4", D @ D + K @ K - N @ N - eye * 0.25),
    ]
    report = VerificationReport()
    for cid, identity, resid in identities:
        inner = float(np.max(np.abs(resid.interior(edge_width))))
        full = float(np.max(np.abs(resid.entries)))
        report.add(CheckRecord(
            id=f"{cid}.n{n_max}", identity=identity,
            inputs={"n_max": n_max, "edge_width": edge_width, "full_residual": full},
            value=inner, reference=0.0, residual=inner, tolerance=1e-12,
            oracle="PAPER"))
    return report


def build_H_tilde(n_max, params=None, m_max=None):
    """Transformed Hamiltonian i N - i N- - i sum_m c_m (beta N-)^m.

    Only beta = 1 is supported.  N- shifts strictly upward, so its powers
    beyond the dimension vanish and the series is exactly finite in a
    truncation.  Entries are formed from exact rationals and rounded once.
    """
    _check_dim(n_max)
    params = ModelParams.beta_one() if params is None else params
    if abs(params.beta - 1) > 1e-12:
        raise ValueError("build_H_tilde supports beta = 1 only")
    m_max = n_max if m_max is None else m_max
    if m_max > n_max:
        raise ValueError("m_max must not exceed n_max")
    table = bernoulli_and_c(max(m_max, 1))
    H = np.zeros((n_max, n_max), dtype=complex)
    for k in range(n_max):
        H[k, k] = 1j * (k + 0.5 - float(table.c_exact[0]))
    for k in range(n_max - 1):
        H[k, k + 1] = -1j * float((1 + table.c_exact[1]) * (k + 1))
    for m in range(2, min(m_max, n_max - 1) + 1):
        cm = table.c_exact[m]
        if cm == 0:
            continue
        for k in range(n_max - m):
            H[k, k + m] = -1j * float(cm * math.perm(k + m, m))
    return TruncatedOperator(H, 1)


def apply_dilation(psi, lam, x):
    """(e^{i lam D} psi)(x) = e^{lam/2} psi(e^lam x)."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("x must be non-negative")
    return math.exp(0.5 * lam) * psi(math.exp(lam) * x)


def dilation_generator(psi, dpsi, x):
    """Analytic d/dlam at 0 of the dilation action: x psi'(x) + psi(x)/2.

    Equals i times (-i x d/dx - i/2) psi, the Berry-Keating operator applied
    to psi.
    """
    return x * dpsi(x) + 0.5 * psi(x)
