"""Matrix form of the perturbed Jacobi operator and its truncated eigenproblem.

In the orthonormal Jacobi basis the operator is ``diag(k(k+a+b+1)) + c^2 X^2``
where ``X`` is the (tridiagonal) Jacobi matrix of multiplication by x, so the
representation is symmetric and pentadiagonal. For a symmetric weight the odd
couplings vanish and it splits into two symmetric tridiagonal systems.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.linalg import eig_banded

from prolate.specfun import JacobiRecurrence, WeightParams
from prolate.tridiag import ConvergenceError, tqli

__all__ = [
    "ConvergenceError",
    "EigenPair",
    "OperatorMatrix",
    "TruncationError",
    "build_matrix",
    "default_truncation",
    "solve",
    "symmetry_map",
]

TAIL_TOL = 1e-12
MARGIN = 10


class TruncationError(ValueError):
    """Truncation order too small for the requested eigenpairs."""


@dataclass(frozen=True)
class OperatorMatrix:
    """Banded storage of the (N+1)x(N+1) operator matrix.

    ``bands[0]`` is the diagonal, ``bands[1][i] = d[i, i+1]`` and
    ``bands[2][i] = d[i, i+2]`` (trailing entries unused).
    """

    params: WeightParams
    c: float
    order: int
    bands: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return self.order + 1

    def entry(self, i: int, j: int) -> float:
        i, j = min(i, j), max(i, j)
        if j - i > 2 or j > self.order:
            return 0.0
        return float(self.bands[j - i][i])

    def dense(self) -> np.ndarray:
        n = self.size
        out = np.diag(self.bands[0])
        for k in (1, 2):
            out += np.diag(self.bands[k][: n - k], k) + np.diag(self.bands[k][: n - k], -k)
        return out


@dataclass(frozen=True)
class EigenPair:
    """One eigen-solution: index, eigenvalue chi and Jacobi coefficients."""

    n: int
    chi: float
    coeffs: np.ndarray = field(repr=False)
    parity: str | None
    truncation: int
    params: WeightParams
    c: float

    @property
    def q(self) -> float:
        return self.c**2 / self.chi


def build_matrix(params: WeightParams, c: float, N: int) -> OperatorMatrix:
    if not c > 0:
        raise ValueError(f"bandwidth c must be positive, got {c}")
    if N < 4:
        raise ValueError(f"truncation order must be >= 4, got {N}")
    rec = JacobiRecurrence.build(params, N + 3)
    jd, jo = rec.jacobi_matrix(N + 3)
    k = np.arange(N + 1, dtype=float)
    ab1 = params.alpha + params.beta + 1.0
    c2 = c * c
    jo_prev = np.concatenate(([0.0], jo[:N]))
    bands = np.zeros((3, N + 1))
    bands[0] = k * (k + ab1) + c2 * (jo_prev**2 + jd[: N + 1] ** 2 + jo[: N + 1] ** 2)
    bands[1] = c2 * jo[: N + 1] * (jd[: N + 1] + jd[1 : N + 2])
    bands[2] = c2 * jo[: N + 1] * jo[1 : N + 2]
    bands[1][N:] = 0.0
    bands[2][N - 1 :] = 0.0
    return OperatorMatrix(params, float(c), N, bands)


def default_truncation(n_max: int, c: float, alpha: float = 0.0) -> int:
    """Truncation order large enough for eigenpairs 0..n_max at bandwidth c."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    return max(2 * n_max + 30, math.ceil(math.e * c / 2.0) + 30)


def _refine_tails(t: np.ndarray, e: np.ndarray, chi: float, v: np.ndarray) -> np.ndarray:
    """Recompute the tiny head/tail entries of v from the three-term eigen-equation.

    The QL vectors carry absolute errors of order eps; the continued-fraction
    ratios below give the decaying entries to full relative accuracy.
    """
    m = v.size
    if m < 3:
        return v
    v = v.copy()
    big = np.abs(v).max()
    strong = np.nonzero(np.abs(v) >= 1e-6 * big)[0]
    lo, hi = strong[0], strong[-1]
    if lo > 0:
        rho = np.empty(lo)
        rho[0] = -e[0] / (t[0] - chi)
        for j in range(1, lo):
            rho[j] = -e[j] / (t[j] - chi + e[j - 1] * rho[j - 1])
        for j in range(lo - 1, -1, -1):
            v[j] = rho[j] * v[j + 1]
    if hi < m - 1:
        sigma = np.empty(m)
        sigma[m - 1] = -e[m - 2] / (t[m - 1] - chi)
        for j in range(m - 2, hi, -1):
            sigma[j] = -e[j - 1] / (t[j] - chi + e[j] * sigma[j + 1])
        for j in range(hi + 1, m):
            v[j] = sigma[j] * v[j - 1]
    return v / np.linalg.norm(v)


def _fix_sign(v: np.ndarray) -> np.ndarray:
    return -v if v[np.argmax(np.abs(v))] < 0 else v


def _check_tail(v: np.ndarray, n: int, N: int) -> None:
    tail = max(abs(v[-1]), abs(v[-2]))
    if tail > TAIL_TOL * np.abs(v).max():
        raise TruncationError(f"eigenvector {n} not resolved at truncation N={N} (tail {tail:.2e})")


def _solve_symmetric(matrix: OperatorMatrix, n_max: int, refine: bool):
    diag, sup2 = matrix.bands[0], matrix.bands[2]
    size = matrix.size
    out = []
    for parity, start in (("even", 0), ("odd", 1)):
        idx = np.arange(start, size, 2)
        t = diag[idx]
        e = sup2[idx[:-1]]
        evals, vecs = tqli(t, e, vectors="all")
        count = (n_max - start) // 2 + 1 if n_max >= start else 0
        for j in range(count):
            v = vecs[:, j]
            if refine:
                v = _refine_tails(t, e, evals[j], v)
            full = np.zeros(size)
            full[idx] = _fix_sign(v)
            out.append((2 * j + start, evals[j], full, parity))
    out.sort(key=lambda item: item[0])
    return out


def _solve_general(matrix: OperatorMatrix, n_max: int):
    size = matrix.size
    band = np.zeros((3, size))
    band[2] = matrix.bands[0]
    band[1, 1:] = matrix.bands[1][: size - 1]
    band[0, 2:] = matrix.bands[2][: size - 2]
    try:
        evals, vecs = eig_banded(band, lower=False, select="i", select_range=(0, n_max))
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(str(exc)) from exc
    return [(n, evals[n], _fix_sign(vecs[:, n]), None) for n in range(n_max + 1)]


def solve(matrix: OperatorMatrix, n_max: int, refine: bool = True) -> list[EigenPair]:
    """Eigenpairs n = 0..n_max of the truncated operator, ascending in chi.

    Raises
    ------
    TruncationError
        If the truncation leaves no margin or an eigenvector is not resolved.
    ConvergenceError
        If the eigensolver fails.
    """
    N = matrix.order
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if n_max + MARGIN > N:
        raise TruncationError(f"need N >= n_max + {MARGIN}, got N={N}, n_max={n_max}")
    if matrix.params.symmetric():
        raw = _solve_symmetric(matrix, n_max, refine)
    else:
        raw = _solve_general(matrix, n_max)
    pairs = []
    for n, chi, v, parity in raw:
        _check_tail(v, n, N)
        pairs.append(EigenPair(n, float(chi), v, parity, N, matrix.params, matrix.c))
    chis = np.array([p.chi for p in pairs])
    if np.any(np.diff(chis) <= 0):
        raise ConvergenceError("computed eigenvalues are not strictly increasing")
    return pairs


def symmetry_map(pair: EigenPair) -> EigenPair:
    """Eigenpair of the mirrored weight (beta, alpha).

    Coefficients become ``(-1)**(k+n) * coeffs[k]`` so that
    ``psi_(a,b)(-x) == (-1)**n * psi_(b,a)(x)``; the sign convention is
    deliberately not re-applied.
    """
    k = np.arange(pair.coeffs.size)
    signs = np.where((k + pair.n) % 2 == 0, 1.0, -1.0)
    return replace(pair, coeffs=signs * pair.coeffs, params=pair.params.swapped())
