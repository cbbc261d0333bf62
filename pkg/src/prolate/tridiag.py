"""Symmetric tridiagonal eigensolver (implicit QL with Wilkinson shifts)."""
from __future__ import annotations

import math

import numpy as np


class ConvergenceError(RuntimeError):
    """The QL iteration failed to deflate within the iteration cap."""


def tqli(diag, off, vectors: str = "all", max_iter: int = 60):
    """Eigen-decomposition of the symmetric tridiagonal matrix (diag, off).

    Parameters
    ----------
    diag : array_like, shape (n,)
        Main diagonal.
    off : array_like, shape (n-1,)
        Sub/super diagonal.
    vectors : {"all", "first", "none"}
        ``"all"`` returns the full eigenvector matrix (columns), ``"first"``
        only the first component of every eigenvector (what Golub-Welsch
        needs), ``"none"`` eigenvalues only.
    max_iter : int
        Iteration cap per eigenvalue.

    Returns
    -------
    evals : ndarray, ascending
    vecs : ndarray or None
        Shape (n, n) for ``"all"``, (n,) for ``"first"``.
    """
    d = np.array(diag, dtype=float)
    n = d.size
    e = np.zeros(n)
    e[: n - 1] = np.asarray(off, dtype=float)
    if vectors == "all":
        zt = np.eye(n)
    elif vectors == "first":
        zt = np.zeros((n, 1))
        zt[0, 0] = 1.0
    elif vectors == "none":
        zt = None
    else:
        raise ValueError(f"unknown vectors option {vectors!r}")

    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) + dd == dd:
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > max_iter:
                raise ConvergenceError(f"no convergence for eigenvalue {l} after {max_iter} sweeps")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                if zt is not None:
                    zi, zi1 = zt[i].copy(), zt[i + 1].copy()
                    zt[i + 1] = s * zi + c * zi1
                    zt[i] = c * zi - s * zi1
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0

    order = np.argsort(d, kind="stable")
    evals = d[order]
    if zt is None:
        return evals, None
    if vectors == "first":
        return evals, zt[order, 0]
    return evals, zt[order].T
