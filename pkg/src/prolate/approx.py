"""Spectral approximation of functions on [-1, 1] by GPSWF expansions."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from prolate.gpswf import Gpswf, _log_bessel_weights, _series, build_gpswfs, recurrence_for
from prolate.specfun import JacobiRecurrence, WeightParams, bessel_j_orders
from prolate.tridiag import tqli

SUP_GRID = 2001
QUAD_EXTRA = 20


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Jacobi rule for integrals of f(x) (1-x)^alpha (1+x)^beta on [-1, 1]."""

    alpha: float
    beta: float
    size: int
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    def integrate(self, values) -> float:
        return float(np.dot(self.weights, values))


def gauss_jacobi(alpha: float, M: int, beta: float | None = None) -> QuadratureRule:
    """M-point Gauss-Jacobi rule via Golub-Welsch on the orthonormal recurrence."""
    if M < 1:
        raise ValueError("rule size must be >= 1")
    params = WeightParams(alpha, beta)
    rec = JacobiRecurrence.build(params, M)
    diag, off = rec.jacobi_matrix(M)
    nodes, first = tqli(diag, off, vectors="first")
    weights = rec.h[0] * first**2
    if params.symmetric():
        nodes = 0.5 * (nodes - nodes[::-1])
        weights = 0.5 * (weights + weights[::-1])
    return QuadratureRule(params.alpha, params.beta, M, nodes, weights)


def rule_for(basis: Sequence[Gpswf]) -> QuadratureRule:
    return gauss_jacobi(basis[0].alpha, basis[0].pair.truncation + QUAD_EXTRA)


def project(f: Callable, basis: Sequence[Gpswf], quad: QuadratureRule) -> np.ndarray:
    """Inner products <f, psi_k> in L^2([-1, 1], (1-x^2)^alpha)."""
    fw = quad.weights * np.asarray(f(quad.nodes), dtype=float)
    return np.array([np.dot(fw, _series(psi.pair, quad.nodes)) for psi in basis])


def reconstruct(coeffs, basis: Sequence[Gpswf], x):
    """Partial sum sum_k coeffs[k] psi_k(x) for |x| <= 1."""
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.size != len(basis):
        raise ValueError(f"{coeffs.size} coefficients for {len(basis)} basis functions")
    if coeffs.size == 0:
        return np.zeros_like(np.asarray(x, dtype=float))
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) > 1.0 + 1e-12):
        raise ValueError("reconstruct needs |x| <= 1")
    # All basis functions share one truncation, so combine the Jacobi coefficients first.
    combined = sum(ck * psi.pair.coeffs for ck, psi in zip(coeffs, basis))
    return _series(replace(basis[0].pair, coeffs=combined), xa)


@dataclass
class ApproxReport:
    """Measured projection errors against the shape of the theoretical bound.

    ``bound_*`` equal ``C1 * sqrt(lambda_N) * chi_N**p * norm_f + eps_omega``
    with ``p = (1+alpha)/2`` for the weighted L2 error and ``1 + alpha/2`` for
    the sup error. ``min_C1`` is the smallest factor making the sup bound hold.
    """

    func: str
    c: float
    alpha: float
    N: int
    coeffs: np.ndarray = field(repr=False)
    l2_error: float
    sup_error: float
    bound_l2: float
    bound_sup: float
    norm_f: float
    C1: float = 1.0
    eps_omega: float = 0.0
    min_C1: float = 0.0
    status: str = "ok"

    @property
    def bound_satisfied(self) -> bool:
        return self.sup_error <= self.bound_sup and self.l2_error <= self.bound_l2

    def to_dict(self) -> dict:
        return {
            "func": self.func, "c": self.c, "alpha": self.alpha, "N": self.N,
            "coeffs": [float(v) for v in self.coeffs],
            "l2_error": self.l2_error, "sup_error": self.sup_error,
            "bound_l2": self.bound_l2, "bound_sup": self.bound_sup,
            "norm_f": self.norm_f, "C1": self.C1, "eps_omega": self.eps_omega,
            "min_C1": self.min_C1, "status": self.status,
            "bound_satisfied": self.bound_satisfied,
        }


def error_report(f: Callable, c: float, alpha: float, N: int, norm_f: float, C1: float = 1.0,
                 eps_omega: float = 0.0, name: str = "f", basis=None, coeffs=None,
                 weighted_norm: float | None = None) -> ApproxReport:
    """Project f on psi_0..psi_N and measure the weighted L2 and sup errors.

    The L2 error comes from quadrature of the residual, unless the exact
    weighted norm of f is given together with exact coefficients; then
    ``||f||^2 - sum coeffs^2`` is used, which stays exact for rough f.
    """
    if basis is None:
        basis = build_gpswfs(alpha, c, N)
    basis = list(basis)[: N + 1]
    quad = rule_for(basis)
    if coeffs is None:
        coeffs = project(f, basis, quad)
    if weighted_norm is not None:
        l2 = math.sqrt(max(weighted_norm**2 - float(np.sum(np.square(coeffs))), 0.0))
    else:
        resid_nodes = np.asarray(f(quad.nodes)) - reconstruct(coeffs, basis, quad.nodes)
        l2 = math.sqrt(max(quad.integrate(resid_nodes**2), 0.0))
    grid = np.linspace(-1.0, 1.0, SUP_GRID)
    sup = float(np.max(np.abs(np.asarray(f(grid)) - reconstruct(coeffs, basis, grid))))
    last = basis[N]
    root_lam = math.sqrt(last.lam)
    shape_l2 = root_lam * last.chi ** ((1.0 + alpha) / 2.0) * norm_f
    shape_sup = root_lam * last.chi ** (1.0 + alpha / 2.0) * norm_f
    min_c1 = max(sup - eps_omega, 0.0) / shape_sup if shape_sup > 0 else math.inf
    status = "ok" if N > 2.0 * c / math.pi else "hypothesis_unmet"
    return ApproxReport(name, c, alpha, N, np.asarray(coeffs), l2, sup,
                        C1 * shape_l2 + eps_omega, C1 * shape_sup + eps_omega,
                        norm_f, C1, eps_omega, min_c1, status)


# ---------------------------------------------------------------------------
# Test functions

def sinc_fn(c: float) -> Callable:
    def f(x):
        return np.sinc(c * np.asarray(x, dtype=float) / np.pi)
    return f


def _eta_envelope(x: np.ndarray) -> np.ndarray:
    """(2 sin(x/2) - x cos(x/2)) / x^3, with its Taylor series near 0."""
    out = np.empty_like(x)
    small = np.abs(x) < 0.5
    xs = x[small]
    acc = np.zeros_like(xs)
    for m in range(1, 12):
        acc += (-1) ** (m + 1) * (xs / 2.0) ** (2 * m - 2) * 2 * m / (4.0 * math.factorial(2 * m + 1))
    out[small] = acc
    xl = x[~small]
    out[~small] = (2.0 * np.sin(xl / 2.0) - xl * np.cos(xl / 2.0)) / xl**3
    return out


def eta_fn(c: float) -> Callable:
    if not c > 1.0:
        raise ValueError("eta needs c > 1")
    w = c - 0.5

    def f(x):
        x = np.asarray(x, dtype=float)
        return w * np.sinc(w * x / np.pi) * _eta_envelope(x)
    return f


def eta_fourier(c: float, xi):
    """Fourier transform of eta (convention int eta(x) exp(-i x xi) dx)."""
    a = np.abs(np.asarray(xi, dtype=float))
    blend = (2.0 * a - 2.0 * c + 3.0) * (a - c) ** 2
    return (math.pi / 12.0) * np.where(a <= c - 1.0, 1.0, np.where(a <= c, blend, 0.0))


def eta_norm(c: float) -> float:
    """L2(R) norm of eta via Plancherel."""
    return math.sqrt((math.pi / 12.0) ** 2 * 2.0 * ((c - 1.0) + 13.0 / 35.0) / (2.0 * math.pi))


def weierstrass_fn(s: float) -> Callable:
    if not s > 0:
        raise ValueError("Weierstrass exponent s must be positive")
    K = math.ceil(17.0 * math.log(10.0) / (s * math.log(2.0)))

    def f(x):
        x = np.asarray(x, dtype=float)
        return sum(np.cos(2.0**k * x) * 2.0 ** (-k * s) for k in range(K + 1))
    return f


def weierstrass_eps(s: float, c: float) -> float:
    """Size of the Weierstrass series beyond frequency c (its out-of-band part)."""
    k0 = math.floor(math.log2(c)) + 1
    return math.sqrt(2.0 ** (-2 * k0 * s) / (1.0 - 2.0 ** (-2 * s)))


def weierstrass_norm(s: float, alpha: float, terms: int | None = None) -> float:
    """Weighted L2 norm of W_s on [-1, 1] through the Fourier transform of the weight."""
    from prolate.gpswf import kernel_K

    if terms is None:
        terms = math.ceil(40.0 / s) + 1
    k = np.arange(terms)
    freq = 2.0**k
    amp = 2.0 ** (-k * s)
    total = 0.0
    for i in range(terms):
        for j in range(terms):
            total += 0.5 * amp[i] * amp[j] * (kernel_K(alpha, freq[i] - freq[j])
                                              + kernel_K(alpha, freq[i] + freq[j]))
    return math.sqrt(total)


def builtin_function(name: str, **params) -> Callable:
    if name == "sinc":
        return sinc_fn(params["c"])
    if name == "eta":
        return eta_fn(params["c"])
    if name == "weierstrass":
        return weierstrass_fn(params.get("s", 1.0))
    raise ValueError(f"unknown function {name!r}")


def function_from_csv(path) -> Callable:
    """Cubic-spline interpolant of (x, f(x)) samples in a two-column CSV."""
    from scipy.interpolate import CubicSpline

    data = np.genfromtxt(path, delimiter=",", comments="#")
    if data.ndim != 2 or data.shape[1] < 2:
        raise ValueError("CSV needs two columns x,f(x)")
    data = data[~np.isnan(data).any(axis=1)]
    order = np.argsort(data[:, 0])
    return CubicSpline(data[order, 0], data[order, 1])


def weierstrass_coeffs(s: float, basis: Sequence[Gpswf], k_terms: int | None = None) -> np.ndarray:
    """Exact inner products <W_s, psi_n> from the Bessel form of the Fourier transform."""
    if not s > 0:
        raise ValueError("Weierstrass exponent s must be positive")
    alpha = basis[0].alpha
    nu0 = alpha + 0.5
    decay = s + nu0
    if k_terms is None:
        k_terms = math.ceil(16.0 * math.log2(10.0) / decay) + 1
    size = basis[0].pair.coeffs.size
    # inner[k] = sum_j 2^{-j(s+a+1/2)} J_{k+a+1/2}(2^j)
    inner = np.zeros(size)
    for j in range(k_terms + 1):
        inner += 2.0 ** (-j * decay) * bessel_j_orders(nu0, size - 1, 2.0**j)
    logw = _log_bessel_weights(alpha, size - 1)
    k = np.arange(size)
    even_sign = np.where(k % 2 == 0, np.where((k // 2) % 2 == 0, 1.0, -1.0), 0.0)
    kernel = math.sqrt(math.pi) * 2.0**nu0 * even_sign * np.exp(logw) * inner
    return np.array([float(np.dot(psi.pair.coeffs, kernel)) if psi.n % 2 == 0 else 0.0
                     for psi in basis])
