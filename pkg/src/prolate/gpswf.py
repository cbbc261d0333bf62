"""Generalized prolate spheroidal wave functions built from eigenpairs.

Evaluation on [-1, 1] uses the Jacobi expansion, evaluation on the real line
the Bessel series of the weighted finite Fourier transform. The eigenvalue mu
of that transform, and lambda = c/(2 pi) |mu|^2, are attached to each function.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from prolate.eigensystem import EigenPair, build_matrix, default_truncation, solve
from prolate.specfun import (
    JacobiRecurrence,
    WeightParams,
    bessel_j_orders,
    bessel_j_scaled,
    jacobi_derivative_table,
)

MU_FLOOR = 1e-300


@lru_cache(maxsize=64)
def recurrence_for(params: WeightParams, capacity: int) -> JacobiRecurrence:
    return JacobiRecurrence.build(params, capacity)


@lru_cache(maxsize=64)
def _log_bessel_weights(alpha: float, kmax: int) -> np.ndarray:
    """log of Gamma(k+alpha+1) / (sqrt(h_k) k!) for the symmetric weight."""
    rec = recurrence_for(WeightParams(alpha), kmax)
    k = np.arange(kmax + 1)
    lg = np.array([math.lgamma(j + alpha + 1.0) - math.lgamma(j + 1.0) for j in k])
    return lg - 0.5 * rec.ln_h[: kmax + 1]


@dataclass(frozen=True)
class Gpswf:
    """A GPSWF together with its Fourier eigenvalue.

    ``mu = i**mu_phase * mu_abs`` and ``lam = c/(2 pi) * mu_abs**2``.
    ``log_mu_abs`` stays finite when ``mu_abs`` underflows.
    """

    pair: EigenPair = field(repr=False)
    mu_abs: float
    mu_phase: int
    lam: float
    log_mu_abs: float

    @property
    def n(self) -> int:
        return self.pair.n

    @property
    def chi(self) -> float:
        return self.pair.chi

    @property
    def c(self) -> float:
        return self.pair.c

    @property
    def alpha(self) -> float:
        return self.pair.params.alpha

    @property
    def mu(self) -> complex:
        return (1j) ** self.mu_phase * self.mu_abs

    def __call__(self, x):
        return eval_inside(self, x)


def _as_pair(psi) -> EigenPair:
    return psi.pair if isinstance(psi, Gpswf) else psi


def _series(pair: EigenPair, x):
    """Clenshaw sum of the Jacobi expansion, no range check."""
    rec = recurrence_for(pair.params, pair.truncation + 1)
    beta = pair.coeffs
    x = np.asarray(x, dtype=float)
    b1 = np.zeros_like(x)
    b2 = np.zeros_like(x)
    for k in range(beta.size - 1, -1, -1):
        b0 = beta[k] + (rec.a[k] * x + rec.b[k]) * b1 - rec.c[k + 1] * b2
        b2, b1 = b1, b0
    return b1 * math.exp(-0.5 * rec.ln_h[0])


def eval_inside(psi, x):
    """psi(x) for x in [-1, 1] from the Jacobi expansion."""
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) > 1.0 + 1e-12):
        raise ValueError("eval_inside needs |x| <= 1; use eval_extended outside")
    out = _series(_as_pair(psi), np.clip(xa, -1.0, 1.0))
    return float(out) if out.ndim == 0 else out


def value_at_one(pair: EigenPair) -> float:
    rec = recurrence_for(pair.params, pair.truncation + 1)
    vals = np.array([rec.value_at_one(k) for k in range(pair.coeffs.size)])
    return float(np.dot(pair.coeffs, vals))


def derivatives_at_zero(pair: EigenPair, order: int) -> np.ndarray:
    """psi^(m)(0) for m = 0..order, from the differentiated recurrence."""
    rec = recurrence_for(pair.params, pair.truncation + 1)
    table = jacobi_derivative_table(rec, pair.coeffs.size - 1, order, 0.0)
    return table @ pair.coeffs


def _parity_signs(n: int, size: int) -> np.ndarray:
    # i**(k-n) for k of the same parity as n; other entries are multiplied by zeros.
    k = np.arange(size)
    return np.where(((k - n) // 2) % 2 == 0, 1.0, -1.0)


def _bessel_terms(pair: EigenPair, z: float) -> np.ndarray:
    """Terms i^(k-n) beta_k Gamma(k+a+1)/(sqrt(h_k) k!) J_{k+a+1/2}(z) / z^(a+1/2)."""
    alpha = pair.params.alpha
    size = pair.coeffs.size
    logw = _log_bessel_weights(alpha, size - 1)
    signs = _parity_signs(pair.n, size)
    nu0 = alpha + 0.5
    jv = bessel_j_orders(nu0, size - 1, z)
    return signs * pair.coeffs * np.exp(logw) * jv / z**nu0


def _bessel_sum(pair: EigenPair, z: float) -> float:
    return float(np.sum(_bessel_terms(pair, z)))


# Above this cancellation ratio the x = 1 formula is replaced by the x = 0 identity.
MAX_CANCELLATION = 1e4


def compute_mu(pair: EigenPair, method: str = "auto") -> tuple[float, int]:
    """|mu_n| and its phase (mu_n = i**phase |mu_n|).

    ``method="boundary"`` matches the Bessel series of the Fourier image with
    the Jacobi series at x = 1. For n well past the plunge that sum cancels
    heavily, so ``"auto"`` switches to :func:`mu_from_origin` once the ratio
    sum|terms| / |sum| exceeds ``MAX_CANCELLATION``.
    """
    log_abs, phase = _log_mu(pair, method)
    return math.exp(log_abs), phase


def _log_mu(pair: EigenPair, method: str = "auto") -> tuple[float, int]:
    if not pair.params.symmetric():
        raise ValueError("mu is defined for the symmetric weight only")
    if method not in ("auto", "boundary", "origin"):
        raise ValueError(f"unknown method {method!r}")
    alpha, c = pair.params.alpha, pair.c
    if method != "origin":
        terms = _bessel_terms(pair, c)
        num = float(np.sum(terms))
        cancel = np.sum(np.abs(terms)) / abs(num) if num != 0.0 else math.inf
        if method == "boundary" or cancel <= MAX_CANCELLATION:
            den = value_at_one(pair)
            if den == 0.0:
                raise ArithmeticError("psi(1) vanished")
            ratio = num / den
            if ratio == 0.0:
                return -math.inf, pair.n % 4
            log_abs = (0.5 * math.log(math.pi) + (alpha + 0.5) * math.log(2.0)
                       + math.log(abs(ratio)))
            return log_abs, (pair.n + (0 if ratio > 0 else 2)) % 4
    mu = mu_from_origin(pair)
    part = mu.real if pair.n % 2 == 0 else mu.imag
    base = 0 if pair.n % 2 == 0 else 1
    return math.log(abs(part)), base + (0 if part > 0 else 2)


def mu_from_origin(pair: EigenPair) -> complex:
    """mu_n from the eigen-equation at x = 0 (even n) or its derivative (odd n).

    Free of cancellation, used to cross-check :func:`compute_mu`.
    """
    if not pair.params.symmetric():
        raise ValueError("mu is defined for the symmetric weight only")
    rec = recurrence_for(pair.params, pair.truncation + 1)
    d = derivatives_at_zero(pair, 1)
    if pair.n % 2 == 0:
        return complex(pair.coeffs[0] * math.exp(0.5 * rec.ln_h[0]) / d[0])
    # int y P~_1(y) w(y) dy = sqrt(h_0) / a_0
    m11 = math.exp(0.5 * rec.ln_h[0]) / rec.a[0]
    return 1j * pair.c * pair.coeffs[1] * m11 / d[1]


def compute_lambda(mu_abs: float, c: float) -> float:
    return c / (2.0 * math.pi) * mu_abs * mu_abs


def make_gpswf(pair: EigenPair) -> Gpswf:
    log_abs, phase = _log_mu(pair)
    mu_abs = math.exp(log_abs)
    return Gpswf(pair, mu_abs, phase, compute_lambda(mu_abs, pair.c), log_abs)


def build_gpswfs(alpha: float, c: float, n_max: int, N: int | None = None) -> list[Gpswf]:
    """GPSWFs psi_0..psi_{n_max} for the symmetric weight (1-x^2)^alpha."""
    N = default_truncation(n_max, c, alpha) if N is None else N
    pairs = solve(build_matrix(WeightParams(alpha), c, N), n_max)
    return [make_gpswf(p) for p in pairs]


def eval_extended(psi: Gpswf, x):
    """psi(x) on the real line (x != 0) from the Bessel series of its Fourier image."""
    if psi.mu_abs < MU_FLOOR:
        raise ArithmeticError("|mu| below 1e-300, extension not representable")
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xa == 0.0):
        raise ValueError("eval_extended is undefined at x = 0; use eval_inside")
    pair = psi.pair
    sign = 1.0 if psi.mu_phase == pair.n % 4 else -1.0
    pref = sign * math.sqrt(math.pi) * 2.0 ** (pair.params.alpha + 0.5) / psi.mu_abs
    out = np.empty(xa.shape)
    for i, xi in enumerate(xa):
        val = pref * _bessel_sum(pair, pair.c * abs(xi))
        out[i] = val if xi > 0 or pair.n % 2 == 0 else -val
    return float(out[0]) if np.ndim(x) == 0 else out


def eval_any(psi: Gpswf, x):
    """Jacobi expansion on [-1, 1], Bessel extension elsewhere."""
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    inside = np.abs(xa) <= 1.0
    out = np.empty(xa.shape)
    if inside.any():
        out[inside] = eval_inside(psi, xa[inside])
    if (~inside).any():
        out[~inside] = eval_extended(psi, xa[~inside])
    return float(out[0]) if np.ndim(x) == 0 else out


def kernel_K(alpha: float, x: float) -> float:
    """Fourier transform of (1-y^2)^alpha on [-1, 1] at frequency x."""
    if not alpha > -1.0:
        raise ValueError("alpha must exceed -1")
    nu = alpha + 0.5
    return (math.sqrt(math.pi) * 2.0**nu * math.gamma(alpha + 1.0)
            * bessel_j_scaled(nu, abs(x)))


def apply_fourier(pair, x: float, quad) -> complex:
    """Integral of exp(i c x y) psi(y) (1-y^2)^alpha dy by the quadrature rule."""
    pair = _as_pair(pair)
    vals = _series(pair, quad.nodes)
    return complex(np.sum(quad.weights * vals * np.exp(1j * pair.c * x * quad.nodes)))


def log_mu_asymptotic(alpha: float, c: float, n: int) -> float:
    """log of the large-n approximation of |mu_n| (valid well beyond the plunge)."""
    return (alpha * (1.0 - math.log(4.0))
            + 0.5 * math.log(math.pi * math.e / (2 * n + 2 * alpha + 3))
            + n * math.log(math.e * c / (4 * n + 4 * alpha + 2)))
