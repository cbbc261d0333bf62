"""Special functions used throughout the package.

Gamma/Beta in log-space, Bessel functions of the first kind of real order,
Kummer's function on the imaginary axis, and the orthonormal Jacobi
polynomials together with their moments and weighted Fourier transforms.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate


class DomainError(ValueError):
    """Argument outside the domain of a special function."""


@dataclass(frozen=True)
class WeightParams:
    """Jacobi weight ``(1 - y)**alpha * (1 + y)**beta`` on [-1, 1]."""

    alpha: float
    beta: float | None = None

    def __post_init__(self):
        if self.beta is None:
            object.__setattr__(self, "beta", self.alpha)
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))
        if not (self.alpha > -1.0 and self.beta > -1.0):
            raise DomainError(f"weight exponents must exceed -1, got ({self.alpha}, {self.beta})")

    def symmetric(self) -> bool:
        return self.alpha == self.beta

    def swapped(self) -> "WeightParams":
        return WeightParams(self.beta, self.alpha)

    def weight(self, y):
        y = np.asarray(y, dtype=float)
        return (1.0 - y) ** self.alpha * (1.0 + y) ** self.beta


# ---------------------------------------------------------------------------
# Gamma and Beta

def ln_gamma(x: float) -> float:
    if not x > 0:
        raise DomainError(f"ln_gamma needs x > 0, got {x}")
    return math.lgamma(x)


def ln_beta(x: float, y: float) -> float:
    if not (x > 0 and y > 0):
        raise DomainError(f"beta function needs positive arguments, got ({x}, {y})")
    return math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y)


def beta_fn(x: float, y: float) -> float:
    return math.exp(ln_beta(x, y))


def gamma_sandwich(x: float) -> tuple[float, float]:
    """Logs of the lower and upper Stirling-type bounds on Gamma(x + 1), x > 0."""
    s = (x + 0.5) * (math.log(x + 0.5) - 1.0)
    return 0.5 * math.log(2 * math.e) + s, 0.5 * math.log(2 * math.pi) + s


# ---------------------------------------------------------------------------
# Bessel functions of the first kind

_ASYMPTOTIC_X = 25.0


def _hankel_asymptotic(nu: float, x: float) -> float:
    # Valid for small nu and x >= 25: terms drop below 1e-17 long before
    # the asymptotic series starts to diverge.
    mu = 4.0 * nu * nu
    p, q, t = 1.0, 0.0, 1.0
    for k in range(1, 60):
        t_new = t * (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        if abs(t_new) > abs(t) and k > 2:
            break
        t = t_new
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2:
            q += sign * t
        else:
            p += sign * t
        if abs(t) < 1e-17:
            break
    # Expand cos/sin(x - phi) so that large x keeps full relative accuracy.
    phi = (0.5 * nu + 0.25) * math.pi
    cx, sx, cp, sp = math.cos(x), math.sin(x), math.cos(phi), math.sin(phi)
    cos_w = cx * cp + sx * sp
    sin_w = sx * cp - cx * sp
    return math.sqrt(2.0 / (math.pi * x)) * (p * cos_w - q * sin_w)


def _backward_ratios(nu0: float, x: float, start: int, stop: int) -> np.ndarray:
    """Ratios r[k] = J_{nu0+k}(x) / J_{nu0+k-1}(x) for stop <= k <= start."""
    r = np.zeros(start + 2)
    rk = 0.0
    for k in range(start, stop - 1, -1):
        rk = x / (2.0 * (nu0 + k) - x * rk)
        r[k] = rk
    return r


def _miller_family(nu0: float, kmax: int, x: float) -> np.ndarray:
    top = max(kmax, int(x)) + 40 + int(math.sqrt(40.0 * max(kmax, x, 1.0)))
    r = _backward_ratios(nu0, x, top, 1)
    f = np.empty(top + 1)
    f[0] = 1.0
    for k in range(1, top + 1):
        f[k] = f[k - 1] * r[k]
    # Neumann normalisation: (x/2)**nu0 = sum_j (nu0+2j) Gamma(nu0+j)/j! J_{nu0+2j}(x)
    s = math.gamma(nu0 + 1.0) * f[0]
    for j in range(1, top // 2 + 1):
        coef = math.exp(math.log(nu0 + 2 * j) + math.lgamma(nu0 + j) - math.lgamma(j + 1))
        s += coef * f[2 * j]
    j0 = math.exp(nu0 * math.log(0.5 * x)) / s
    return j0 * f[: kmax + 1]


def _forward_family(nu0: float, kmax: int, x: float) -> np.ndarray:
    out = np.empty(kmax + 1)
    out[0] = _hankel_asymptotic(nu0, x)
    if kmax == 0:
        return out
    out[1] = _hankel_asymptotic(nu0 + 1.0, x)
    kf = min(kmax, max(1, int(math.floor(x - nu0))))
    for k in range(1, kf):
        out[k + 1] = 2.0 * (nu0 + k) / x * out[k] - out[k - 1]
    if kf < kmax:
        top = int(max(kmax, x)) + 60 + int(6.0 * x ** (1.0 / 3.0))
        r = _backward_ratios(nu0, x, top, kf + 1)
        for k in range(kf + 1, kmax + 1):
            out[k] = out[k - 1] * r[k]
    return out


def bessel_j_orders(nu0: float, kmax: int, x: float) -> np.ndarray:
    """J_{nu0 + k}(x) for k = 0..kmax, with nu0 >= -1/2 and x >= 0."""
    if nu0 < -0.5:
        raise DomainError(f"Bessel order must be >= -1/2, got {nu0}")
    if x < 0:
        raise DomainError(f"Bessel argument must be >= 0, got {x}")
    if x == 0.0:
        out = np.zeros(kmax + 1)
        if nu0 == 0.0:
            out[0] = 1.0
        return out
    if nu0 >= 1.0:
        # Run the recurrences from the fractional base order.
        shift = int(math.floor(nu0))
        return bessel_j_orders(nu0 - shift, kmax + shift, x)[shift:]
    if x < _ASYMPTOTIC_X:
        return _miller_family(nu0, kmax, x)
    return _forward_family(nu0, kmax, x)


def _bessel_series(nu: float, x: float) -> float:
    half = 0.5 * x
    term = math.exp(nu * math.log(half) - math.lgamma(nu + 1.0))
    total = term
    q = half * half
    for k in range(1, 500):
        term *= -q / (k * (k + nu))
        total += term
        if abs(term) <= 1e-17 * abs(total):
            break
    return total


def bessel_j(nu: float, x: float) -> float:
    """Bessel function of the first kind J_nu(x) for nu >= -1/2, x >= 0."""
    if nu < -0.5:
        raise DomainError(f"Bessel order must be >= -1/2, got {nu}")
    if x < 0:
        raise DomainError(f"Bessel argument must be >= 0, got {x}")
    if x == 0.0:
        return 1.0 if nu == 0.0 else 0.0
    # Monotone, non-cancelling power series in this range.
    if 0.25 * x * x <= 0.5 * (nu + 1.0):
        return _bessel_series(nu, x)
    nu0 = nu - math.floor(nu) if nu >= 0 else nu
    k = int(round(nu - nu0))
    return float(bessel_j_orders(nu0, k, x)[k])


def bessel_j_scaled(nu: float, x: float) -> float:
    """J_nu(x) / x**nu, continuous at x = 0 and even in x."""
    x = abs(x)
    if x < 1.0:
        q = 0.25 * x * x
        term = math.exp(-nu * math.log(2.0) - math.lgamma(nu + 1.0))
        total = term
        for k in range(1, 60):
            term *= -q / (k * (k + nu))
            total += term
            if abs(term) <= 1e-17 * abs(total):
                break
        return total
    return bessel_j(nu, x) / x**nu


# ---------------------------------------------------------------------------
# Kummer's function on the imaginary axis

def kummer_1f1_imag(a: float, b: float, t: float) -> complex:
    """1F1(a, b; i t) from its Euler integral, for b > a > 0."""
    if not (a > 0 and b > a):
        raise DomainError(f"integral representation needs b > a > 0, got a={a}, b={b}")
    if t == 0.0:
        return complex(1.0, 0.0)
    wvar = (a - 1.0, b - a - 1.0)
    opts = dict(weight="alg", wvar=wvar, epsabs=1e-15, epsrel=1e-13, limit=400)
    with warnings.catch_warnings():
        # QUADPACK flags round-off once it is at machine precision.
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        re, _ = integrate.quad(lambda s: math.cos(t * s), 0.0, 1.0, **opts)
        im, _ = integrate.quad(lambda s: math.sin(t * s), 0.0, 1.0, **opts)
    scale = math.exp(-ln_beta(a, b - a))
    return complex(re * scale, im * scale)


# ---------------------------------------------------------------------------
# Jacobi polynomials

def _ln_h(alpha: float, beta: float, k: int) -> float:
    ab = alpha + beta
    if k == 0:
        return (ab + 1.0) * math.log(2.0) + ln_beta(alpha + 1.0, beta + 1.0)
    return ((ab + 1.0) * math.log(2.0) + math.lgamma(k + alpha + 1.0) + math.lgamma(k + beta + 1.0)
            - math.lgamma(k + 1.0) - math.log(2 * k + ab + 1.0) - math.lgamma(k + ab + 1.0))


@dataclass(frozen=True)
class JacobiRecurrence:
    """Three-term recurrence data of the Jacobi polynomials up to ``capacity``.

    ``A, B, C`` drive the classical polynomials P_k, ``a, b, c`` the
    orthonormal ones, and ``h[k]`` is the squared norm of P_k.
    """

    params: WeightParams
    capacity: int
    A: np.ndarray = field(repr=False)
    B: np.ndarray = field(repr=False)
    C: np.ndarray = field(repr=False)
    a: np.ndarray = field(repr=False)
    b: np.ndarray = field(repr=False)
    c: np.ndarray = field(repr=False)
    h: np.ndarray = field(repr=False)
    ln_h: np.ndarray = field(repr=False)

    @classmethod
    def build(cls, params: WeightParams, capacity: int) -> "JacobiRecurrence":
        if capacity < 0:
            raise ValueError("capacity must be >= 0")
        al, be = params.alpha, params.beta
        ab = al + be
        n = capacity + 2
        A, B, C = np.zeros(n), np.zeros(n), np.zeros(n)
        A[0] = 0.5 * (ab + 2.0)
        B[0] = 0.5 * (al - be)
        for k in range(1, n):
            den = 2.0 * (k + 1) * (k + ab + 1.0)
            A[k] = (2 * k + ab + 1.0) * (2 * k + ab + 2.0) / den
            B[k] = (al * al - be * be) * (2 * k + ab + 1.0) / (den * (2 * k + ab))
            C[k] = ((k + al) * (k + be) * (2 * k + ab + 2.0)
                    / ((k + 1.0) * (k + ab + 1.0) * (2 * k + ab)))
        ln_h = np.array([_ln_h(al, be, k) for k in range(n + 1)])
        a = np.exp(0.5 * (ln_h[:n] - ln_h[1:n + 1])) * A
        b = np.exp(0.5 * (ln_h[:n] - ln_h[1:n + 1])) * B
        c = np.zeros(n)
        c[1:] = np.exp(0.5 * (ln_h[:n - 1] - ln_h[2:n + 1])) * C[1:]
        return cls(params, capacity, A, B, C, a, b, c, np.exp(ln_h), ln_h)

    def jacobi_matrix(self, size: int) -> tuple[np.ndarray, np.ndarray]:
        """Diagonal and off-diagonal of multiplication by x in the orthonormal basis."""
        if size > self.capacity + 1:
            raise ValueError("recurrence capacity exceeded")
        diag = -self.b[:size] / self.a[:size]
        off = 1.0 / self.a[: size - 1]
        return diag, off

    def table(self, kmax: int, x) -> np.ndarray:
        """Normalized polynomials P~_0..P~_kmax at the points x (rows indexed by k)."""
        if kmax > self.capacity:
            raise ValueError(f"degree {kmax} exceeds capacity {self.capacity}")
        x = np.asarray(x, dtype=float)
        out = np.empty((kmax + 1,) + x.shape)
        out[0] = math.exp(-0.5 * self.ln_h[0])
        if kmax >= 1:
            out[1] = (self.a[0] * x + self.b[0]) * out[0]
        for k in range(1, kmax):
            out[k + 1] = (self.a[k] * x + self.b[k]) * out[k] - self.c[k] * out[k - 1]
        return out

    def value_at_one(self, k: int) -> float:
        """P~_k(1) = binom(k + alpha, k) / sqrt(h_k)."""
        al = self.params.alpha
        return math.exp(math.lgamma(k + al + 1.0) - math.lgamma(k + 1.0) - math.lgamma(al + 1.0)
                        - 0.5 * self.ln_h[k])


def jacobi_eval(rec: JacobiRecurrence, k: int, x):
    """Normalized Jacobi polynomial P~_k(x) by forward recurrence."""
    if k < 0 or k > rec.capacity:
        raise ValueError(f"degree {k} outside 0..{rec.capacity}")
    vals = rec.table(k, x)[k]
    return float(vals) if np.ndim(vals) == 0 else vals


def jacobi_derivative_table(rec: JacobiRecurrence, kmax: int, order: int, x: float) -> np.ndarray:
    """Derivatives d^m/dx^m P~_k(x) for m <= order, k <= kmax, as an (order+1, kmax+1) array.

    Obtained by differentiating the three-term recurrence m times.
    """
    if kmax > rec.capacity:
        raise ValueError(f"degree {kmax} exceeds capacity {rec.capacity}")
    out = np.zeros((order + 1, kmax + 1))
    out[0] = rec.table(kmax, x)
    for m in range(1, order + 1):
        for j in range(0, kmax):
            prev = out[m, j - 1] if j > 0 else 0.0
            out[m, j + 1] = ((rec.a[j] * x + rec.b[j]) * out[m, j] + m * rec.a[j] * out[m - 1, j]
                             - rec.c[j] * prev)
    return out


def weight_moment(params: WeightParams, k: int) -> float:
    """k-th moment of the Jacobi weight over [-1, 1]."""
    if params.symmetric():
        if k % 2:
            return 0.0
        return beta_fn(k // 2 + 0.5, params.alpha + 1.0)
    from prolate.approx import gauss_jacobi

    rule = gauss_jacobi(params.alpha, k // 2 + 1, beta=params.beta)
    return float(np.sum(rule.weights * rule.nodes**k))


def weight_moment_bound(params: WeightParams, k: int) -> float:
    """Upper bound C / k**(1 + min(alpha, beta)) on the k-th weight moment."""
    al, be = params.alpha, params.beta
    const = (2.0**al + 2.0**be) * math.sqrt(math.pi / math.e) * math.gamma(1.0 + max(al, be))
    return const / k ** (1.0 + min(al, be))


def jacobi_moment(rec: JacobiRecurrence, k: int, n: int) -> float:
    """M_{k,n}: integral of x**k P~_n(x) against the weight."""
    if k < 0 or n < 0:
        raise ValueError("moment indices must be nonnegative")
    if k < n:
        return 0.0
    p = rec.params
    ln_pref = (math.lgamma(k + 1.0) - math.lgamma(n + 1.0) - math.lgamma(k - n + 1.0)
               - n * math.log(2.0) - 0.5 * _ln_h(p.alpha, p.beta, n))
    if p.symmetric():
        if (k - n) % 2:
            return 0.0
        return math.exp(ln_pref + ln_beta(0.5 * (k - n + 1), n + p.alpha + 1.0))
    inner = weight_moment(WeightParams(n + p.alpha, n + p.beta), k - n)
    return math.exp(ln_pref) * inner


def fourier_jacobi_general(rec: JacobiRecurrence, k: int, x: float) -> complex:
    """Weighted finite Fourier transform of the classical P_k at frequency x (Kummer form)."""
    al, be = rec.params.alpha, rec.params.beta
    if x == 0.0:
        if k > 0:
            return 0j
        return complex(math.exp((al + be + 1.0) * math.log(2.0) + ln_beta(al + 1.0, be + 1.0)))
    ln_mag = (k * math.log(abs(x)) - math.lgamma(k + 1.0) + (k + al + be + 1.0) * math.log(2.0)
              + ln_beta(k + al + 1.0, k + be + 1.0))
    phase = (1j) ** k * (1.0 if x > 0 or k % 2 == 0 else -1.0) * complex(math.cos(x), math.sin(x))
    m = kummer_1f1_imag(k + al + 1.0, 2 * k + al + be + 2.0, -2.0 * x)
    return math.exp(ln_mag) * phase * m


def fourier_jacobi_symmetric(alpha: float, k: int, x: float) -> complex:
    """Same transform for alpha == beta, in closed Bessel form."""
    nu = k + alpha + 0.5
    mag = math.exp(0.5 * math.log(math.pi) + (alpha + 0.5) * math.log(2.0)
                   + math.lgamma(k + alpha + 1.0) - math.lgamma(k + 1.0))
    return (1j) ** k * mag * x**k * bessel_j_scaled(nu, x)
