"""Executable checks of the known bounds and identities for computed GPSWFs.

Every check returns a :class:`BoundReport`. Bounds whose hypotheses fail
(typically ``q = c^2/chi >= 1``) are reported as ``not_applicable`` rather
than as violations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from prolate.approx import gauss_jacobi
from prolate.eigensystem import EigenPair, symmetry_map
from prolate.gpswf import (
    Gpswf,
    _series,
    build_gpswfs,
    derivatives_at_zero,
    make_gpswf,
    recurrence_for,
)
from prolate.specfun import jacobi_moment

SLACK = 1e-12
SATISFIED, VIOLATED, NOT_APPLICABLE = "satisfied", "violated", "not_applicable"


@dataclass
class BoundReport:
    name: str
    parameters: dict
    lhs: float
    rhs: float
    status: str = ""
    note: str = ""

    def __post_init__(self):
        if not self.status:
            ok = self.lhs <= self.rhs * (1.0 + SLACK) if self.rhs >= 0 else self.lhs <= self.rhs
            self.status = SATISFIED if ok else VIOLATED

    @property
    def satisfied(self) -> bool:
        return self.status == SATISFIED

    @property
    def applicable(self) -> bool:
        return self.status != NOT_APPLICABLE

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    def to_dict(self) -> dict:
        return {"name": self.name, "parameters": dict(self.parameters), "lhs": self.lhs,
                "rhs": self.rhs, "margin": self.margin, "status": self.status,
                "satisfied": self.satisfied, "note": self.note}


def _not_applicable(name: str, params: dict, note: str) -> BoundReport:
    return BoundReport(name, params, math.nan, math.nan, NOT_APPLICABLE, note)


def _params(pair: EigenPair, **extra) -> dict:
    out = {"alpha": pair.params.alpha, "beta": pair.params.beta, "c": pair.c, "n": pair.n}
    out.update(extra)
    return out


@dataclass(frozen=True)
class AppendixConstants:
    """Constants of the coefficient positivity and second decay bound."""

    alpha: float
    M_alpha: float = field(init=False)
    N_alpha: float = field(init=False)
    C_alpha: float = field(init=False)

    def __post_init__(self):
        a = self.alpha
        m = max(0.25, math.sqrt(2 * (2 * a + 2) / ((2 * a + 5) * (2 * a + 3) ** 2)))
        nn = max(3.0 / (2 * a + 5), 0.5 + abs(4 * a * a - 1) / ((2 * a + 3) * (2 * a + 7)))
        object.__setattr__(self, "M_alpha", m)
        object.__setattr__(self, "N_alpha", nn)
        object.__setattr__(self, "C_alpha", 2 * m + nn)


def _pair_and_mu(psi) -> tuple[EigenPair, Gpswf | None]:
    if isinstance(psi, Gpswf):
        return psi.pair, psi
    if psi.params.symmetric():
        return psi, make_gpswf(psi)
    return psi, None


def _derivative(pair: EigenPair, t: np.ndarray, h: float = 1e-5) -> np.ndarray:
    # Central differences with one Richardson step; the series is smooth past |t| = 1.
    def central(step):
        return (_series(pair, t + step) - _series(pair, t - step)) / (2.0 * step)
    return (4.0 * central(h / 2.0) - central(h)) / 3.0


def local_energy(pair: EigenPair, t) -> np.ndarray:
    """(1-t^2) w(t) [psi^2 + (1-t^2) psi'^2 / ((1 - q t^2) chi)]."""
    t = np.asarray(t, dtype=float)
    al, be = pair.params.alpha, pair.params.beta
    q = pair.q
    psi = _series(pair, t)
    dpsi = _derivative(pair, t)
    edge = (np.clip(1.0 - t, 0.0, None) ** (1.0 + al)) * (np.clip(1.0 + t, 0.0, None) ** (1.0 + be))
    return edge * (psi**2 + (1.0 - t * t) * dpsi**2 / ((1.0 - q * t * t) * pair.chi))


def check_local_estimate(pair, grid=None) -> BoundReport:
    """Weighted energy bound 2(1+max(alpha,beta)) on [0, 1]; 1+alpha on [-1, 1] if alpha == beta.

    For beta > alpha the bound is checked on the mirrored half [-1, 0].
    """
    pair, _ = _pair_and_mu(pair)
    al, be = pair.params.alpha, pair.params.beta
    name = "local_estimate"
    if pair.q >= 1.0:
        return _not_applicable(name, _params(pair, q=pair.q), "q >= 1")
    if al + be + 1.0 < 0.0:
        return _not_applicable(name, _params(pair), "alpha + beta + 1 < 0")
    grid = np.linspace(0.0, 1.0, 201) if grid is None else np.asarray(grid, dtype=float)
    half = np.abs(grid[(grid >= 0.0) & (grid <= 1.0)]) if pair.params.symmetric() else grid
    if pair.params.symmetric():
        full = np.concatenate((-half, half))
        lhs = float(np.max(local_energy(pair, full)))
        return BoundReport(name, _params(pair, q=pair.q, interval="[-1,1]"), lhs, 1.0 + al)
    half = grid[(grid >= 0.0) & (grid <= 1.0)]
    pts = half if al >= be else -half
    lhs = float(np.max(local_energy(pair, pts)))
    side = "[0,1]" if al >= be else "[-1,0]"
    return BoundReport(name, _params(pair, q=pair.q, interval=side), lhs, 2.0 * (1.0 + max(al, be)))


def sup_bound_constant(alpha: float, symmetric: bool) -> float:
    """Constant C with |psi(1)| <= C chi^((1+alpha)/2), as obtained from the local estimate."""
    g = 0.5 * (1.0 + alpha)
    const = 2.0 ** (1.0 + max(alpha, 0.0)) * math.sqrt(1.0 + alpha) * (1.0 + g) ** (1.0 + g) / g**g
    return const / math.sqrt(2.0) if symmetric else const


def printed_sup_constant(alpha: float) -> float:
    """The literature form of the constant; it fails already for n = 1, small c."""
    return 2.0 ** (1.0 + max(alpha, 0.0)) / math.sqrt(3.0 + alpha) * ((1.0 + alpha) / (3.0 + alpha)) ** (1.0 + alpha / 2.0)


def check_sup_bound(pair, points: int = 2001) -> BoundReport:
    """|psi| peaks at the endpoint and |psi(1)| <= C chi^((1+alpha)/2)."""
    pair, _ = _pair_and_mu(pair)
    al, be = pair.params.alpha, pair.params.beta
    name = "sup_bound"
    if pair.q > 1.0:
        return _not_applicable(name, _params(pair, q=pair.q), "q > 1")
    if al + be < -1.0:
        return _not_applicable(name, _params(pair), "alpha + beta < -1")
    a, b = (al, be) if al >= be else (be, al)
    end = 1.0 if al >= be else -1.0
    x = np.linspace(0.0, end, points)
    vals = np.abs(_series(pair, x))
    at_end = vals[-1]
    peak_at_end = bool(np.max(vals) <= at_end * (1.0 + 1e-12))
    const = sup_bound_constant(a, pair.params.symmetric())
    rhs = const * pair.chi ** ((1.0 + a) / 2.0)
    params = _params(pair, q=pair.q, peak_at_endpoint=peak_at_end, constant=const)
    if not peak_at_end:
        return BoundReport(name, params, float(np.max(vals)), rhs, VIOLATED, "maximum not at the endpoint")
    return BoundReport(name, params, float(at_end), rhs)


def kummer_decay_constant(alpha: float) -> float:
    return (math.pi ** 1.75 * math.sqrt(math.gamma(1 + alpha)) * 1.5**0.75
            * (1.5 + 2 * alpha) ** (0.75 + alpha) / (2.0 ** (alpha + 1) * math.exp(alpha + 1.25)))


def check_coeff_decay_kummer(psi, corrected: bool = False) -> BoundReport:
    """|beta_k| <= (C/|mu|) k^-(1+alpha/2) 2^-k (ec/(2k+1))^k for k >= 1.

    Reported as the largest ratio |beta_k| / bound_k against 1. With
    ``corrected=True`` the bound is the one that follows from the sharp
    Stirling estimate c^k/k! <= sqrt(3e/pi) 2^k (ec/(2k+1))^k / sqrt(2(2k+1)),
    i.e. without the 2^-k gain and with an extra factor sqrt(3e/pi).
    """
    pair, g = _pair_and_mu(psi)
    name = "coeff_decay_kummer_corrected" if corrected else "coeff_decay_kummer"
    if g is None:
        return _not_applicable(name, _params(pair), "needs alpha == beta")
    al, c = pair.params.alpha, pair.c
    if 1.5 + 2 * al <= 0:
        return _not_applicable(name, _params(pair), "constant undefined for alpha <= -3/4")
    log_c = math.log(kummer_decay_constant(al))
    gain = 0.0 if corrected else math.log(2.0)
    if corrected:
        log_c += 0.5 * math.log(3 * math.e / math.pi)
    worst, worst_k = 0.0, 0
    for k in range(1, pair.coeffs.size):
        b = abs(pair.coeffs[k])
        if b == 0.0:
            continue
        log_bound = (log_c - g.log_mu_abs - (1 + al / 2) * math.log(k) - k * gain
                     + k * math.log(math.e * c / (2 * k + 1)))
        ratio = math.exp(math.log(b) - log_bound)
        if ratio > worst:
            worst, worst_k = ratio, k
    return BoundReport(name, _params(pair, worst_k=worst_k), worst, 1.0)


def admissible_k(pair: EigenPair, constants: AppendixConstants) -> list[int]:
    al, c = pair.params.alpha, pair.c
    return [k for k in range(pair.coeffs.size)
            if k * (k + 2 * al + 1) + constants.C_alpha * c * c <= pair.chi]


def _positive_orientation(pair: EigenPair) -> np.ndarray:
    """Coefficients signed so that beta_0 (even n) or beta_1 (odd n) is nonnegative."""
    lead = pair.coeffs[pair.n % 2]
    return -pair.coeffs if lead < 0 else pair.coeffs


def check_coeff_positivity_and_decay2(psi, constants: AppendixConstants | None = None) -> BoundReport:
    """Positivity and geometric decay of beta_k over the admissible range of k.

    Reported as the worst ratio against 1, over three conditions: beta_k >= -1e-12,
    |beta_0| <= sqrt(G(a+3/2)/(sqrt(pi) G(a+1))) sqrt(1+a) |mu| and
    |beta_k| <= C' (2/q)^k |mu|.
    """
    pair, g = _pair_and_mu(psi)
    name = "coeff_positivity_decay2"
    if g is None:
        return _not_applicable(name, _params(pair), "needs alpha == beta")
    al = pair.params.alpha
    constants = constants or AppendixConstants(al)
    if pair.q > 1.0:
        return _not_applicable(name, _params(pair, q=pair.q), "q > 1")
    ks = [k for k in admissible_k(pair, constants) if k % 2 == pair.n % 2]
    if not ks:
        return _not_applicable(name, _params(pair, q=pair.q), "no admissible k")
    beta = _positive_orientation(pair)
    c0 = math.sqrt(math.gamma(al + 1.5) / (math.sqrt(math.pi) * math.gamma(al + 1.0))) * math.sqrt(1 + al)
    c1 = (2.0**al * 1.5**0.75 * (1.5 + 2 * al) ** (0.75 + al) / math.exp(2 * al + 1.5)
          * math.sqrt(1 + al))
    worst = 0.0
    negative = [k for k in ks if beta[k] < -1e-12]
    for k in ks:
        log_b = math.log(abs(beta[k])) if beta[k] != 0 else -math.inf
        if k == 0:
            worst = max(worst, math.exp(log_b - math.log(c0) - g.log_mu_abs))
        else:
            log_rhs = math.log(c1) + k * math.log(2.0 / pair.q) + g.log_mu_abs
            worst = max(worst, math.exp(log_b - log_rhs))
    params = _params(pair, q=pair.q, k_max=max(ks), negative=negative)
    if negative:
        return BoundReport(name, params, worst, 1.0, VIOLATED, "negative coefficient")
    return BoundReport(name, params, worst, 1.0)


def psi_derivative_magnitudes(pair, k_max: int) -> np.ndarray:
    """m_k = |psi^(k)(0)| / chi^(k/2) for k = n%2, n%2+2, ..., <= k_max, by the ODE recursion."""
    pair, _ = _pair_and_mu(pair)
    al, chi, c = pair.params.alpha, pair.chi, pair.c
    if not pair.params.symmetric():
        raise ValueError("needs alpha == beta")
    if k_max * (k_max + 2 * al + 1) > chi:
        raise ValueError(f"k_max={k_max} violates k(k+2 alpha+1) <= chi={chi:.6g}")
    p = pair.n % 2
    d = derivatives_at_zero(pair, 1)
    m = {p: abs(d[p]) / chi ** (p / 2.0)}
    if p == 0:
        m[-2] = 0.0
    else:
        m[-1] = 0.0
    k = p
    while k + 2 <= k_max:
        m[k + 2] = (1.0 - k * (k + 2 * al + 1) / chi) * m[k] + k * (k - 1) * (c * c / chi**2) * m[k - 2]
        k += 2
    return np.array([m[j] for j in range(p, k_max + 1, 2)])


def derivative_signs_alternate(pair: EigenPair, k_max: int) -> bool:
    """psi^(k)(0) psi^(k+2)(0) < 0 along the parity class, from the differentiated series."""
    d = derivatives_at_zero(pair, k_max)
    seq = d[pair.n % 2 :: 2]
    return bool(np.all(seq[:-1] * seq[1:] < 0))


def max_derivative_order(pair: EigenPair) -> int:
    al = pair.params.alpha
    k = 0
    while (k + 1) * (k + 2 + 2 * al) <= pair.chi:
        k += 1
    return k


def check_derivative_magnitudes(pair) -> BoundReport:
    pair, _ = _pair_and_mu(pair)
    name = "derivative_magnitudes"
    if not pair.params.symmetric():
        return _not_applicable(name, _params(pair), "needs alpha == beta")
    if pair.q >= 1.0:
        return _not_applicable(name, _params(pair, q=pair.q), "q >= 1")
    k_max = max_derivative_order(pair)
    m = psi_derivative_magnitudes(pair, k_max)
    return BoundReport(name, _params(pair, k_max=k_max), float(np.max(m)),
                       math.sqrt(1.0 + pair.params.alpha))


def psi_moments(psi, j_max: int, quad=None) -> tuple[np.ndarray, np.ndarray]:
    """Moments int y^j psi w dy, j = 0..j_max, by quadrature and by the derivative identity.

    Both are returned signed so that the leading coefficient is nonnegative.
    """
    pair, g = _pair_and_mu(psi)
    if g is None:
        raise ValueError("needs alpha == beta")
    al = pair.params.alpha
    if j_max * (j_max + 2 * al + 1) > pair.chi:
        raise ValueError(f"j_max={j_max} violates j(j+2 alpha+1) <= chi")
    orient = 1.0 if pair.coeffs[pair.n % 2] >= 0 else -1.0
    quad = quad or gauss_jacobi(al, pair.truncation + 20)
    vals = _series(pair, quad.nodes) * orient
    by_quad = np.array([np.dot(quad.weights, quad.nodes**j * vals) for j in range(j_max + 1)])
    d = derivatives_at_zero(pair, j_max) * orient
    by_identity = np.array([((-1j) ** j * g.mu * d[j] / pair.c**j).real for j in range(j_max + 1)])
    return by_quad, by_identity


def moments_from_coeffs(pair: EigenPair, j_max: int) -> np.ndarray:
    """Moments as sum_k M_{j,k} beta_k from the closed-form Jacobi moments."""
    rec = recurrence_for(pair.params, pair.truncation + 1)
    orient = 1.0 if pair.coeffs[pair.n % 2] >= 0 else -1.0
    return np.array([orient * sum(jacobi_moment(rec, j, k) * pair.coeffs[k] for k in range(j + 1))
                     for j in range(j_max + 1)])


def check_psi_moments(psi) -> BoundReport:
    """0 <= int y^j psi w <= sqrt(1+alpha) q^-j |mu| for the admissible j."""
    pair, g = _pair_and_mu(psi)
    name = "psi_moments"
    if g is None:
        return _not_applicable(name, _params(pair), "needs alpha == beta")
    if pair.q >= 1.0:
        return _not_applicable(name, _params(pair, q=pair.q), "q >= 1")
    j_max = max_derivative_order(pair)
    by_identity = moments_from_coeffs(pair, j_max)
    al = pair.params.alpha
    worst = 0.0
    negative = []
    for j in range(pair.n % 2, j_max + 1, 2):
        m = by_identity[j]
        if m < -1e-12 * math.exp(g.log_mu_abs):
            negative.append(j)
        log_rhs = 0.5 * math.log(1 + al) - j * math.log(pair.q) + g.log_mu_abs
        if m != 0:
            worst = max(worst, math.exp(math.log(abs(m)) - log_rhs))
    params = _params(pair, j_max=j_max, negative=negative)
    if negative:
        return BoundReport(name, params, worst, 1.0, VIOLATED, "negative moment")
    return BoundReport(name, params, worst, 1.0)


def check_chi_bounds(pair) -> BoundReport:
    """n(n+a+b+1) <= chi <= n(n+a+b+1) + c^2, reported as max(lo/chi, chi/hi) against 1."""
    pair, _ = _pair_and_mu(pair)
    base = pair.n * (pair.n + pair.params.alpha + pair.params.beta + 1.0)
    hi = base + pair.c**2
    lhs = max(base / pair.chi, pair.chi / hi)
    return BoundReport("chi_bounds", _params(pair, chi=pair.chi), lhs, 1.0)


def check_symmetry(pair: EigenPair, points: int = 101) -> BoundReport:
    """psi_(a,b)(-x) - (-1)^n psi_(b,a)(x) on a grid, using the mirrored eigenpair."""
    mirrored = symmetry_map(pair)
    x = np.linspace(-1.0, 1.0, points)
    lhs = float(np.max(np.abs(_series(pair, -x) - (-1) ** pair.n * _series(mirrored, x))))
    return BoundReport("symmetry", _params(pair), lhs, 1e-9)


def spectrum(alpha: float, c: float, n_max: int) -> list[Gpswf]:
    return build_gpswfs(alpha, c, n_max)


def check_lambda_monotonicity(c: float, alphas, n_max: int, spectra: dict | None = None) -> BoundReport:
    """lambda_n decreases in alpha: worst ratio lambda^(a)/lambda^(a') over adjacent a > a'."""
    alphas = list(alphas)
    if any(a < 0 for a in alphas) or alphas != sorted(alphas):
        raise ValueError("alphas must be nonnegative and ascending")
    params = {"c": c, "alphas": alphas, "n_max": n_max}
    if len(alphas) < 2:
        return BoundReport("lambda_monotonicity", params, 1.0, 1.0 + 1e-10)
    spectra = spectra or {}
    logs = {}
    for a in alphas:
        basis = spectra.get(a) or spectrum(a, c, n_max)
        logs[a] = np.array([2 * g.log_mu_abs for g in basis[: n_max + 1]])
    worst = -math.inf
    for lo, hi in zip(alphas[:-1], alphas[1:]):
        worst = max(worst, float(np.max(logs[hi] - logs[lo])))
    return BoundReport("lambda_monotonicity", params, math.exp(worst), 1.0 + 1e-10)


def hs_target(alpha: float) -> float:
    return math.pi * math.gamma(1 + alpha) ** 2 / math.gamma(alpha + 1.5) ** 2


def check_hs_identity(mu_abs, alpha: float, tol: float = 1e-8) -> BoundReport:
    """sum |mu_n|^2 against pi Gamma(1+a)^2 / Gamma(a+3/2)^2."""
    mu_abs = np.asarray(mu_abs, dtype=float)
    if mu_abs[-1] ** 2 > 1e-20:
        raise ValueError("spectrum too short: last |mu|^2 exceeds 1e-20")
    total = float(np.sum(mu_abs**2))
    target = hs_target(alpha)
    return BoundReport("hs_identity", {"alpha": alpha, "terms": int(mu_abs.size), "sum": total,
                                       "target": target}, abs(total - target), tol)


STANDARD_ALPHAS = (0.0, 0.5, 1.0, 1.5)
STANDARD_CS = (5 * math.pi, 10 * math.pi)
SUITES = ("chi", "local", "sup", "kummer", "kummer_corrected", "decay2", "derivatives", "moments", "hs", "monotonicity")


def hs_length(c: float) -> int:
    return math.ceil(2 * c / math.pi) + 40


def run_standard_matrix(alphas=STANDARD_ALPHAS, cs=STANDARD_CS, suites=SUITES) -> list[BoundReport]:
    """All checks over the standard (alpha, c) matrix, n <= ceil(2c/pi) + 10."""
    reports = []
    unknown = set(suites) - set(SUITES)
    if unknown:
        raise ValueError(f"unknown suites {sorted(unknown)}")
    per_n = {
        "chi": check_chi_bounds, "local": check_local_estimate, "sup": check_sup_bound,
        "kummer": check_coeff_decay_kummer,
        "kummer_corrected": lambda g: check_coeff_decay_kummer(g, corrected=True),
        "decay2": check_coeff_positivity_and_decay2,
        "derivatives": check_derivative_magnitudes, "moments": check_psi_moments,
    }
    for c in cs:
        n_top = math.ceil(2 * c / math.pi) + 10
        spectra = {}
        for a in alphas:
            basis = build_gpswfs(a, c, hs_length(c))
            spectra[a] = basis
            for g in basis[: n_top + 1]:
                for key, fn in per_n.items():
                    if key in suites:
                        reports.append(fn(g))
            if "hs" in suites:
                reports.append(check_hs_identity([g.mu_abs for g in basis], a))
        if "monotonicity" in suites:
            mono_alphas = sorted(a for a in alphas if a >= 0)
            reports.append(check_lambda_monotonicity(c, mono_alphas, n_top, spectra))
    return reports
