"""Acceptance criteria, one test each; a PASS/FAIL line per criterion is printed at the end."""
import math
import time

import numpy as np
import pytest
from scipy import special

from prolate.approx import error_report, sinc_fn
from prolate.eigensystem import build_matrix, solve, symmetry_map
from prolate.gpswf import apply_fourier, build_gpswfs, eval_inside, log_mu_asymptotic
from prolate.specfun import WeightParams
from prolate.verify import (
    STANDARD_ALPHAS,
    STANDARD_CS,
    check_chi_bounds,
    check_coeff_decay_kummer,
    check_coeff_positivity_and_decay2,
    check_derivative_magnitudes,
    check_hs_identity,
    check_lambda_monotonicity,
    check_local_estimate,
    check_psi_moments,
    check_sup_bound,
    hs_length,
    max_derivative_order,
    psi_moments,
)

RESULTS: dict[int, tuple[bool, str]] = {}
TITLES = {
    1: "sinc approximation errors",
    2: "lambda decreasing in alpha",
    3: "plunge location",
    4: "Hilbert-Schmidt identity",
    5: "eigen-equation residual",
    6: "chi bounds",
    7: "bound-oracle suite",
    8: "classical limit vs dense solve",
    9: "reflection symmetry",
    10: "asymptotic decay of |mu|",
}


def record(number: int, ok: bool, detail: str) -> None:
    RESULTS[number] = (bool(ok), detail)
    assert ok, f"criterion {number} ({TITLES[number]}): {detail}"


def summary_lines() -> list[str]:
    lines = []
    for k in sorted(TITLES):
        if k in RESULTS:
            ok, detail = RESULTS[k]
            lines.append(f"criterion {k:2d} {'PASS' if ok else 'FAIL'}  {TITLES[k]}: {detail}")
        else:
            lines.append(f"criterion {k:2d} FAIL  {TITLES[k]}: not run or errored")
    return lines


def _basis(alpha, c):
    return build_gpswfs(alpha, c, hs_length(c))


@pytest.fixture(scope="module")
def standard_bases():
    return {(a, c): _basis(a, c) for a in STANDARD_ALPHAS for c in STANDARD_CS}


def _scipy_rule(alpha, size):
    return special.roots_jacobi(size, alpha, alpha)


# ---------------------------------------------------------------------------

def test_criterion_01_sinc_example():
    start = time.perf_counter()
    basis = build_gpswfs(0.5, 50.0, 40)
    norm = math.sqrt(math.pi / 50.0)
    errs = {N: error_report(sinc_fn(50.0), 50.0, 0.5, N, norm, basis=basis).sup_error for N in (32, 40)}
    elapsed = time.perf_counter() - start
    ok = (abs(errs[32] / 2.22e-2 - 1) <= 0.1 and abs(errs[40] / 4.80e-6 - 1) <= 0.1 and elapsed < 10)
    record(1, ok, f"N=32 {errs[32]:.4e}, N=40 {errs[40]:.4e}, {elapsed:.1f} s")


def test_criterion_02_lambda_monotonicity():
    start = time.perf_counter()
    c = 10 * math.pi
    report = check_lambda_monotonicity(c, [0.0, 0.5, 1.5], 60)
    elapsed = time.perf_counter() - start
    record(2, report.lhs <= 1 + 1e-10 and elapsed < 30,
           f"max lambda ratio over adjacent alphas {report.lhs:.6f}, {elapsed:.1f} s")


def test_criterion_03_plunge():
    c = 10 * math.pi
    basis = build_gpswfs(0.0, c, 40)
    n_c = 2 * c / math.pi
    first = next(g.n for g in basis if g.lam < 0.5)
    record(3, n_c - 3 <= first <= n_c + 3, f"first n with lambda < 1/2 is {first}, n_c = {n_c:.1f}")


def test_criterion_04_hilbert_schmidt(standard_bases):
    worst = 0.0
    for alpha in (0.0, 0.5, 1.5):
        for c in STANDARD_CS:
            r = check_hs_identity([g.mu_abs for g in standard_bases[(alpha, c)]], alpha)
            worst = max(worst, r.lhs)
    record(4, worst <= 1e-8, f"worst |sum - target| = {worst:.2e}")


def test_criterion_05_residual():
    alpha, c = 0.5, 5 * math.pi
    n_top = math.ceil(2 * c / math.pi) + 5
    basis = build_gpswfs(alpha, c, n_top)
    y, w = _scipy_rule(alpha, 200)
    quad = type("Rule", (), {"nodes": y, "weights": w})
    x = np.linspace(-1, 1, 101)
    worst = 0.0
    for psi in basis:
        lhs = np.array([apply_fourier(psi, xi, quad) for xi in x])
        worst = max(worst, float(np.abs(lhs - psi.mu * eval_inside(psi, x)).max()))
    record(5, worst <= 1e-8, f"sup residual {worst:.2e} for n <= {n_top}")


def test_criterion_06_chi_bounds(standard_bases):
    reports = [check_chi_bounds(g) for basis in standard_bases.values() for g in basis]
    general = solve(build_matrix(WeightParams(0.3, 0.6), 5 * math.pi, 80), 30)
    reports += [check_chi_bounds(p) for p in general]
    bad = [r for r in reports if not r.satisfied]
    record(6, not bad, f"{len(reports)} pairs checked, {len(bad)} outside the bounds")


def test_criterion_07_bound_oracles(standard_bases):
    checks = {
        "local_estimate": check_local_estimate,
        "sup_bound": check_sup_bound,
        "coeff_decay_kummer": check_coeff_decay_kummer,
        "coeff_positivity_decay2": check_coeff_positivity_and_decay2,
        "derivative_magnitudes": check_derivative_magnitudes,
        "psi_moments": check_psi_moments,
    }
    counts = {name: [0, 0, 0] for name in checks}
    moment_gap = 0.0
    for (alpha, c), basis in standard_bases.items():
        for g in basis[: math.ceil(2 * c / math.pi) + 11]:
            for name, fn in checks.items():
                r = fn(g)
                counts[name][0 if r.satisfied else 1 if r.applicable else 2] += 1
            j_max = min(max_derivative_order(g.pair), 4)
            if g.pair.q < 1:
                by_quad, by_identity = psi_moments(g, j_max)
                moment_gap = max(moment_gap, float(np.max(np.abs(by_quad - by_identity))))
    failing = [name for name, (_, v, _) in counts.items() if v]
    detail = "; ".join(f"{k} {s}/{v}/{na}" for k, (s, v, na) in counts.items())
    detail += f" (satisfied/violated/n.a.); moment routes agree to {moment_gap:.1e}"
    if failing:
        detail += f"; violated: {', '.join(failing)}"
    record(7, not failing and moment_gap < 1e-9, detail)


def _legendre_matrix(c, N):
    k = np.arange(N + 1, dtype=float)
    diag = k * (k + 1) + c * c * (2 * k * (k + 1) - 1) / ((2 * k + 3) * (2 * k - 1))
    kk = k[:-2]
    off = c * c * (kk + 2) * (kk + 1) / ((2 * kk + 3) * np.sqrt((2 * kk + 1) * (2 * kk + 5)))
    return np.diag(diag) + np.diag(off, 2) + np.diag(off, -2)


def test_criterion_08_classical_limit():
    c, n_max = 5.0, 20
    basis = build_gpswfs(0.0, c, n_max)
    N = 2 * basis[0].pair.truncation
    evals, vecs = np.linalg.eigh(_legendre_matrix(c, N))
    x, w = special.roots_legendre(120)
    table = np.array([special.eval_legendre(k, x) * math.sqrt(k + 0.5) for k in range(N + 1)])
    kern = np.exp(1j * c * np.outer(x, x))
    chi_gap = lam_gap = 0.0
    for g in basis:
        v = w * (vecs[:, g.n] @ table)
        lam = c / (2 * math.pi) * abs(v @ kern @ v) ** 2
        chi_gap = max(chi_gap, abs(evals[g.n] - g.chi) / g.chi)
        lam_gap = max(lam_gap, abs(lam - g.lam))
    record(8, chi_gap <= 1e-10 and lam_gap <= 1e-10,
           f"chi rel. gap {chi_gap:.1e}, lambda gap {lam_gap:.1e} (dense N={N})")


def test_criterion_09_symmetry():
    p = WeightParams(0.3, 0.6)
    c = 5.0
    pairs = solve(build_matrix(p, c, 60), 10)
    mirrored = solve(build_matrix(p.swapped(), c, 60), 10)
    x = np.linspace(-1, 1, 101)
    mapped_gap = solved_gap = 0.0
    for a, b in zip(pairs, mirrored):
        lhs = eval_inside(a, -x)
        mapped_gap = max(mapped_gap, float(np.abs(lhs - (-1) ** a.n * eval_inside(symmetry_map(a), x)).max()))
        rhs = (-1) ** a.n * eval_inside(b, x)
        solved_gap = max(solved_gap, min(float(np.abs(lhs - rhs).max()), float(np.abs(lhs + rhs).max())))
    record(9, mapped_gap <= 1e-9 and solved_gap <= 1e-9,
           f"mapped pair {mapped_gap:.1e}, independent solve {solved_gap:.1e} (up to a global sign)")


def test_criterion_10_asymptotic_decay():
    alpha, c = 0.5, 5 * math.pi
    basis = build_gpswfs(alpha, c, 40)
    ns = range(25, 41)
    ratios = [math.exp(basis[n].log_mu_abs - log_mu_asymptotic(alpha, c, n)) for n in ns]
    logs = np.array([basis[n].log_mu_abs for n in ns])
    ok = (all(0.1 <= r <= 10 for r in ratios) and np.all(np.diff(logs) < 0) and np.all(np.diff(logs, 2) < 0))
    record(10, ok, f"ratio to asymptotic form in [{min(ratios):.3f}, {max(ratios):.3f}], "
                   f"decreasing and concave: {bool(np.all(np.diff(logs) < 0) and np.all(np.diff(logs, 2) < 0))}")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
