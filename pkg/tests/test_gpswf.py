import math
from types import SimpleNamespace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from prolate.eigensystem import build_matrix, solve
from prolate.gpswf import (
    MU_FLOOR,
    Gpswf,
    apply_fourier,
    build_gpswfs,
    compute_lambda,
    compute_mu,
    derivatives_at_zero,
    eval_any,
    eval_extended,
    eval_inside,
    kernel_K,
    log_mu_asymptotic,
    make_gpswf,
    mu_from_origin,
)
from prolate.specfun import WeightParams

C5 = 5 * math.pi


@pytest.fixture(scope="module")
def example_basis():
    return build_gpswfs(0.5, C5, 40, 90)


def _scipy_rule(alpha, size):
    x, w = special.roots_jacobi(size, alpha, alpha)
    return SimpleNamespace(nodes=x, weights=w)


# ---------------------------------------------------------------- inside

def test_parity_and_normalization(example_basis):
    rule = _scipy_rule(0.5, 150)
    x = np.linspace(0.0, 1.0, 23)
    for psi in example_basis[:20]:
        assert np.allclose(eval_inside(psi, -x), (-1) ** psi.n * eval_inside(psi, x), atol=1e-13)
        assert np.sum(rule.weights * eval_inside(psi, rule.nodes) ** 2) == pytest.approx(1.0, abs=1e-12)


def test_small_bandwidth_constant():
    pair = solve(build_matrix(WeightParams(0.0), 1e-6, 30), 3)[0]
    assert np.allclose(eval_inside(pair, np.linspace(-1, 1, 9)), 1 / math.sqrt(2), atol=1e-10)


def test_eval_inside_range_check(example_basis):
    with pytest.raises(ValueError):
        eval_inside(example_basis[0], 1.01)
    assert isinstance(example_basis[0](0.3), float)


def test_derivatives_at_zero_match_finite_differences(example_basis):
    pair = example_basis[6].pair
    d = derivatives_at_zero(pair, 2)
    h = 1e-4
    fd2 = (eval_inside(pair, h) - 2 * eval_inside(pair, 0.0) + eval_inside(pair, -h)) / h**2
    assert d[0] == pytest.approx(eval_inside(pair, 0.0), rel=1e-13)
    assert d[2] == pytest.approx(fd2, rel=1e-6)


# ---------------------------------------------------------------- mu and lambda

def test_mu_rayleigh_quotient_oracle(example_basis):
    # double Gauss-Jacobi quadrature of the kernel projected on psi_0
    assert example_basis[0].mu_abs == pytest.approx(0.6219497510182077, rel=1e-12)
    rule = _scipy_rule(0.5, 150)
    for psi in example_basis[:12]:
        v = rule.weights * eval_inside(psi, rule.nodes)
        kern = np.exp(1j * C5 * np.outer(rule.nodes, rule.nodes))
        mu = v @ kern @ v
        assert abs(mu - psi.mu) < 1e-10


def test_mu_phase_and_lambda(example_basis):
    lams = [psi.lam for psi in example_basis]
    for psi in example_basis:
        assert psi.mu_phase == psi.n % 4
        assert 0.0 < psi.lam < 1.0
        assert psi.lam == pytest.approx(C5 / (2 * math.pi) * psi.mu_abs**2, rel=1e-14)
    assert all(np.diff(lams) < 0)
    assert compute_lambda(0.0, 3.0) == 0.0


def test_mu_routes_agree(example_basis):
    for psi in example_basis[:25]:
        boundary, phase = compute_mu(psi.pair, method="boundary")
        origin = mu_from_origin(psi.pair)
        assert phase == psi.n % 4
        assert abs(origin - psi.mu) <= 1e-9 * psi.mu_abs
        if psi.n >= 8:
            assert boundary == pytest.approx(psi.mu_abs, rel=1e-8)
    with pytest.raises(ValueError):
        compute_mu(example_basis[0].pair, method="magic")


def test_mu_needs_symmetric_weight():
    pair = solve(build_matrix(WeightParams(0.3, 0.6), 3.0, 30), 2)[0]
    with pytest.raises(ValueError):
        compute_mu(pair)


@pytest.mark.parametrize("alpha,c", [(0.0, 5 * math.pi), (0.5, 10 * math.pi), (1.5, 5 * math.pi)])
def test_hilbert_schmidt_and_lambda_sum(alpha, c):
    n_max = math.ceil(2 * c / math.pi) + 40
    basis = build_gpswfs(alpha, c, n_max)
    target = math.pi * math.gamma(1 + alpha) ** 2 / math.gamma(alpha + 1.5) ** 2
    total = sum(psi.mu_abs**2 for psi in basis)
    assert total == pytest.approx(target, abs=1e-8)
    assert sum(psi.lam for psi in basis) == pytest.approx(c / (2 * math.pi) * target, abs=1e-7)


def test_mu_strictly_decreasing_away_from_one():
    for alpha, c in ((0.0, 10 * math.pi), (1.0, 5 * math.pi)):
        basis = build_gpswfs(alpha, c, 50)
        for a, b in zip(basis, basis[1:]):
            if 1.0 - a.lam > 1e-10:
                assert b.mu_abs < a.mu_abs
            else:
                # both are 1 to rounding: only agreement is meaningful
                assert b.log_mu_abs < a.log_mu_abs + 1e-12


def test_asymptotic_decay_shape(example_basis):
    start = math.ceil(2 * C5 / math.pi + 10)
    for psi in example_basis[start:]:
        ratio = math.exp(psi.log_mu_abs - log_mu_asymptotic(0.5, C5, psi.n))
        assert 0.1 <= ratio <= 10.0


def test_eigen_equation_residual(example_basis):
    rule = _scipy_rule(0.5, 150)
    x = np.linspace(-1, 1, 41)
    for psi in example_basis[: math.ceil(2 * C5 / math.pi) + 6]:
        lhs = np.array([apply_fourier(psi, xi, rule) for xi in x])
        rhs = psi.mu * eval_inside(psi, x)
        assert np.abs(lhs - rhs).max() <= 1e-8 * (1 + psi.mu_abs)
        if psi.n % 2:
            assert abs(apply_fourier(psi, 0.0, rule)) < 1e-14
        assert abs(apply_fourier(psi, -0.3, rule)) == pytest.approx(abs(apply_fourier(psi, 0.3, rule)))


# ---------------------------------------------------------------- extension

def test_extension_continuity_and_parity(example_basis):
    for psi in example_basis[:16]:
        for x in (0.5, 0.9, 1.0):
            assert abs(eval_extended(psi, x) - eval_inside(psi, x)) <= 1e-9
        xs = np.array([1.3, 2.0, 3.0])
        assert np.allclose(eval_extended(psi, -xs), (-1) ** psi.n * eval_extended(psi, xs), atol=1e-14)


def test_extension_matches_direct_transform(example_basis):
    rule = _scipy_rule(0.5, 200)
    for psi in (example_basis[0], example_basis[5], example_basis[15]):
        direct = apply_fourier(psi, 2.0, rule) / psi.mu
        assert abs(direct.imag) < 1e-12
        assert eval_extended(psi, 2.0) == pytest.approx(direct.real, rel=1e-9, abs=1e-12)


def test_extension_errors(example_basis):
    with pytest.raises(ValueError):
        eval_extended(example_basis[0], 0.0)
    tiny = Gpswf(example_basis[0].pair, MU_FLOOR / 10, 0, 0.0, math.log(MU_FLOOR / 10))
    with pytest.raises(ArithmeticError):
        eval_extended(tiny, 2.0)


def test_eval_any_dispatch(example_basis):
    psi = example_basis[3]
    x = np.array([-2.0, -0.5, 0.0, 0.7, 1.5])
    got = eval_any(psi, x)
    assert got[2] == pytest.approx(eval_inside(psi, 0.0))
    assert got[4] == pytest.approx(eval_extended(psi, 1.5))


# ---------------------------------------------------------------- kernel

@given(st.floats(min_value=-50.0, max_value=50.0))
def test_kernel_reduces_to_sinc(x):
    expected = 2.0 if x == 0 else 2 * math.sin(x) / x
    assert kernel_K(0.0, x) == pytest.approx(expected, rel=1e-12, abs=1e-14)


@settings(max_examples=20)
@given(st.floats(min_value=-0.9, max_value=4.0))
def test_kernel_at_zero(alpha):
    expected = math.sqrt(math.pi) * math.gamma(alpha + 1) / math.gamma(alpha + 1.5)
    assert kernel_K(alpha, 0.0) == pytest.approx(expected, rel=1e-13)


def test_kernel_quadrature_oracle():
    # adaptive quadrature of the weighted cosine integral
    assert kernel_K(0.5, 2.0) == pytest.approx(0.9059172095959896, rel=1e-13)
    with pytest.raises(ValueError):
        kernel_K(-1.0, 1.0)


def test_make_gpswf_keeps_log_scale():
    basis = build_gpswfs(0.0, 2.0, 60)
    last = basis[-1]
    assert last.mu_abs == pytest.approx(math.exp(last.log_mu_abs))
    assert last.log_mu_abs < math.log(1e-50)
    assert make_gpswf(last.pair).mu_phase == 60 % 4
