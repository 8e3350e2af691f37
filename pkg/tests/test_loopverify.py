from fractions import Fraction as F

import numpy as np
import pytest
from scipy.linalg import expm

from twistconj.loopverify import (TWO_PI, ExpLoop, check_equivariance, coadjoint_transform,
                                  constant_loop, convergence_order, diag_element, exp_with_derivative,
                                  fixed_subalgebra_dim, form_on_coroot, inner, j_matrix, random_su,
                                  sample_loop, simpson, solve_monodromy, tau, two_form_residual)

GRID = np.linspace(0, TWO_PI, 11)


def test_j_matrix_and_tau():
    for n in (3, 4, 5, 6):
        j = j_matrix(n)
        assert np.allclose(j @ j.T, np.eye(n))
        x = random_su(n, np.random.default_rng(n))
        assert np.allclose(tau(tau(x, 2), 2), x)
        assert np.allclose(inner(tau(x, 2), tau(x, 2)), inner(x, x))
        h = diag_element([0.1 * k for k in range(n)])
        assert np.allclose(tau(h, 2), -h[::-1, ::-1])


def test_form_normalization():
    assert form_on_coroot(3, 0, 1) == pytest.approx(2.0)


def test_exp_derivative_matches_scipy():
    rng = np.random.default_rng(0)
    f, fp = random_su(4, rng, 2.0), random_su(4, rng)
    e, de = exp_with_derivative(f, fp)
    assert np.allclose(e, expm(f), atol=1e-12)
    eps = 1e-6
    fd = (expm(f + eps * fp) - expm(f - eps * fp)) / (2 * eps)
    assert np.allclose(de, fd, atol=1e-8)
    # coincident eigenvalues
    e0, de0 = exp_with_derivative(np.zeros((3, 3), complex), fp[:3, :3])
    assert np.allclose(e0, np.eye(3)) and np.allclose(de0, fp[:3, :3])


def test_constant_degree_zero_loop():
    y = sample_loop(2, 1, seed=1, degree=0)
    assert np.allclose(y(GRID), y(0.0))


@pytest.mark.parametrize("n,twist", [(2, 1), (3, 1), (3, 2), (4, 2), (5, 2)])
def test_boundary_condition(n, twist):
    for seed in range(3):
        assert sample_loop(n, twist, seed, 2).boundary_defect(GRID) < 1e-12
        g = sample_loop(n, twist, seed, 2, kind="group")
        assert g.boundary_defect(GRID) < 1e-12
        vals = g(GRID)
        assert np.allclose(vals @ np.conj(np.swapaxes(vals, -1, -2)), np.eye(n), atol=1e-10)
        assert np.allclose(np.linalg.det(vals), 1, atol=1e-10)


def test_shape_errors():
    with pytest.raises(ValueError):
        sample_loop(2, 2, 0, 1)
    with pytest.raises(ValueError):
        sample_loop(3, 1, 0, 1, kind="other")


def test_coadjoint_trivial_cases():
    y = sample_loop(3, 2, 4, 2)
    ident = ExpLoop([constant_loop(np.zeros((3, 3), complex), 2)])
    assert np.allclose(coadjoint_transform(y, 1.5, ident)(GRID), y(GRID))
    x = random_su(3, np.random.default_rng(5))
    x = (x + tau(x, 2)) / 2
    g = ExpLoop([constant_loop(x, 2)])
    gv = expm(x)
    assert np.allclose(coadjoint_transform(y, 2.0, g)(GRID), gv @ y(GRID) @ gv.conj().T)


def test_coadjoint_composition():
    y = sample_loop(3, 1, 1, 2)
    g = sample_loop(3, 1, 2, 1, kind="group")
    h = sample_loop(3, 1, 3, 1, kind="group")
    a = 2.0
    twice = coadjoint_transform(coadjoint_transform(y, a, g), a, h)
    once = coadjoint_transform(y, a, g.then(h))
    assert np.allclose(twice(GRID), once(GRID), atol=1e-12)


def test_constant_monodromy_closed_form():
    x = random_su(3, np.random.default_rng(2))
    for a in (1.0, 2.0, -1.0):
        z = solve_monodromy(constant_loop(x), a, 256).endpoint
        assert np.allclose(z, expm(-TWO_PI * x / a), atol=1e-10)


def test_monodromy_errors_and_order():
    y = sample_loop(2, 1, 3, 2)
    with pytest.raises(ValueError):
        solve_monodromy(y, 1.0, 32)
    with pytest.raises(ValueError):
        solve_monodromy(y, 0, 128)
    res = solve_monodromy(y, 1.0, 256, estimate_error=True)
    assert res.unitarity_drift < 1e-8 and res.halving_error < 1e-4
    assert 3.5 <= convergence_order(y, 1.0) <= 4.5


def test_equivariance_small():
    x = sample_loop(3, 2, 0, 2)
    g = sample_loop(3, 2, 1, 2, kind="group")
    rep = check_equivariance(x, 2.0, g, steps=2048)
    assert rep.residual < 1e-8 and rep.endpoint_residual < 1e-8
    r = random_su(3, np.random.default_rng(9))
    const = ExpLoop([constant_loop((r + tau(r, 2)) / 2, 2)])
    assert check_equivariance(x, 1.0, const, steps=256).residual < 1e-12


def _tangent(n, twist, seed):
    return sample_loop(n, twist, seed, 2)


def test_two_form_identity_with_exact_correction():
    x = diag_element([0.2, 0.0, -0.2])
    b1, b2 = _tangent(3, 2, 10), _tangent(3, 2, 11)
    res = two_form_residual(x, 2.0, b1, b2, quad_points=1024)
    assert res.relative < 1e-6
    assert res.raw_relative > 1e-4


def test_two_form_degenerate_zero():
    x = diag_element([0.1, -0.1])
    b = _tangent(2, 1, 3)
    res = two_form_residual(x, 1.0, b, b, quad_points=256)
    assert (res.sigma_term, res.varpi_term, res.omega, res.d_beta) == (0.0, 0.0, 0.0, 0.0)


def test_two_form_validation():
    x = diag_element([0.1, -0.1])
    b = _tangent(2, 1, 3)
    with pytest.raises(ValueError):
        two_form_residual(x, 0, b, b)
    with pytest.raises(ValueError):
        two_form_residual(x, 1.0, b, b, quad_points=300)
    with pytest.raises(ValueError):
        two_form_residual(diag_element([0.1, 0, -0.1]), 1.0, _tangent(3, 2, 0), _tangent(3, 1, 0))


def test_simpson_exact_on_cubics():
    t = np.linspace(0, 2, 9)
    assert simpson(t**3, 0.25) == pytest.approx(4.0)
    with pytest.raises(ValueError):
        simpson(np.ones(4), 0.1)


@pytest.mark.parametrize("n,twist,x,dim", [
    (2, 1, [0, 0], 3),
    (2, 1, [F(1, 2), F(-1, 2)], 3),
    (2, 1, [F(1, 5), F(-1, 5)], 1),
    (4, 2, [0, 0], 10),
    (4, 2, [F(1, 5), F(1, 10)], 2),
    (3, 2, [0], 3),
    (3, 2, [F(1, 4)], 3),
    (3, 2, [F(1, 8)], 1),
])
def test_fixed_subalgebra_dim(n, twist, x, dim):
    assert fixed_subalgebra_dim(n, twist, x) == dim
