import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from momentforge import moment_numerics as mn
from momentforge import potentials as pt


def cvec(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def test_affine_examples():
    act = mn.LieAlgebraAction.torus([[1]])
    assert mn.momentum_affine(act, [0]) == pytest.approx([0])
    assert mn.momentum_affine(act, [1]) == pytest.approx([-2])
    act2 = mn.LieAlgebraAction.torus([[1, -1]])
    assert mn.momentum_affine(act2, [1, 1]) == pytest.approx([0])


def test_shift_is_subtracted():
    act = mn.LieAlgebraAction.torus([[1]])
    assert mn.momentum_affine(act, [1], shift=[3]) == pytest.approx([-5])


def test_projective_examples():
    act = mn.LieAlgebraAction.torus([[1, 0]])
    assert mn.momentum_projective(act, [1, 0]) == pytest.approx([-2])
    assert mn.momentum_projective(act, [0, 1]) == pytest.approx([0])
    assert mn.momentum_projective(act, [1, 1]) == pytest.approx([-1])
    with pytest.raises(ValueError):
        mn.momentum_projective(act, [0, 0])


def test_from_potential_examples():
    act = mn.LieAlgebraAction.torus([[1]])
    assert mn.momentum_from_potential(pt.fs_affine(1), act, [1]) == pytest.approx([-1], abs=1e-8)
    assert mn.momentum_from_potential(pt.fs_affine(1), act, [0]) == pytest.approx([0], abs=1e-12)
    assert mn.momentum_from_potential(pt.norm_sq(1), act, [1]) == pytest.approx([-2], abs=1e-8)


def test_matrix_basis_agrees_with_torus_shortcut():
    A = np.array([[1, -2, 0], [0, 1, 3]])
    torus = mn.LieAlgebraAction.torus(A)
    mats = mn.LieAlgebraAction.from_matrices([1j * np.diag(r) for r in A])
    rng = np.random.default_rng(0)
    for _ in range(20):
        v = cvec(rng, 3)
        assert np.allclose(mn.momentum_affine(torus, v), mn.momentum_affine(mats, v), atol=1e-12)
        assert np.allclose(mn.momentum_affine(torus, v), mn.torus_momentum(A, v), atol=1e-12)


def test_non_anti_hermitian_basis_rejected():
    with pytest.raises(ValueError):
        mn.LieAlgebraAction.from_matrices([np.eye(2)])


def test_unitary_action_momentum_matches_hermitian_formula():
    # su(2) acting on C^2; mu^xi(v) = 2 Re <i xi v, v> for anti-Hermitian xi
    basis = [np.array([[1j, 0], [0, -1j]]), np.array([[0, 1], [-1, 0]]), np.array([[0, 1j], [1j, 0]])]
    act = mn.LieAlgebraAction.from_matrices(basis)
    rng = np.random.default_rng(1)
    for _ in range(10):
        v = cvec(rng, 2)
        expected = [2 * np.real(np.vdot(v, 1j * (m @ v))) for m in basis]
        assert np.allclose(mn.momentum_affine(act, v), expected, atol=1e-12)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=50, deadline=None)
def test_torus_invariance(seed):
    rng = np.random.default_rng(seed)
    A = rng.integers(-3, 4, size=(2, 3))
    act = mn.LieAlgebraAction.torus(A)
    v = cvec(rng, 3)
    g = act.group_element(rng.uniform(-np.pi, np.pi, 2))
    assert np.max(np.abs(mn.momentum_affine(act, g * v) - mn.momentum_affine(act, v))) <= 1e-12 * (1 + np.vdot(v, v).real)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=50, deadline=None)
def test_projective_scale_invariance(seed):
    rng = np.random.default_rng(seed)
    A = rng.integers(-3, 4, size=(2, 4))
    act = mn.LieAlgebraAction.torus(A)
    w = cvec(rng, 4)
    lam = complex(*rng.standard_normal(2)) * np.exp(rng.uniform(-3, 3))
    assert np.max(np.abs(mn.momentum_projective(act, lam * w) - mn.momentum_projective(act, w))) <= 1e-12


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=50, deadline=None)
def test_restriction_identity(seed):
    # the projective momentum map at [v:1] is d^c of log(|v|^2 + 1)
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 4))
    A = rng.integers(-2, 3, size=(1, n))
    act = mn.LieAlgebraAction.torus(A)
    v = cvec(rng, n) * 0.8
    proj = mn.momentum_projective(act.extended(), np.append(v, 1))
    pot = mn.momentum_from_potential(pt.fs_affine(n), act, v)
    assert np.max(np.abs(proj - pot)) < 1e-8


def test_gluing_leaves_vertical_momentum_unchanged():
    # scalar multiplication on the fibres of O(1) over P^1
    act = mn.LieAlgebraAction.torus([[1, 1]])
    rng = np.random.default_rng(2)
    for c in (0.5, 3.0, 40.0):
        glued = pt.o1_glued(c)
        for _ in range(20):
            v = cvec(rng, 2)
            a = mn.momentum_from_potential(glued, act, v)
            b = mn.momentum_from_potential(pt.o1_log_length(), act, v)
            assert abs(a[0] - b[0]) < 1e-6 * (1 + c)


def test_fd_stencil_must_stay_in_chart():
    act = mn.LieAlgebraAction.torus([[1, 0]])
    with pytest.raises(pt.ChartBoundaryError):
        mn.momentum_from_potential(pt.wrong_o1(1.0), act, [0, 0])


def test_orbit_examples():
    assert mn.orbit_distance_minimize([[1, 1]], [1, 1], [2]) < 1e-6
    assert mn.orbit_distance_minimize([[1, 1]], [1, 0], [2]) < 1e-6
    assert mn.orbit_distance_minimize([[1]], [1], [-1]) >= 1.0 - 1e-12


def test_orbit_minimizer_is_deterministic():
    args = ([[1, -1, 2], [0, 1, 1]], [1, 0.5j, 2], [1, 3])
    assert mn.orbit_distance_minimize(*args, seed=4) == mn.orbit_distance_minimize(*args, seed=4)


def test_trivial_torus_reaches_only_zero():
    assert mn.orbit_distance_minimize([[0, 0]], [1, 2], [0]) == 0.0
    assert mn.orbit_distance_minimize([[0, 0]], [1, 2], [1]) == pytest.approx(1.0)
