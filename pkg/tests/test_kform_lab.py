import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from momentforge import kform_lab as kl
from momentforge import moment_numerics as mn
from momentforge import potentials as pt


def richardson_hessian(f, v, h=1e-3):
    """Independent Hessian oracle: Wirtinger derivatives from a 3x3x... real stencil."""
    n = len(v)
    H = np.zeros((n, n), dtype=complex)

    def d2(a, b):
        def shift(p, q):
            x = v.astype(complex).copy()
            x[a[0]] += p * a[1]
            x[b[0]] += q * b[1]
            return f(x)

        def est(h):
            return (shift(h, h) - shift(h, -h) - shift(-h, h) + shift(-h, -h)) / (4 * h * h)

        return (4 * est(h / 2) - est(h)) / 3

    for j in range(n):
        for k in range(n):
            xx = d2((j, 1), (k, 1))
            yy = d2((j, 1j), (k, 1j))
            xy = d2((j, 1), (k, 1j))
            yx = d2((j, 1j), (k, 1))
            # d/dz_j d/dzbar_k = (dx_j - i dy_j)(dx_k + i dy_k) / 4
            H[j, k] = (xx + yy + 1j * (xy - yx)) / 4
    return H


def test_hessian_examples():
    assert kl.complex_hessian_fd(pt.norm_sq(1), [0.3 - 2j]).H == pytest.approx(np.array([[1]]), abs=1e-6)
    assert kl.complex_hessian_fd(pt.fs_affine(1), [0]).H == pytest.approx(np.array([[1]]), abs=1e-6)
    assert kl.complex_hessian_fd(pt.fs_affine(1), [1]).H == pytest.approx(np.array([[0.25]]), abs=1e-6)


@pytest.mark.parametrize("pot", [pt.fs_affine(2), pt.fixed_o1(2.0), pt.wrong_o1(3.0)], ids=lambda p: p.id)
def test_closed_form_hessians_match_fd(pot):
    rng = np.random.default_rng(0)
    for _ in range(10):
        v = (rng.standard_normal(2) + 1j * rng.standard_normal(2)) * 0.7
        fd = kl.complex_hessian_fd(pot, v, richardson=True).H
        assert np.allclose(pot.hessian(v), fd, atol=1e-7)
        assert np.allclose(richardson_hessian(pot.f, v), fd, atol=1e-6)


def test_fd_hessian_is_hermitian():
    v = np.array([0.4 + 0.1j, -0.3j])
    H = kl.complex_hessian_fd(pt.fixed_o1(1.5), v).H
    assert np.linalg.norm(H - H.conj().T) <= 1e-8 * (1 + np.linalg.norm(H))


def test_fd_hessian_converges_at_order_two():
    pot = pt.fs_affine(2)
    v = np.array([0.6 + 0.2j, -0.5 + 0.4j])
    exact = pot.hessian(v)
    errs = [np.max(np.abs(kl.complex_hessian_fd(pot, v, step=h).H - exact)) for h in (4e-2, 2e-2, 1e-2)]
    for a, b in zip(errs, errs[1:]):
        assert 3.0 < a / b < 5.0


def test_wrong_matrix_examples():
    assert np.allclose(kl.wrong_metric_matrix(1, 0, 3).H, np.diag([1, 2]))
    with pytest.raises(ValueError, match="origin-excluded"):
        kl.wrong_metric_matrix(0, 0, 1)


@given(st.floats(0.05, 3.0), st.floats(0.1, 100.0))
@settings(max_examples=100, deadline=None)
def test_wrong_matrix_determinant_on_the_diagonal(t, c):
    s = 2 * t * t
    numer = kl.wrong_metric_matrix(t, t, c).H * s**3
    assert np.linalg.det(numer).real == pytest.approx(4 * t**4 * (2 * c * t * t - 1), rel=1e-9, abs=1e-12)


def test_wrong_matrix_fails_at_half_for_c_one():
    H = kl.wrong_metric_matrix(0.5, 0.5, 1.0).H * (0.5**3)
    assert np.linalg.det(H).real == pytest.approx(-1 / 8)


@pytest.mark.parametrize("c", [0.1, 1.0, 10.0])
def test_displayed_matrix_is_transposed_hessian_of_psi(c):
    rng = np.random.default_rng(int(c * 10))
    pot = pt.wrong_o1(c)
    for _ in range(20):
        r = np.exp(rng.uniform(np.log(0.5), np.log(2.0)))
        u = rng.standard_normal(4)
        u /= np.linalg.norm(u)
        z, w = r * complex(u[0], u[1]), r * complex(u[2], u[3])
        fd = kl.complex_hessian_fd(pot, [z, w], richardson=True).H
        assert np.max(np.abs(kl.wrong_metric_matrix(z, w, c).H - fd.T)) < 1e-6


def test_scan_examples():
    rep = kl.positivity_scan("wrong-o1", 10.0, seed=0)
    assert rep.verdict == "counterexample" and rep.min_eigenvalue < 0
    z, w = rep.witness_point()
    # the failure region shrinks towards the origin as c grows
    assert abs(z) ** 2 + abs(w) ** 2 < 1.0
    assert kl.positivity_scan("fixed-o1", 4.0, seed=0).verdict == "pd-on-samples"
    flat = kl.positivity_scan("norm-sq", dim=3, sampler=kl.SamplerSpec(n=500), seed=1)
    assert flat.verdict == "pd-on-samples" and flat.min_eigenvalue == pytest.approx(1.0)


def test_scan_witness_reproduces_its_eigenvalue():
    rep = kl.positivity_scan("fixed-o1", 0.5, seed=3)
    pot = pt.fixed_o1(0.5)
    again = np.linalg.eigvalsh(pot.hessian(rep.witness_point()))[0]
    assert abs(again - rep.min_eigenvalue) <= 1e-8


def test_scan_is_deterministic():
    a = kl.positivity_scan("wrong-o1", 100.0, seed=7).to_json()
    b = kl.positivity_scan("wrong-o1", 100.0, seed=7).to_json()
    assert a == b


@pytest.mark.parametrize("c", [10.0, 100.0])
def test_sampler_must_reach_small_radii(c):
    # radii bounded below miss the failure locus |v|^2 < 1/c entirely
    coarse = kl.SamplerSpec(r_min=0.5, r_max=2.0)
    assert kl.positivity_scan("wrong-o1", c, coarse, seed=7).verdict == "pd-on-samples"
    assert kl.positivity_scan("wrong-o1", c, kl.SamplerSpec(), seed=7).verdict == "counterexample"


def test_negative_and_positive_controls_pair_up():
    found = kl.min_c_search(seed=11)
    for c in (0.1, 1.0, 10.0, 100.0):
        assert kl.positivity_scan("wrong-o1", c, seed=11).verdict == "counterexample"
        assert kl.positivity_scan("fixed-o1", max(c, found.threshold), seed=11).verdict == "pd-on-samples"


def test_min_c_on_standard_grid():
    rep = kl.min_c_search(seed=0)
    assert rep.monotone
    assert rep.threshold in (0.25, 0.5, 1, 2, 4, 8)
    if rep.failing_below is not None:
        assert rep.failing_below.verdict == "counterexample"
    # for this potential the Hessian is positive definite exactly when c >= 1
    assert rep.threshold == 1.0


def test_min_c_degenerate_grids():
    assert kl.min_c_search(c_grid=(8,)).threshold == 8
    with pytest.raises(kl.NoCOnGridError):
        kl.min_c_search(c_grid=(0.25, 0.5))
    with pytest.raises(ValueError):
        kl.min_c_search(c_grid=(2, 1))


def test_hamiltonian_examples():
    act = mn.LieAlgebraAction.torus([[1]])
    assert kl.hamiltonian_residual(pt.norm_sq(1), act, seed=1) < 1e-6
    assert kl.hamiltonian_residual(pt.fs_affine(1), act, seed=1) < 1e-6


def test_hamiltonian_trivial_action_is_exactly_zero():
    act = mn.LieAlgebraAction.torus([[0, 0]])
    assert kl.hamiltonian_residual(pt.fixed_o1(2.0), act, seed=0, samples=20) == 0.0


def test_hamiltonian_with_potential_momentum_on_o1_chart():
    act = mn.LieAlgebraAction.torus([[1, 1]])
    assert kl.hamiltonian_residual(pt.fixed_o1(2.0), act, seed=0, samples=30) < 1e-5


def test_sign_convention_is_forced():
    # flipping the momentum map's sign breaks the Hamiltonian equation
    act = mn.LieAlgebraAction.torus([[1, 2]])
    pot = pt.norm_sq(2)
    flipped = lambda v: -mn.momentum_affine(act, v)
    assert kl.hamiltonian_residual(pot, act, seed=0, samples=10, momentum=flipped) > 0.1


@pytest.mark.parametrize("pid", ["norm-sq", "fs-affine", "wrong-o1", "fixed-o1"])
def test_potentials_are_torus_invariant(pid):
    pot = pt.builtin(pid, n=2, c=2.0)
    rng = np.random.default_rng(5)
    for _ in range(50):
        v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        g = np.exp(1j * rng.uniform(-np.pi, np.pi, 2))
        assert abs(pot(g * v) - pot(v)) <= 1e-12 * (1 + abs(pot(v)))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_fs_potential_is_an_exhaustion(n):
    pot = pt.fs_affine(n)
    rng = np.random.default_rng(n)
    for _ in range(10):
        v0 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        vals = [pot(r * v0) for r in np.geomspace(1e-2, 1e6, 40)]
        assert all(b > a for a, b in zip(vals, vals[1:]))
        assert vals[-1] > 20


def test_unknown_potential():
    with pytest.raises(KeyError):
        pt.builtin("nope")
