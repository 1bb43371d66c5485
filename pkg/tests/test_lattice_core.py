from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from momentforge import lattice_core as lc
from oracles import (
    closed_cone_brute,
    fm_feasible,
    invariant_factors_by_minors,
    recession_nontrivial_brute,
)


def matrices(max_rows=4, max_cols=4, lo=-6, hi=6):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )


# ---------------------------------------------------------------- SNF


@pytest.mark.parametrize(
    "M, diag",
    [
        ([[1, 0], [0, 1]], [1, 1]),
        ([[2, 4], [6, 8]], [2, 4]),
        ([[2, 0], [0, 3]], [1, 6]),
    ],
)
def test_snf_examples(M, diag):
    U, D, V = lc.smith_normal_form(M)
    assert [D[i][i] for i in range(2)] == diag
    assert lc.matmul(lc.matmul(U, M), V) == [list(r) for r in D]


@given(matrices())
@settings(max_examples=200, deadline=None)
def test_snf_postconditions(M):
    U, D, V = lc.smith_normal_form(M)
    assert lc.matmul(lc.matmul(U, M), V) == [list(r) for r in D]
    assert abs(lc.det(U)) == 1 and abs(lc.det(V)) == 1
    m, n = len(M), len(M[0])
    assert all(D[i][j] == 0 for i in range(m) for j in range(n) if i != j)
    d = [D[i][i] for i in range(min(m, n))]
    assert all(x >= 0 for x in d)
    for a, b in zip(d, d[1:]):
        assert (b == 0) if a == 0 else b % a == 0


@given(matrices(max_rows=3, max_cols=4))
@settings(max_examples=150, deadline=None)
def test_snf_matches_determinantal_divisors(M):
    _, D, _ = lc.smith_normal_form(M)
    d = [D[i][i] for i in range(min(len(M), len(M[0])))]
    assert d == invariant_factors_by_minors(M)


# ---------------------------------------------------------------- kernels


def test_kernel_examples():
    assert lc.kernel_basis([[1, -1]]) in ([[1, 1]], [[-1, -1]])
    assert lc.kernel_basis([[1, 0], [0, 1]]) == []
    K = lc.kernel_basis([[1, 1, 1]])
    assert len(K) == 2
    assert all(sum(v) == 0 for v in K)
    # saturated: the 2x3 basis matrix has invariant factors all one
    assert lc.invariant_factors(K) == [1, 1]


@given(matrices(max_rows=3, max_cols=5))
@settings(max_examples=150, deadline=None)
def test_kernel_basis_is_saturated(M):
    K = lc.kernel_basis(M)
    n = len(M[0])
    assert len(K) == n - lc.rank(M)
    for v in K:
        assert lc.matvec(M, v) == [0] * len(M)
    if K:
        assert all(f == 1 for f in lc.invariant_factors(K))


# ---------------------------------------------------------------- LP


def test_lp_examples():
    assert not lc.lp_feasible(lc.LinearSystem.build(1, strict=[([1], 0), ([-1], 0)])).feasible
    res = lc.lp_feasible(lc.LinearSystem.build(1, weak=[([1], 1)]))
    assert res.feasible and res.witness[0] >= 1


def test_lp_margin_unbounded_reported_separately():
    # x > 0 with no upper bound: a margin exists but can grow forever
    res = lc.lp_feasible(lc.LinearSystem.build(1, strict=[([1], 1)]))
    assert res.status == "unbounded-margin"
    assert res.witness[0] > 1


def test_lp_bounded_margin():
    sys = lc.LinearSystem.build(1, strict=[([1], 0), ([-1], -2)])
    res = lc.lp_feasible(sys)
    assert res.status == "feasible" and sys.satisfied_by(res.witness)
    assert res.margin == 1


def test_lp_homogeneous_strict_becomes_unit_margin():
    sys = lc.LinearSystem.build(2, strict=[([1, 0], 0), ([0, 1], 0), ([1, -1], 0)])
    res = lc.lp_feasible(sys)
    assert res.feasible
    assert all(lc.dot(a, res.witness) >= 1 for a, _ in sys.strict)


def systems(max_dim=4, max_rows=8):
    coeff = st.integers(-3, 3)
    rhs = st.integers(-4, 4)

    def rows(dim, n):
        return st.lists(st.tuples(st.lists(coeff, min_size=dim, max_size=dim), rhs), max_size=n)

    def build(dim):
        return st.tuples(st.just(dim), rows(dim, 2), rows(dim, 4), rows(dim, 3), st.sets(st.integers(0, dim - 1)))

    return st.integers(1, max_dim).flatmap(build)


@given(systems())
@settings(max_examples=300, deadline=None)
def test_lp_agrees_with_fourier_motzkin(data):
    dim, eqs, weak, strict, nonneg = data
    sys = lc.LinearSystem.build(dim, equalities=eqs, weak=weak, strict=strict, nonneg=nonneg)
    res = lc.lp_feasible(sys)
    assert res.feasible == fm_feasible(dim, eqs, weak, strict, nonneg)
    if res.feasible:
        assert sys.satisfied_by(res.witness)


# ---------------------------------------------------------------- cones


def test_cone_examples():
    v = lc.cone_member([(1, 0), (0, 1)], (1, 1))
    assert v.member and v.certificate == (1, 1)
    assert not lc.cone_member([(1, 0), (0, 1)], (1, 0), "relative_interior")
    assert lc.cone_member([], (0, 0))
    assert not lc.cone_member([], (1, 0))


def test_relative_interior_of_lower_dimensional_cone():
    gens = [(1, 0, 0), (0, 1, 0), (1, 1, 0)]
    v = lc.cone_member(gens, (2, 1, 0), "relative_interior")
    assert v.member and all(x > 0 for x in v.certificate)
    assert not lc.cone_member(gens, (1, 0, 0), "relative_interior")


vec3 = st.lists(st.integers(-3, 3), min_size=3, max_size=3)


@given(st.lists(vec3, max_size=5), vec3, vec3)
@settings(max_examples=200, deadline=None)
def test_cone_membership_oracle_and_monotonicity(gens, point, extra):
    v = lc.cone_member(gens, point)
    assert v.member == closed_cone_brute(gens, point)
    if v.member:
        assert [sum(l * g[r] for l, g in zip(v.certificate, gens)) for r in range(3)] == point
        assert lc.cone_member(gens + [extra], point).member


@given(matrices(max_rows=3, max_cols=5, lo=-3, hi=3))
@settings(max_examples=200, deadline=None)
def test_recession_against_support_enumeration(A):
    assert lc.recession_trivial(A) == (not recession_nontrivial_brute(A))
    d = lc.recession_direction(A)
    if d is not None:
        assert all(x >= 0 for x in d) and any(x > 0 for x in d)
        assert lc.matvec(A, d) == [0] * len(A)


def test_recession_examples():
    assert lc.recession_trivial([[1, 1]])
    assert not lc.recession_trivial([[1, -1]])
    assert lc.recession_trivial([[1, 1, 1]])


def test_rationals_are_canonical():
    q = lc.as_fraction("-6/4")
    assert q == Fraction(-3, 2) and q.denominator > 0
    assert lc.fraction_str(Fraction(4, 2)) == "2"
