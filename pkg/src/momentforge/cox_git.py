"""Cox construction and torus GIT for simplicial fans.

Momentum levels and GIT targets are related by ``target = -level / 2``: the
analytic momentum map is ``mu(z)_j = -2 * sum_rho A[j][rho] |z_rho|^2`` while
everything in this module works with ``A s = target`` for ``s_rho = |z_rho|^2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .fan_toolkit import Check, Fan, FanError, class_group, is_complete
from .lattice_core import (
    ConeVerdict,
    LinearSystem,
    RatVector,
    cone_member,
    hermite_rows,
    invariant_factors,
    kernel_basis,
    lp_feasible,
    matmul,
    rank,
    rat_vector,
    recession_direction,
    inverse,
    primitive_direction,
    transpose,
)


@dataclass(frozen=True)
class WeightMatrix:
    """``k x N`` integer matrix; column ``rho`` is the torus weight of ``z_rho``."""

    A: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, rows) -> "WeightMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("weight matrix must be a nonempty rectangular integer matrix")
        return cls(rows)

    @property
    def k(self) -> int:
        return len(self.A)

    @property
    def N(self) -> int:
        return len(self.A[0])

    def column(self, rho: int) -> tuple[int, ...]:
        return tuple(row[rho] for row in self.A)

    def columns(self, idx) -> list[tuple[int, ...]]:
        return [self.column(r) for r in idx]

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.A]


@dataclass(frozen=True)
class FiberVerdict:
    kind: str  # "empty" | "noncompact" | "compact"
    certificate: RatVector | None = None  # feasible point, or recession direction when noncompact
    point: RatVector | None = None


def level_to_target(level) -> RatVector:
    return tuple(-q / 2 for q in rat_vector(level))


def target_to_level(target) -> RatVector:
    return tuple(-2 * q for q in rat_vector(target))


def cox_weights(fan: Fan) -> WeightMatrix:
    """Gale dual of the ray matrix, in row Hermite normal form."""
    cg = class_group(fan)
    if cg.torsion:
        raise FanError("torsion-class-group", f"class group has torsion {list(cg.torsion)}")
    R = fan.ray_matrix()
    basis = kernel_basis(transpose(R))
    A = hermite_rows(basis)
    if len(A) != cg.free_rank:
        raise AssertionError("Gale dual has the wrong rank")
    if any(any(row) for row in matmul(A, R)):
        raise AssertionError("A * R != 0")
    if any(d != 1 for d in invariant_factors(A)):
        raise AssertionError("Gale dual is not saturated")
    return WeightMatrix.of(A)


def point_relevant(fan: Fan, support) -> Check:
    """``z`` lies off the irrelevant locus iff some maximal cone's complement is inside ``supp(z)``."""
    support = set(support)
    for k, cone in enumerate(fan.max_cones):
        complement = set(range(fan.n_rays)) - set(cone)
        if complement <= support:
            return Check(True, k)
    return Check(False)


def action_free(fan: Fan, W: WeightMatrix) -> Check:
    """Chartwise trivial stabilizers: complement columns of each maximal cone generate ``Z^k``."""
    for k, cone in enumerate(fan.max_cones):
        comp = [r for r in range(fan.n_rays) if r not in cone]
        sub = [[W.A[j][r] for r in comp] for j in range(W.k)] if comp else None
        if sub is None:
            if W.k:
                return Check(False, k, "empty complement")
            continue
        factors = invariant_factors(sub)
        if len(factors) < W.k or any(d != 1 for d in factors):
            return Check(False, k, f"complement columns {comp} have invariant factors {factors}")
    return Check(True)


def semistable_support(W: WeightMatrix, target, support, stable: bool = False) -> ConeVerdict:
    """Torus semistability of points with the given support at ``target``.

    Semistable iff ``target`` lies in the cone of the weights active on the
    support. The stable variant asks for the relative interior and weights that
    span the whole character space.
    """
    target = rat_vector(target)
    if len(target) != W.k:
        raise ValueError("target has wrong dimension")
    support = sorted(set(support))
    gens = W.columns(support)
    if not stable:
        return cone_member(gens, target, "closed")
    if not gens or rank(gens) != W.k:
        return ConeVerdict(False)
    return cone_member(gens, target, "relative_interior")


def fiber_classify(W: WeightMatrix, target, support=None) -> FiberVerdict:
    """Classify ``{s >= 0 : A s = target}`` (optionally with ``s`` vanishing off ``support``)."""
    target = rat_vector(target)
    if len(target) != W.k:
        raise ValueError("target has wrong dimension")
    cols = list(range(W.N)) if support is None else sorted(set(support))
    sub = [[W.A[j][r] for r in cols] for j in range(W.k)]
    if not cols:
        if all(t == 0 for t in target):
            return FiberVerdict("compact", (), tuple(Fraction(0) for _ in range(W.N)))
        return FiberVerdict("empty")
    eqs = [(sub[j], target[j]) for j in range(W.k)]
    res = lp_feasible(LinearSystem.build(len(cols), equalities=eqs, nonneg=range(len(cols))))
    if not res.feasible:
        return FiberVerdict("empty")
    point = [Fraction(0)] * W.N
    for r, v in zip(cols, res.witness):
        point[r] = v
    direction = recession_direction(sub)
    if direction is None:
        return FiberVerdict("compact", tuple(point), tuple(point))
    full = [Fraction(0)] * W.N
    for r, v in zip(cols, direction):
        full[r] = v
    if any(sum(W.A[j][r] * full[r] for r in range(W.N)) for j in range(W.k)):
        raise AssertionError("recession direction failed re-substitution")
    return FiberVerdict("noncompact", tuple(full), tuple(point))


def _complements(fan: Fan):
    return [[r for r in range(fan.n_rays) if r not in cone] for cone in fan.max_cones]


def fan_chamber(fan: Fan, W: WeightMatrix) -> RatVector | None:
    """A target in the intersection of the relative interiors of all complement cones.

    None means the intersection is empty, i.e. the fan is not the quotient fan
    of any momentum level.
    """
    if not is_complete(fan):
        raise FanError("not-complete", "chamber test needs a complete fan")
    comps = _complements(fan)
    k = W.k
    strict = _inverse_rows(W, comps)
    if strict is not None:
        res = lp_feasible(LinearSystem.build(k, strict=strict))
        if not res.feasible:
            return None
        target = tuple(res.witness)
    else:
        target = _chamber_general(W, comps)
        if target is None:
            return None
    for comp in comps:
        if not cone_member(W.columns(comp), target, "relative_interior"):
            raise AssertionError("chamber witness failed re-verification")
    return target


def _inverse_rows(W: WeightMatrix, comps):
    """Rows of ``A_c^{-1}`` for every complement ``c``; None unless all are square and invertible.

    For a complete simplicial fan each complement is a basis of the character
    space, and ``b`` is in the open cone iff ``A_c^{-1} b > 0``. Rows are
    rescaled to primitive integer vectors and deduplicated, since neighbouring
    complements share most of their facets.
    """
    rows = set()
    for comp in comps:
        if len(comp) != W.k:
            return None
        inv = inverse([[W.A[j][r] for r in comp] for j in range(W.k)])
        if inv is None:
            return None
        rows.update(primitive_direction(row) for row in inv)
    return [(list(r), 0) for r in sorted(rows)]


def _chamber_general(W: WeightMatrix, comps):
    k = W.k
    nvar = k + sum(len(c) for c in comps)
    eqs, strict = [], []
    offset = k
    for comp in comps:
        for j in range(k):
            row = [0] * nvar
            row[j] = -1
            for i, r in enumerate(comp):
                row[offset + i] = W.A[j][r]
            eqs.append((row, 0))
        for i in range(len(comp)):
            row = [0] * nvar
            row[offset + i] = 1
            strict.append((row, 0))
        offset += len(comp)
    res = lp_feasible(LinearSystem.build(nvar, equalities=eqs, strict=strict))
    return tuple(res.witness[:k]) if res.feasible else None


def chamber_position(fan: Fan, W: WeightMatrix, target) -> str:
    """``"interior"``, ``"boundary"`` (closed but not open chamber) or ``"outside"``."""
    target = rat_vector(target)
    comps = _complements(fan)
    if all(cone_member(W.columns(c), target, "relative_interior") for c in comps):
        return "interior"
    if all(cone_member(W.columns(c), target, "closed") for c in comps):
        return "boundary"
    return "outside"
