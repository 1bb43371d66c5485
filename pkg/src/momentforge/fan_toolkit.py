"""Simplicial fans: parsing, smoothness, completeness, projectivity, class group."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from pathlib import Path

from .lattice_core import (
    LinearSystem,
    RatVector,
    det,
    dot,
    invariant_factors,
    lp_feasible,
    rank,
    transpose,
)


class FanError(ValueError):
    """Invalid fan input. ``kind`` is a stable machine-readable tag."""

    def __init__(self, kind: str, message: str, index=None):
        super().__init__(f"{kind}: {message}")
        self.kind = kind
        self.index = index


@dataclass(frozen=True)
class Fan:
    dim: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]
    name: str = ""

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def ray_matrix(self) -> list[list[int]]:
        """N x n matrix whose rows are the ray generators."""
        return [list(r) for r in self.rays]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "rays": [list(r) for r in self.rays],
            "max_cones": [list(c) for c in self.max_cones],
            "normalize_rays": False,
        }


@dataclass(frozen=True)
class Check:
    """A boolean verdict that remembers which input index broke it."""

    ok: bool
    offender: int | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class ClassGroupReport:
    free_rank: int
    torsion: tuple[int, ...]


@dataclass(frozen=True)
class SupportFunctionWitness:
    """One linear functional ``m_sigma`` per maximal cone."""

    m: tuple[RatVector, ...]

    def verify(self, fan: Fan) -> bool:
        """Exact check: agreement on every wall and a jump of at least 1 across it."""
        if len(self.m) != len(fan.max_cones):
            return False
        for wall, (i, j) in _walls(fan).items():
            mi, mj = self.m[i], self.m[j]
            for r in wall:
                if dot(mi, fan.rays[r]) != dot(mj, fan.rays[r]):
                    return False
            (ui,) = set(fan.max_cones[i]) - wall
            (uj,) = set(fan.max_cones[j]) - wall
            diff = [a - b for a, b in zip(mi, mj)]
            if dot(diff, fan.rays[uj]) < 1 or -dot(diff, fan.rays[ui]) < 1:
                return False
        return True


# --------------------------------------------------------------------------
# Parsing


def _primitive(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return g == 1


def make_fan(dim, rays, max_cones, name="", normalize_rays=False, trust_fan=False) -> Fan:
    """Build a validated :class:`Fan` from plain Python data."""
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise FanError("schema", "dim must be a positive integer")
    clean_rays = []
    for i, r in enumerate(rays):
        if not isinstance(r, (list, tuple)) or len(r) != dim:
            raise FanError("schema", f"ray {i} must be a list of {dim} integers", i)
        if any(not isinstance(x, int) or isinstance(x, bool) for x in r):
            raise FanError("schema", f"ray {i} has non-integer entries", i)
        if not any(r):
            raise FanError("schema", f"ray {i} is zero", i)
        if not _primitive(r):
            if not normalize_rays:
                raise FanError("non-primitive-ray", f"ray {i} = {list(r)} is not primitive", i)
            g = 0
            for x in r:
                g = gcd(g, x)
            r = [x // g for x in r]
        clean_rays.append(tuple(r))
    seen = {}
    for i, r in enumerate(clean_rays):
        if r in seen:
            raise FanError("schema", f"ray {i} duplicates ray {seen[r]}", i)
        seen[r] = i

    cones = []
    for k, c in enumerate(max_cones):
        if not isinstance(c, (list, tuple)) or not c:
            raise FanError("schema", f"cone {k} must be a nonempty list of ray indices", k)
        if any(not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < len(clean_rays) for x in c):
            raise FanError("schema", f"cone {k} references an unknown ray", k)
        if len(set(c)) != len(c):
            raise FanError("schema", f"cone {k} repeats a ray", k)
        if rank([clean_rays[x] for x in c]) != len(c):
            raise FanError("dependent-cone-rays", f"cone {k} = {list(c)} has dependent rays", k)
        cones.append(tuple(sorted(c)))
    if len(set(cones)) != len(cones):
        raise FanError("schema", "duplicate maximal cone")
    used = set().union(*cones) if cones else set()
    for i in range(len(clean_rays)):
        if i not in used:
            raise FanError("schema", f"ray {i} lies in no maximal cone", i)

    fan = Fan(dim, tuple(clean_rays), tuple(cones), name)
    if not trust_fan and len(cones) <= 64:
        bad = face_to_face_violation(fan)
        if bad is not None:
            raise FanError(
                "not-face-to-face", f"cones {bad[0]} and {bad[1]} overlap improperly", bad
            )
    return fan


def parse_fan(document, normalize_rays=None, trust_fan=False) -> Fan:
    """Parse the fan JSON schema from a dict or a JSON string."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise FanError("schema", f"not valid JSON ({exc})") from exc
    if not isinstance(document, dict):
        raise FanError("schema", "document must be a JSON object")
    for key in ("dim", "rays", "max_cones"):
        if key not in document:
            raise FanError("schema", f"missing key {key!r}")
    if not isinstance(document["rays"], list) or not isinstance(document["max_cones"], list):
        raise FanError("schema", "rays and max_cones must be lists")
    if normalize_rays is None:
        normalize_rays = bool(document.get("normalize_rays", False))
    return make_fan(
        document["dim"],
        document["rays"],
        document["max_cones"],
        name=str(document.get("name", "")),
        normalize_rays=normalize_rays,
        trust_fan=trust_fan,
    )


def load_fan(path, trust_fan=False) -> Fan:
    return parse_fan(Path(path).read_text(), trust_fan=trust_fan)


def face_to_face_violation(fan: Fan):
    """First pair of maximal cones whose intersection is not their common face.

    For simplicial cones the coordinates of a point are unique, so a bad overlap
    is a solution of ``sum l_i u_i = sum m_j u'_j`` with ``l, m >= 0`` and
    positive total weight on the rays of the first cone outside the common face.
    """
    for a, b in combinations(range(len(fan.max_cones)), 2):
        ca, cb = fan.max_cones[a], fan.max_cones[b]
        common = set(ca) & set(cb)
        own = [r for r in ca if r not in common]
        other = [r for r in cb if r not in common]
        if not own or not other:
            # one cone inside the other would need equal ray sets
            continue
        cols = [fan.rays[r] for r in ca] + [tuple(-x for x in fan.rays[r]) for r in cb]
        nvar = len(cols)
        eqs = [([c[k] for c in cols], 0) for k in range(fan.dim)]
        strict = [([1 if (i < len(ca) and ca[i] not in common) else 0 for i in range(nvar)], 0)]
        sys = LinearSystem.build(nvar, equalities=eqs, strict=strict, nonneg=range(nvar))
        if lp_feasible(sys).feasible:
            return (a, b)
    return None


# --------------------------------------------------------------------------
# Verdicts


def is_smooth(fan: Fan) -> Check:
    """Every maximal cone is generated by part of a lattice basis."""
    for k, cone in enumerate(fan.max_cones):
        factors = invariant_factors([list(fan.rays[r]) for r in cone])
        if any(d != 1 for d in factors):
            detail = f"cone {list(cone)} has invariant factors {factors}"
            if len(cone) == fan.dim:
                detail += f" (|det| = {abs(det([fan.rays[r] for r in cone]))})"
            return Check(False, k, detail)
    return Check(True)


def _wall_table(fan: Fan) -> dict[frozenset, list[int]]:
    table: dict[frozenset, list[int]] = {}
    for k, cone in enumerate(fan.max_cones):
        for wall in combinations(cone, len(cone) - 1):
            table.setdefault(frozenset(wall), []).append(k)
    return table


def _walls(fan: Fan) -> dict[frozenset, tuple[int, int]]:
    """Interior walls of a complete fan, mapped to their two adjacent cones."""
    return {w: tuple(ks) for w, ks in _wall_table(fan).items() if len(ks) == 2}


def is_complete(fan: Fan, cross_check: bool = False, samples: int = 1000, seed: int = 0) -> Check:
    """All maximal cones full-dimensional and every wall shared by exactly two of them."""
    for k, cone in enumerate(fan.max_cones):
        if len(cone) != fan.dim:
            return Check(False, k, f"cone {k} is not full-dimensional")
    for wall, ks in _wall_table(fan).items():
        if len(ks) != 2:
            return Check(False, ks[0], f"wall {sorted(wall)} lies on {len(ks)} cone(s)")
    if cross_check and not completeness_oracle(fan, samples, seed):
        raise AssertionError("wall criterion and sampled-direction oracle disagree")
    return Check(True)


def completeness_oracle(fan: Fan, samples: int = 1000, seed: int = 0) -> bool:
    """Randomized check: every sampled integer direction lies in some maximal cone.

    Uses exact integer arithmetic (adjugate solves), so a sampled direction on
    a cone boundary still counts as covered.
    """
    rng = random.Random(seed)
    inverses = []
    for cone in fan.max_cones:
        if len(cone) != fan.dim:
            continue
        B = [list(fan.rays[r]) for r in cone]  # rows = generators
        d = det(B)
        inverses.append((_adjugate(transpose(B)), d))
    for _ in range(samples):
        x = [rng.randint(-10**6, 10**6) for _ in range(fan.dim)]
        if not any(x):
            continue
        covered = False
        for adj, d in inverses:
            coords = [dot(row, x) for row in adj]  # = d * (B^T)^{-1} x
            if all(c * d >= 0 for c in coords):
                covered = True
                break
        if not covered:
            return False
    return True


def _adjugate(M):
    n = len(M)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1 :] for k, row in enumerate(M) if k != i]
            adj[j][i] = (-1) ** (i + j) * det(minor)
    return adj


def projectivity_system(fan: Fan) -> LinearSystem:
    """Variables ``m_sigma`` (``dim`` per cone, concatenated).

    Wall agreement ``<m_s - m_t, u> == 0`` for each wall ray, and strict
    crossing ``<m_s - m_t, u_t> > 0``, ``<m_t - m_s, u_s> > 0`` for the rays
    opposite the wall. The system is homogeneous.
    """
    n = fan.dim
    nvar = n * len(fan.max_cones)

    def diff_row(i, j, u):
        row = [0] * nvar
        for k in range(n):
            row[i * n + k] += u[k]
            row[j * n + k] -= u[k]
        return row

    eqs, strict = [], []
    for wall, (i, j) in sorted(_walls(fan).items(), key=lambda kv: kv[1]):
        for r in sorted(wall):
            eqs.append((diff_row(i, j, fan.rays[r]), 0))
        (ui,) = set(fan.max_cones[i]) - wall
        (uj,) = set(fan.max_cones[j]) - wall
        strict.append((diff_row(i, j, fan.rays[uj]), 0))
        strict.append((diff_row(j, i, fan.rays[ui]), 0))
    return LinearSystem.build(nvar, equalities=eqs, strict=strict)


def is_projective(fan: Fan) -> SupportFunctionWitness | None:
    """Strictly convex support function for a complete fan, or None when none exists."""
    if not is_complete(fan):
        raise FanError("not-complete", "projectivity is only decided for complete fans")
    res = lp_feasible(projectivity_system(fan))
    if not res.feasible:
        return None
    n = fan.dim
    x = res.witness
    witness = SupportFunctionWitness(tuple(tuple(x[k * n : (k + 1) * n]) for k in range(len(fan.max_cones))))
    if not witness.verify(fan):
        raise AssertionError("support function witness failed exact verification")
    return witness


def has_nontrivial_nef(fan: Fan) -> bool:
    """Whether some convex, non-linear support function exists (a nontrivial nef class).

    Tries each wall in turn: weak convexity everywhere, strict jump across that
    wall.
    """
    base = projectivity_system(fan)
    weak = [(a, 0) for a, _ in base.strict]
    for k in range(0, len(base.strict), 2):
        sys = LinearSystem.build(base.dim, equalities=base.equalities, weak=weak, strict=[base.strict[k]])
        if lp_feasible(sys).feasible:
            return True
    return False


def class_group(fan: Fan) -> ClassGroupReport:
    """Cokernel of ``Z^n -> Z^rays, m -> (<m, u_rho>)``."""
    R = fan.ray_matrix()
    factors = invariant_factors(R)
    nonzero = [d for d in factors if d]
    if len(nonzero) < fan.dim:
        raise FanError("rays-do-not-span", "ray generators do not span the ambient space")
    return ClassGroupReport(fan.n_rays - fan.dim, tuple(d for d in nonzero if d > 1))


def relabel(fan: Fan, ray_perm, cone_perm) -> Fan:
    """Same fan with ray ``i`` renamed ``ray_perm[i]`` and cones reordered."""
    rays = [None] * fan.n_rays
    for i, r in enumerate(fan.rays):
        rays[ray_perm[i]] = r
    cones = [tuple(sorted(ray_perm[r] for r in fan.max_cones[k])) for k in cone_perm]
    return Fan(fan.dim, tuple(rays), tuple(cones), fan.name)


def fan_summary(fan: Fan, cross_check=False, seed=0) -> dict:
    """All verdicts in one dict (what ``fan check`` prints)."""
    smooth = is_smooth(fan)
    complete = is_complete(fan, cross_check=cross_check, seed=seed)
    out = {"simplicial": True, "smooth": smooth.ok, "complete": complete.ok}
    if not smooth.ok:
        out["smooth_failure"] = {"cone": smooth.offender, "detail": smooth.detail}
    if not complete.ok:
        out["complete_failure"] = {"cone": complete.offender, "detail": complete.detail}
        out["projective"] = None
    else:
        w = is_projective(fan)
        out["projective"] = w is not None
        out["support_function"] = None if w is None else [[_q(x) for x in m] for m in w.m]
    try:
        cg = class_group(fan)
        out["class_group"] = {"rank": cg.free_rank, "torsion": list(cg.torsion)}
    except FanError as exc:
        out["class_group"] = {"error": exc.kind}
    return out


def _q(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
