"""Seeded random complete simplicial fans in dimension 2 and 3.

Each fan starts from a small seed fan (P^2, P^1 x P^1, P^3, the octant
fan of (P^1)^3, P^2 x P^1) or from a non-projective twisted prism, and is grown by stellar ray insertions: a new ray
is placed inside a maximal cone or inside a wall and every maximal cone
containing that face is subdivided. In dimension 3 a few random bistellar
flips across walls follow; these keep the fan complete and simplicial but may
destroy projectivity, which is what makes the corpus useful for cross-checks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product
from math import gcd

from .fan_toolkit import Fan, make_fan
from .lattice_core import kernel_basis


def _seeds() -> dict[str, tuple[int, list, list]]:
    e = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    octant = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    return {
        "p2": (2, [(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (0, 2)]),
        "p1p1": (2, [(1, 0), (-1, 0), (0, 1), (0, -1)], [(0, 2), (0, 3), (1, 2), (1, 3)]),
        "p3": (3, e + [(-1, -1, -1)], [c for c in combinations(range(4), 3)]),
        "octant": (3, octant, [c for c in product((0, 1), (2, 3), (4, 5))]),
        # boundary of a triangular prism with cyclically twisted side diagonals;
        # no height function is convex on all three quadrilaterals at once
        "twisted-prism": (
            3,
            [(1, 0, 1), (0, 1, 1), (-1, -1, 1), (1, 0, -1), (0, 1, -1), (-1, -1, -1)],
            [(0, 1, 2), (3, 4, 5)]
            + [tuple(sorted((i, (i + 1) % 3, 3 + (i + 1) % 3))) for i in range(3)]
            + [tuple(sorted((i, 3 + i, 3 + (i + 1) % 3))) for i in range(3)],
        ),
        "p2p1": (
            3,
            [(1, 0, 0), (0, 1, 0), (-1, -1, 0), (0, 0, 1), (0, 0, -1)],
            [tuple(sorted(p + (c,))) for p in ((0, 1), (1, 2), (0, 2)) for c in (3, 4)],
        ),
    }


@dataclass(frozen=True)
class CorpusSpec:
    count: int = 24
    max_rays: int = 12
    max_dim: int = 3
    flips: int = 6
    weighted: bool = True  # allow non-unit coefficients (non-smooth insertions)
    twisted_weight: float = 3.0  # relative odds of starting from the non-projective seed


def _primitive(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(x // g for x in v)


def stellar_insert(rays, cones, face, coeffs=None):
    """Insert the (primitive) positive combination of ``face`` and subdivide."""
    coeffs = coeffs or [1] * len(face)
    new = _primitive(tuple(sum(c * rays[i][k] for c, i in zip(coeffs, face)) for k in range(len(rays[0]))))
    if new in rays:
        return rays, cones
    rays = list(rays) + [new]
    r = len(rays) - 1
    out = []
    for c in cones:
        if set(face) <= set(c):
            out.extend(tuple(sorted([x for x in c if x != f] + [r])) for f in face)
        else:
            out.append(c)
    return rays, out


def flippable_walls(rays, cones):
    """Walls ``{a, b}`` between ``(a, b, c)`` and ``(a, b, d)`` whose segment ``cd`` crosses the wall.

    Then ``(a, c, d), (b, c, d)`` is another triangulation of the same region.
    """
    walls = {}
    for k, cone in enumerate(cones):
        for w in combinations(cone, 2):
            walls.setdefault(w, []).append(k)
    out = []
    for (a, b), ks in sorted(walls.items()):
        if len(ks) != 2:
            continue
        (c,) = set(cones[ks[0]]) - {a, b}
        (d,) = set(cones[ks[1]]) - {a, b}
        rel = kernel_basis([[rays[i][k] for i in (a, b, c, d)] for k in range(3)])
        if len(rel) != 1:
            continue
        la, lb, lc, ld = rel[0]
        if la * lb > 0 and lc * ld > 0 and la * lc < 0:
            out.append((ks, a, b, c, d))
    return out


def flip(cones, move):
    ks, a, b, c, d = move
    kept = [x for i, x in enumerate(cones) if i not in ks]
    return kept + [tuple(sorted((a, c, d))), tuple(sorted((b, c, d)))]


def random_fan(rng: random.Random, spec: CorpusSpec = CorpusSpec(), name="") -> Fan:
    seeds = _seeds()
    choices = sorted(k for k, v in seeds.items() if v[0] <= spec.max_dim)
    weights = [spec.twisted_weight if k == "twisted-prism" else 1.0 for k in choices]
    dim, rays, cones = seeds[rng.choices(choices, weights)[0]]
    rays, cones = list(rays), list(cones)
    target = rng.randint(len(rays) + 1, spec.max_rays)
    while len(rays) < target:
        cone = rng.choice(cones)
        faces = [cone] + [f for f in combinations(cone, 2)] if dim == 3 else [cone]
        face = rng.choice(faces)
        coeffs = [rng.choice((1, 1, 1, 2)) if spec.weighted else 1 for _ in face]
        rays, cones = stellar_insert(rays, cones, face, coeffs)
    if dim == 3:
        for _ in range(rng.randint(0, spec.flips)):
            moves = flippable_walls(rays, cones)
            if not moves:
                break
            cones = flip(cones, rng.choice(moves))
    # validity holds by construction, so the quadratic face-to-face scan is skipped
    return make_fan(dim, [list(r) for r in rays], [list(c) for c in cones], name=name, trust_fan=True)


def generate_corpus(seed: int = 0, spec: CorpusSpec = CorpusSpec()) -> list[Fan]:
    """``spec.count`` fans, deterministic in ``seed``."""
    rng = random.Random(seed)
    return [random_fan(rng, spec, name=f"corpus-{seed}-{i}") for i in range(spec.count)]
