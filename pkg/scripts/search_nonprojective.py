"""Random search for smooth complete non-projective toric threefolds.

Starts from P^3, (P^1)^3 or P^2 x P^1, performs stellar blowups of random
cones or walls until the fan has ``--rays`` rays, then applies random smooth
flops (a wall {a, b} between cones abc and abd with u_a + u_b = u_c + u_d is
replaced by the wall {c, d}). Every non-projective fan met along the way is
printed, tagged ``NO-NEF`` when no convex support function other than the
linear ones exists.

    python3 scripts/search_nonprojective.py --seed 23 --hits 4

With seed 23 the fourth ``NO-NEF`` fan printed (after roughly five minutes)
is the bundled ``fp_ex2`` dataset, up to the order of its cones.
"""

from __future__ import annotations

import argparse
import json
import random
import time
from itertools import combinations

from momentforge.fan_toolkit import has_nontrivial_nef, is_complete, is_projective, is_smooth, make_fan

P3 = ([(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)], [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
P1_CUBED = (
    [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)],
    [tuple(sorted((a, b, c))) for a in (0, 1) for b in (2, 3) for c in (4, 5)],
)
P2_P1 = (
    [(1, 0, 0), (0, 1, 0), (-1, -1, 0), (0, 0, 1), (0, 0, -1)],
    [tuple(sorted((a, b, c))) for a, b in ((0, 1), (1, 2), (2, 0)) for c in (3, 4)],
)


def add(*vs):
    return tuple(map(sum, zip(*vs)))


def blowup(rays, cones, face):
    """Star subdivision at the sum of the rays of ``face``."""
    rays = rays + [add(*[rays[i] for i in face])]
    r = len(rays) - 1
    out = []
    for c in cones:
        if set(face) <= set(c):
            out.extend(tuple(sorted([x for x in c if x != f] + [r])) for f in face)
        else:
            out.append(c)
    return rays, out


def smooth_flops(rays, cones):
    walls = {}
    for k, c in enumerate(cones):
        for w in combinations(c, 2):
            walls.setdefault(w, []).append(k)
    res = []
    for (a, b), ks in walls.items():
        if len(ks) != 2:
            continue
        (c,) = set(cones[ks[0]]) - {a, b}
        (d,) = set(cones[ks[1]]) - {a, b}
        if add(rays[c], rays[d]) == add(rays[a], rays[b]):
            kept = [x for i, x in enumerate(cones) if i not in ks]
            res.append(kept + [tuple(sorted((a, c, d))), tuple(sorted((b, c, d)))])
    return res


def search(seed: int, n_rays: int, hits: int, seconds: float, flops: int = 10):
    rng = random.Random(seed)
    seen = set()
    found = 0
    t0 = time.time()
    while time.time() - t0 < seconds:
        rays, cones = rng.choice([P3, P1_CUBED, P2_P1])
        rays, cones = list(rays), list(cones)
        while len(rays) < n_rays:
            c = rng.choice(cones)
            rays, cones = blowup(rays, cones, rng.choice([c] + list(combinations(c, 2))))
        for _ in range(flops):
            options = smooth_flops(rays, cones)
            if not options:
                break
            cones = rng.choice(options)
            key = (tuple(rays), tuple(sorted(cones)))
            if key in seen:
                continue
            seen.add(key)
            fan = make_fan(3, [list(r) for r in rays], [list(c) for c in cones], trust_fan=True)
            if is_projective(fan) is not None:
                continue
            fan = make_fan(3, [list(r) for r in rays], [list(c) for c in cones])
            assert is_smooth(fan) and is_complete(fan, cross_check=True)
            no_nef = not has_nontrivial_nef(fan)
            yield no_nef, fan, time.time() - t0
            if no_nef:
                found += 1
                if found >= hits:
                    return


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=23)
    p.add_argument("--rays", type=int, default=8)
    p.add_argument("--hits", type=int, default=4, help="stop after this many NO-NEF fans")
    p.add_argument("--seconds", type=float, default=900)
    p.add_argument("--json", action="store_true", help="print fans as fan JSON documents")
    args = p.parse_args()
    for no_nef, fan, elapsed in search(args.seed, args.rays, args.hits, args.seconds):
        tag = "NO-NEF" if no_nef else "nef"
        if args.json:
            print(json.dumps({"tag": tag, **fan.to_json()}), flush=True)
        else:
            print(f"{tag} ({elapsed:.0f}s) rays={[list(r) for r in fan.rays]} cones={[list(c) for c in fan.max_cones]}", flush=True)


if __name__ == "__main__":
    main()
