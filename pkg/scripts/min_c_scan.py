"""Empirical positivity threshold of the corrected O(1) potential.

Scans ``fixed-o1`` (and the uncorrected ``wrong-o1`` for comparison) over a
grid of constants ``c`` and several seeds, printing the smallest sampled
Hessian eigenvalue. The threshold is relative to the sampler: a scan can only
certify positivity on its samples.

    python3 scripts/min_c_scan.py --seeds 0 1 2 --grid 0.25 0.5 0.9 1 1.1 2 4 8
"""

import argparse

from momentforge.kform_lab import SamplerSpec, min_c_search, positivity_scan


def main():
    p = argparse.ArgumentParser(description="positivity threshold scan")
    p.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    p.add_argument("--grid", type=float, nargs="+", default=[0.25, 0.5, 0.9, 1.0, 1.1, 2.0, 4.0, 8.0])
    p.add_argument("--samples", type=int, default=10_000)
    args = p.parse_args()
    sampler = SamplerSpec(n=args.samples)
    print(f"{'c':>6} {'seed':>4} {'fixed-o1 min eig':>18} {'wrong-o1 min eig':>18}")
    for c in args.grid:
        for seed in args.seeds:
            fixed = positivity_scan("fixed-o1", c, sampler, seed)
            wrong = positivity_scan("wrong-o1", c, sampler, seed)
            print(f"{c:6.2f} {seed:4d} {fixed.min_eigenvalue:18.3e} {wrong.min_eigenvalue:18.3e}")
    for seed in args.seeds:
        rep = min_c_search("fixed-o1", sampler, seed, sorted(set(args.grid)))
        print(f"seed {seed}: threshold {rep.threshold}, monotone {rep.monotone}")


if __name__ == "__main__":
    main()
