"""Run the acceptance matrix and print one line per criterion.

    python3 scripts/run_acceptance.py --seed 42 --suite all

Exits 0 when every criterion passes within its time budget.
"""

import argparse
import sys

from momentforge.acceptance import SUITES, run_suite


def main() -> int:
    p = argparse.ArgumentParser(description="acceptance matrix")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--suite", choices=sorted(SUITES), default="all")
    args = p.parse_args()
    results = run_suite(args.suite, args.seed)
    for r in results:
        print(r.line())
    ok = all(r.passed and r.seconds < r.budget_s for r in results)
    total = sum(r.seconds for r in results)
    print(f"{'all passed' if ok else 'FAILURES'}: {sum(r.passed for r in results)}/{len(results)} in {total:.1f}s")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
