"""Run the identity suite and print a per-identity summary with timings.

    python scripts/run_suite.py --ranges m=0..8,n=1..4 --seed 3
"""
import argparse
import time
from collections import defaultdict

from umbralbb.suite import CHECKERS, SuiteRanges, parse_ranges, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--ranges", default="")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    ranges = parse_ranges(args.ranges, SuiteRanges())

    print(f"{'identity':28} {'checks':>6} {'failed':>6} {'seconds':>8}")
    total_failed = 0
    for ident in sorted(CHECKERS):
        start = time.perf_counter()
        reports = run_suite(ranges, identities=[ident], seed=args.seed, workers=args.workers)
        failed = sum(not r.passed for r in reports)
        total_failed += failed
        print(f"{ident:28} {len(reports):6d} {failed:6d} {time.perf_counter() - start:8.2f}")
    raise SystemExit(1 if total_failed else 0)


if __name__ == "__main__":
    main()
