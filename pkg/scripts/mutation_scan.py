"""Corrupt one moment at a time and count how many suite reports notice.

A sensitivity experiment: each line perturbs B_k (or U_k) by +1 and runs the
suite without spot checks.  The k = 0 row stays clean: a symbol missing from a
monomial contributes no factor, so the zeroth moment is never consulted.
"""
import argparse
from collections import Counter

from umbralbb.suite import SuiteRanges, parse_ranges, run_suite
from umbralbb.umbral import DEFAULT_MOMENTS


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ranges", default="m=0..6,l=0..4,n=1..3,N=0..8,p=1..6,r=0..5")
    ap.add_argument("--kmax", type=int, default=6)
    ap.add_argument("--kind", choices=["B", "U"], default="B")
    args = ap.parse_args()
    ranges = parse_ranges(args.ranges, SuiteRanges())

    baseline = run_suite(ranges, spot_checks=0)
    assert all(r.passed for r in baseline)
    print(f"{len(baseline)} reports in baseline, all passing")
    for k in range(args.kmax + 1):
        bad = DEFAULT_MOMENTS.with_moment(args.kind, k, DEFAULT_MOMENTS.moment(args.kind, k) + 1)
        failed = [r for r in run_suite(ranges, bad, spot_checks=0) if not r.passed]
        by_id = Counter(r.identity_id for r in failed)
        detail = ", ".join(f"{i}:{c}" for i, c in sorted(by_id.items())) or "-"
        print(f"{args.kind}_{k} + 1: {len(failed):4d} failing  {detail}")


if __name__ == "__main__":
    main()
