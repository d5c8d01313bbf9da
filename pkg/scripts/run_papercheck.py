#!/usr/bin/env python3
"""Run the full acceptance suite and print one line per criterion.

Usage: python scripts/run_papercheck.py [--max-order N] [--jobs K] [--seed S]
"""
import argparse
import sys

from loopcheck.papercheck import build_context, run_all


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-order", type=int, default=6)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    ctx = build_context(max_order=args.max_order, seed=args.seed, jobs=args.jobs)
    all_passed = True
    for result in run_all(ctx):
        status = "PASS" if result.passed else "FAIL"
        print(f"criterion {result.number:2d} [{status}] "
              f"({result.seconds:6.2f}s) {result.title}")
        for record in result.report.findings:
            print(f"    {record.to_text()}")
        all_passed &= result.passed
    return 0 if all_passed else 1


if __name__ == "__main__":
    sys.exit(main())
