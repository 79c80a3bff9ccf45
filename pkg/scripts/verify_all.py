#!/usr/bin/env python3
"""Run every verification suite and print a compact summary table."""

import argparse
import sys
import time

from ordturan.harness import VERIFY_IDS, run_verify


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    failures = 0
    t_start = time.perf_counter()
    for tid in VERIFY_IDS:
        rep = run_verify(tid, seed=args.seed)
        mark = "PASS" if rep.passed else "FAIL"
        print(f"{mark}  {tid:<16} {rep.elapsed:7.2f}s  ({len(rep.results)} checks)")
        for r in rep.results:
            if not r.passed:
                failures += 1
                print(f"      FAIL {r.name}: {r.detail}")
    print(f"total {time.perf_counter() - t_start:.1f}s, seed={args.seed}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
