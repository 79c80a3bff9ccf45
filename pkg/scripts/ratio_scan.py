#!/usr/bin/env python3
"""Scan witness families and tabulate certified pattern-free fractions.

Emits CSV rows (family, pattern, index, optimum, edges, ratio, formula_cap)
for three family/pattern pairs whose fractions decay toward their limits:
double paths vs the chord pattern, big matchings vs small ones, and the
nested hosts vs the covering matching.
"""

import argparse
import csv
import sys
from fractions import Fraction

from ordturan import catalog, solver


def rows_for(name, family, pattern_name, pattern, indices, cap):
    results = solver.rho_upper_from_witness(family, pattern, indices)
    for r in results:
        yield {
            "family": name,
            "pattern": pattern_name,
            "index": r.index,
            "optimum": r.optimum,
            "edges": r.edges,
            "ratio": str(r.ratio),
            "certified": r.certified,
            "formula_cap": str(cap(r.index)),
        }


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-ell", type=int, default=6)
    ap.add_argument("--max-k", type=int, default=10)
    ap.add_argument("--max-d", type=int, default=3)
    args = ap.parse_args()

    writer = csv.DictWriter(
        sys.stdout,
        fieldnames=(
            "family", "pattern", "index", "optimum", "edges",
            "ratio", "certified", "formula_cap",
        ),
    )
    writer.writeheader()
    writer.writerows(
        rows_for(
            "B:2", lambda ell: catalog.build_B(2, 2 * ell + 1),
            "Q:2,2", catalog.build_Q(2, 2),
            range(2, args.max_ell + 1),
            lambda ell: Fraction(2, 3) + Fraction(1, 3 * ell),
        )
    )
    writer.writerows(
        rows_for(
            "M", catalog.build_M,
            "M:2", catalog.build_M(2),
            range(3, args.max_k + 1),
            lambda k: Fraction(1, k),
        )
    )
    writer.writerows(
        rows_for(
            "Hd", catalog.build_H_d,
            "pat:1-6,2-3,4-5", catalog.build_pattern([(1, 6), (2, 3), (4, 5)]),
            range(1, args.max_d + 1),
            lambda d: Fraction(2, d),
        )
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
