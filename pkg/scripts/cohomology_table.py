#!/usr/bin/env python3
"""Print the degree-wise cohomology table for a preset algebra.

For each degree: dimension, boundary rank and nullity, and the basis
representatives.  Optionally re-runs the ring presentation checks.
"""

import argparse
import sys
import time

sys.path.insert(0, "src")

from dgfree import (GF, QQ, boundary_rank, cohomology_basis, preset_algebra,
                    preset_presentation, ring_presentation_check)
from dgfree.cohomology import boundary_nullity


def print_table(name, field, max_degree, check_presentation):
    a = preset_algebra(name, field)
    print("preset %s over %s" % (name, field))
    print("%3s %5s %6s %9s  %s" % ("d", "dim", "rank", "nullity", "basis"))
    start = time.perf_counter()
    for d in range(max_degree + 1):
        basis = cohomology_basis(a, d)
        reps = ", ".join(a.render(c.representative) for c in basis)
        print("%3d %5d %6d %9d  %s"
              % (d, len(basis), boundary_rank(a, d), boundary_nullity(a, d), reps))
    print("computed in %.2fs" % (time.perf_counter() - start))
    if check_presentation:
        report = ring_presentation_check(a, preset_presentation(name, a),
                                         max_degree=max_degree)
        for c in report["checks"]:
            subject = c.get("name") or c.get("word") or c.get("pair") \
                or "degree %s" % c.get("degree")
            print("  %-12s %-28s %s"
                  % (c["check"], subject, "ok" if c["pass"] else "FAIL"))
        print("presentation: %s" % ("pass" if report["pass"] else "FAIL"))
        return report["pass"]
    return True


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--preset", default="both", choices=["a1", "a2", "both"])
    parser.add_argument("--max-degree", type=int, default=6)
    parser.add_argument("--prime", type=int, default=0,
                        help="work over GF(p) instead of the rationals")
    parser.add_argument("--skip-presentation", action="store_true")
    args = parser.parse_args(argv)
    field = GF(args.prime) if args.prime else QQ
    names = ["a1", "a2"] if args.preset == "both" else [args.preset]
    ok = True
    for name in names:
        ok = print_table(name, field, args.max_degree,
                         not args.skip_presentation) and ok
        print()
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
