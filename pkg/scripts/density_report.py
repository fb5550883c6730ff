"""Cotree densities, their geometric series, and a census against counts."""

import argparse

from collatz_branching.automorphism import FAMILIES, cotree_spec
from collatz_branching.density import (
    census_report,
    decimal,
    default_census_sets,
    family_series,
    grand_total,
    FAMILY_MEMBERS,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-index", type=int, default=4)
    ap.add_argument("--n-max", type=int, default=10**6)
    args = ap.parse_args()

    print("cotree class sets")
    for family in FAMILIES:
        for i in range(1, args.max_index + 1):
            spec = cotree_spec(family, i)
            s = spec.node_classes
            print(f"  {spec.name:<4} {len(s):>7} classes mod {s.modulus:<9} density {s.density}")

    print("series")
    for family in FAMILY_MEMBERS:
        s = family_series(family)
        print(f"  {family:<12} {s.first_term} / (1 - {s.ratio}) = {s.closed_form}")
    g = grand_total()
    print(f"  total {g.unreduced} = {g.total} ({decimal(g.total)})")

    print(f"census up to {args.n_max}")
    for row in census_report(args.n_max, default_census_sets()):
        print(f"  {row.name:<4} count {row.count:>8}  expected {decimal(row.n * row.density, 2):>12}"
              f"  error {decimal(row.error, 2)}")
    return 0 if g.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
