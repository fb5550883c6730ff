"""Recompute the base class sets and diff them against the stored listings."""

import argparse
import json
import time

from collatz_branching.tables import base_sets, table_report


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dump", help="write the computed sets as JSON here")
    args = ap.parse_args()

    start = time.perf_counter()
    diffs = table_report()
    elapsed = time.perf_counter() - start
    for d in diffs:
        status = "ok" if d.ok else "MISMATCH"
        listing = "listed" if d.listed else "counts only"
        print(f"{d.name:<5} mod {d.modulus:<5} {listing:<11} counts {d.counts_found}  {status}")
        if d.missing or d.extra:
            print(f"      missing {d.missing}\n      extra   {d.extra}")
    print(f"{sum(d.ok for d in diffs)}/{len(diffs)} sets agree in {elapsed:.3f}s")

    if args.dump:
        with open(args.dump, "w") as fh:
            json.dump({k: v.to_json() for k, v in base_sets().items()}, fh, indent=1)
    return 0 if all(d.ok for d in diffs) else 1


if __name__ == "__main__":
    raise SystemExit(main())
