"""Root-path and inverse-map sweep over all branching numbers up to N."""

import argparse
import time

from collatz_branching import core
from collatz_branching.tree import verify_membership


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=10**6)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--budget", type=int, default=core.DEFAULT_STEP_BUDGET)
    args = ap.parse_args()

    start = time.perf_counter()
    r = verify_membership(args.n_max, args.threads, args.budget)
    elapsed = time.perf_counter() - start
    print(f"branching numbers <= {args.n_max}: {r.branching}")
    print(f"resolved root paths: {r.resolved}")
    print(f"longest word: {r.max_path_length} letters at n = {r.deepest}")
    print(f"unresolved: {len(r.unresolved)}  word failures: {len(r.word_failures)}")
    print(f"inverse failures: U {len(r.upward_oracle_failures)}, R {len(r.rightward_oracle_failures)}")
    print(f"elapsed {elapsed:.1f}s with {args.threads} worker(s)")
    return 0 if r.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
