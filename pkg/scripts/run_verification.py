"""Run the oracle-equivalence suite from a shell.

Exit status 0 when every check passes, 1 otherwise.
"""
import argparse
import sys
import time

from qmatops import run_all_checks


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--matrices", type=int, default=200,
                        help="size of the random-matrix suite")
    args = parser.parse_args()

    started = time.perf_counter()
    results = run_all_checks(seed=args.seed, matrices=args.matrices)
    elapsed = time.perf_counter() - started
    for result in results:
        flag = "PASS" if result.passed else "FAIL"
        print(f"[{flag}] {result.name}: {result.detail}")
    good = sum(result.passed for result in results)
    print(f"{good}/{len(results)} checks passed in {elapsed:.1f}s")
    return 0 if good == len(results) else 1


if __name__ == "__main__":
    sys.exit(main())
