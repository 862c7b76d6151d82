#!/usr/bin/env python3
"""Run both synthetic benchmark suites and print the CSV report."""

import argparse

from stackmine.bench import rows_to_csv, run_suite


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repetitions", type=int, default=10)
    parser.add_argument("--warmup", type=int, default=3)
    args = parser.parse_args()
    rows = []
    for suite in ("depth-scaling", "trace-length-scaling"):
        rows.extend(run_suite(suite, args.repetitions, args.warmup))
    print(rows_to_csv(rows), end="")


if __name__ == "__main__":
    main()
