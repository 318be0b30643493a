#!/usr/bin/env python3
"""Scan for integers that are not sums of seven nonnegative cubes.

Runs the sieve-based reachability scan up to --limit, prints every value it
finds, and cross-checks the result against the frozen exception list.  With
--tables it also prints the stored five-cube and positive-seven-cube
representations of 125 times each exceptional value.
"""

import argparse
import sys

from sevencubes.search import (
    EXCEPTIONS,
    exception_scan,
    exceptional_cube_tables,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--limit", type=int, default=100_000)
    parser.add_argument("--tables", action="store_true",
                        help="print scaled cube representations as well")
    args = parser.parse_args()
    if args.limit < 455:
        parser.error("--limit must be at least 455 to cover the known list")

    found = exception_scan(args.limit)
    for n in found:
        print(n)
    if found != sorted(EXCEPTIONS):
        print(f"scan to {args.limit} disagrees with the frozen list", file=sys.stderr)
        return 1
    print(f"# {len(found)} values; none above 454 up to {args.limit}", file=sys.stderr)

    if args.tables:
        for n0, (five, seven_pos) in sorted(exceptional_cube_tables().items()):
            print(f"125*{n0}: five={list(five)} seven_positive={list(seven_pos)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
