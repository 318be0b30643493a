#!/usr/bin/env python3
"""Regenerate the packaged golden tables under src/sevencubes/data/.

Each table is recomputed from scratch and compared with the checked-in copy;
files are rewritten only with --write.  Exit status 1 means at least one
regenerated table differs from its packaged version.
"""

import argparse
import sys
from pathlib import Path

from sevencubes.certify import steering_table_text
from sevencubes.modulus import table2_text
from sevencubes.search import exceptional_table_text

TABLES = {
    "table1.txt": steering_table_text,
    "table2.txt": table2_text,
    "exceptional.txt": exceptional_table_text,
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--write", action="store_true", help="rewrite differing files")
    args = parser.parse_args()

    data_dir = Path(__file__).resolve().parent.parent / "src" / "sevencubes" / "data"
    status = 0
    for name, generator in sorted(TABLES.items()):
        path = data_dir / name
        fresh = generator()
        current = path.read_text() if path.exists() else None
        if fresh == current:
            print(f"{name}: up to date")
            continue
        if args.write:
            path.write_text(fresh)
            print(f"{name}: rewritten")
        else:
            print(f"{name}: differs from regenerated table (use --write)")
            status = 1
    return status


if __name__ == "__main__":
    sys.exit(main())
