#!/usr/bin/env python3
"""Run the full certification battery and print one JSON document.

By default every certificate runs at its full documented scale (primes to
10**7, the 48-class admissible battery to 10**6); --quick shrinks the ranges
for a fast smoke run.  Exit status is 0 iff every section reports ok.
"""

import argparse
import json
import sys
import time
from fractions import Fraction

from sevencubes.certify import (
    admissible_gap_certificate,
    constants_report,
    dickson_report,
    identity_report,
    prime_gap_certificate,
    steering_table_report,
    steering_uniqueness_report,
    window_report,
)


def gap_section(quick: bool) -> dict:
    prime_hi = 10**6 if quick else 10**7
    class_hi = 500_000 if quick else 10**6
    prime_bound = Fraction(1006, 1000)
    class_bound = Fraction(26669, 26141)
    primes = [
        prime_gap_certificate(r, 12, 26669, prime_hi, bound=prime_bound).to_record()
        for r in (5, 11)
    ]
    classes = [c for c in range(1, 100, 2) if c not in (25, 75)]
    battery = [
        admissible_gap_certificate(c, 382_670, class_hi, bound=class_bound)
        for c in classes
    ]
    worst = max(battery, key=lambda cert: cert.max_ratio)
    demo = admissible_gap_certificate(37, 90_000, 100_000)
    return {
        "primes": primes,
        "admissible_demo": demo.to_record(),
        "admissible_classes": len(battery),
        "admissible_worst": worst.to_record(),
        "ok": all(c["satisfied"] for c in primes)
        and all(c.satisfied for c in battery),
    }


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="shrink scan ranges")
    parser.add_argument("--samples", type=int, default=100_000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    t0 = time.perf_counter()
    payload = {
        "constants": constants_report(),
        "steering": steering_table_report(),
        "steering_uniqueness": steering_uniqueness_report(),
        "window": window_report(),
        "identity": identity_report(args.samples, args.seed),
        "dickson": dickson_report(20_000 if args.quick else 100_000),
        "gaps": gap_section(args.quick),
    }
    payload["ok"] = all(section["ok"] for section in payload.values())
    payload["elapsed_seconds"] = round(time.perf_counter() - t0, 3)
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0 if payload["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
