#!/usr/bin/env python3
"""Covering radius by syndrome BFS for a range of extension degrees.

Usage: python scripts/run_covering_radius.py [--m 4 5 6 7] [--allow-large]

m = 8 and m = 9 need --allow-large (the m = 9 state is a 2^27-entry
table and the sweep takes around a quarter hour).
"""

import argparse
import json
import time

from bch3 import oracle


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--m", type=int, nargs="+", default=[4, 5, 6, 7])
    parser.add_argument("--allow-large", action="store_true")
    args = parser.parse_args()

    for m in args.m:
        start = time.perf_counter()
        report = oracle.covering_radius(m, allow_large=args.allow_large)
        payload = report.to_json_dict()
        payload["elapsed_s"] = round(time.perf_counter() - start, 3)
        print(json.dumps(payload))


if __name__ == "__main__":
    main()
