"""Run every seeded property suite over several seeds and write a JSON summary.

Usage: python3 scripts/run_property_suites.py [--seeds 0 1 2] [--scale 1.0] [--out results.json]
"""
import argparse
import json
import time

from halg.properties import DEFAULT_COUNTS, SUITES


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    ap.add_argument("--scale", type=float, default=1.0, help="multiplier on the default instance counts")
    ap.add_argument("--suite", choices=sorted(SUITES), action="append")
    ap.add_argument("--out")
    args = ap.parse_args()
    rows = []
    failed = 0
    for name in args.suite or list(SUITES):
        count = max(1, round(DEFAULT_COUNTS[name] * args.scale))
        for seed in args.seeds:
            t0 = time.perf_counter()
            for r in SUITES[name](count, seed):
                print(r.summary())
                failed += not r.passed
                rows.append({**r.as_dict(), "seconds": round(time.perf_counter() - t0, 2)})
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(rows, fh, indent=2)
    print(f"\n{len(rows) - failed}/{len(rows)} suite runs passed")
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
