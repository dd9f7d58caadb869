#!/usr/bin/env python3
"""Run every named verification campaign with one seed and print summaries.

Usage: python scripts/run_verifications.py [--seed N] [--trials N] [--out DIR]
"""

import argparse
from pathlib import Path

from cigrid.verify import VERIFICATIONS


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--out", help="directory for the individual reports")
    args = parser.parse_args()

    worst = 0
    for name, fn in sorted(VERIFICATIONS.items()):
        if name in ("example31", "example32", "intersection-axiom"):
            report = fn(trials=args.trials, seed=args.seed)
        else:
            report = fn(seed=args.seed)
        print(f"{name:20s} {report.status:12s} ({len(report.checks)} checks)")
        if args.out:
            out = Path(args.out)
            out.mkdir(parents=True, exist_ok=True)
            (out / f"{name}.txt").write_text(report.to_text())
            (out / f"{name}.json").write_text(report.to_json())
        worst = max(worst, report.exit_code)
    return worst


if __name__ == "__main__":
    raise SystemExit(main())
