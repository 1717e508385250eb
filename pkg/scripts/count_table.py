#!/usr/bin/env python3
"""Write a CSV table of cubillage counts over a parameter grid.

Steps:
  1) Enumerate every requested class for each (n, d) in the grid
  2) Print one progress line per cell on stderr
  3) Write ``n,d,class,count`` rows to the output file (or stdout)

Usage:
  python scripts/count_table.py [--max-n N] [--classes all,symmetric,skew]
                                [--budget B] [--workers W] [--output FILE]
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from zonocube.config import load_settings
from zonocube.documents import write_document
from zonocube.enumeration import CubillageClass, enumerate_cubillages
from zonocube.errors import BudgetExceededError
from zonocube.export import counts_csv


def main(argv: list[str] | None = None) -> int:
    settings = load_settings()
    ap = argparse.ArgumentParser(description="Tabulate cubillage counts")
    ap.add_argument("--max-n", type=int, default=6, help="Largest number of colors")
    ap.add_argument(
        "--classes",
        default="all,symmetric,skew",
        help="Comma-separated classes to count",
    )
    ap.add_argument("--budget", type=int, default=settings.budget, help="Per-cell budget")
    ap.add_argument("--workers", type=int, default=settings.workers, help="Worker threads")
    ap.add_argument("--output", default="", help="CSV file (stdout if omitted)")
    args = ap.parse_args(argv)

    try:
        classes = [CubillageClass(c.strip()) for c in args.classes.split(",") if c.strip()]
    except ValueError as exc:
        print(f"Unknown class: {exc}", file=sys.stderr)
        return 2

    rows = []
    t0 = time.monotonic()
    for n in range(2, args.max_n + 1):
        for d in range(1, n):
            for cls in classes:
                try:
                    count = len(
                        enumerate_cubillages(n, d, cls, budget=args.budget, workers=args.workers)
                    )
                except BudgetExceededError:
                    print(f"  ({n},{d}) {cls.value}: over budget, skipped", file=sys.stderr)
                    continue
                rows.append((n, d, cls.value, count))
                elapsed = time.monotonic() - t0
                print(
                    f"  ({n},{d}) {cls.value}: {count}  [{int(elapsed)//60:02d}:{int(elapsed)%60:02d}]",
                    file=sys.stderr,
                )

    text = counts_csv(rows)
    if args.output:
        write_document(Path(args.output), text)
        print(f"Wrote {len(rows)} rows to {args.output}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
