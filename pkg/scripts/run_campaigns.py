#!/usr/bin/env python3
"""Run the standard audit campaigns and print a verdict table.

Examples:
    python scripts/run_campaigns.py                       # the default battery
    python scripts/run_campaigns.py --corpus all_connected:6 --theorems T-A:r=2
    python scripts/run_campaigns.py --jobs 4
"""

import argparse
import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from factorlab.constructions import corpus  # noqa: E402
from factorlab.theorems import campaign  # noqa: E402

DEFAULT_BATTERY = [
    ("all_connected:6", ["T-A:r=2", "T-RT:r=2", "T-MT:r=2,n=1", "T-24", "T-TC:m=1",
                         "T-IE:f=2", "T-A1:f=2", "T-NF:f=2", "T-LV:g=1,f=2", "T-1F"]),
    ("gnp:10:1/2:100", ["T-MT:r=2,n=1", "T-GF2:f=1", "T-CW"]),
]


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--corpus", default=None)
    ap.add_argument("--theorems", action="append", default=None)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    battery = (
        [(args.corpus, args.theorems)] if args.corpus else DEFAULT_BATTERY
    )
    worst = 0
    for corpus_spec, theorem_specs in battery:
        started = time.perf_counter()
        summary, reports = campaign(
            corpus(corpus_spec, args.seed), theorem_specs, jobs=args.jobs
        )
        elapsed = time.perf_counter() - started
        print(f"== corpus {corpus_spec} ({len(reports)} cases, {elapsed:.1f}s)")
        for tid, per in sorted(summary.counts.items()):
            row = "  ".join(f"{verdict}:{count}" for verdict, count in sorted(per.items()))
            print(f"  {tid:8s} {row}")
        for rep in summary.counterexamples:
            print(f"  !! COUNTEREXAMPLE {rep.theorem_id} on {rep.graph_id}")
            print(rep.graph_dump)
        worst = max(worst, 3 if summary.counterexamples else 0)
    sys.exit(worst)


if __name__ == "__main__":
    main()
