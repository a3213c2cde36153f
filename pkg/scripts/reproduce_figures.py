"""Write the throughput-vs-correlation, ROC and throughput-vs-power CSVs.

    python scripts/reproduce_figures.py [outdir] [--exact-rate]

By default the LBT rate uses the high-SNR formula, which gives the single
switching point per configuration; --exact-rate uses the Monte-Carlo rate.
"""

import argparse
import sys
from pathlib import Path

from listentalk.cli import main

RUNS = {
    "throughput_vs_beta.csv": ["sweep-beta"],
    "roc.csv": ["roc"],
    "throughput_vs_power.csv": ["sweep-power"],
    "switch.csv": ["switch"],
}


def run(outdir: Path, exact_rate: bool, seed: int) -> int:
    outdir.mkdir(parents=True, exist_ok=True)
    status = 0
    for name, cmd in RUNS.items():
        argv = [*cmd, "--seed", str(seed), "--out", str(outdir / name)]
        if not exact_rate:
            argv.append("--approx-rate")
        print(f"== {' '.join(argv)}", file=sys.stderr)
        status |= main(argv)
    return status


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("outdir", nargs="?", default="results")
    ap.add_argument("--exact-rate", action="store_true")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    sys.exit(run(Path(args.outdir), args.exact_rate, args.seed))
