#!/usr/bin/env python3
"""Plot witness magnitudes from `spinwitness sweep` CSV output.

Reads one or more sweep CSV files (header: twice_j,delta,a01,a12,a23,
k_lgi,k_wlgi,k_nsit_signed,k_nsit_magnitude), and writes one PNG per
requested witness with the coarsening width on the x-axis and one curve
per spin.

Usage:
    spinwitness sweep --spins 3,6,9,12 --deltas 0,0.25,0.55,0.85 --output sweep.csv
    python3 scripts/plot_figures.py sweep.csv --out figures/
"""

import argparse
import csv
import sys
from collections import defaultdict
from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

WITNESS_LABELS = {
    "k_lgi": r"$K_{LGI}$",
    "k_wlgi": r"$K_{WLGI}$",
    "k_nsit_signed": r"$K_{NSIT}$ (signed)",
    "k_nsit_magnitude": r"$|K_{NSIT}|$",
}


def spin_label(twice_j: int) -> str:
    j = Fraction(twice_j, 2)
    return f"j = {j.numerator}" if j.denominator == 1 else f"j = {j.numerator}/2"


def read_rows(paths):
    rows = []
    for path in paths:
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            missing = {"twice_j", "delta"} - set(reader.fieldnames or [])
            if missing:
                sys.exit(f"{path}: not a sweep CSV (missing {sorted(missing)})")
            rows.extend(reader)
    if not rows:
        sys.exit("no rows found")
    return rows


def plot_witness(rows, witness, out_dir):
    curves = defaultdict(list)  # twice_j -> [(delta, value)]
    for row in rows:
        curves[int(row["twice_j"])].append((float(row["delta"]), float(row[witness])))

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for twice_j in sorted(curves):
        points = sorted(curves[twice_j])
        ax.plot(
            [p[0] for p in points],
            [p[1] for p in points],
            marker="o",
            label=spin_label(twice_j),
        )
    ax.set_xlabel(r"coarsening width $\Delta$ (rad)")
    ax.set_ylabel(WITNESS_LABELS.get(witness, witness))
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()

    out_path = Path(out_dir) / f"{witness}.png"
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("csv", nargs="+", help="sweep CSV file(s)")
    parser.add_argument("--out", default=".", help="output directory (default: .)")
    parser.add_argument(
        "--witness",
        action="append",
        choices=sorted(WITNESS_LABELS),
        help="witness column to plot (repeatable; default: k_wlgi and k_nsit_magnitude)",
    )
    args = parser.parse_args()

    witnesses = args.witness or ["k_wlgi", "k_nsit_magnitude"]
    Path(args.out).mkdir(parents=True, exist_ok=True)

    rows = read_rows(args.csv)
    for witness in witnesses:
        if rows and witness not in rows[0]:
            sys.exit(f"column '{witness}' not present in input")
        print(plot_witness(rows, witness, args.out))


if __name__ == "__main__":
    main()
