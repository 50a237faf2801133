#!/usr/bin/env python3
"""Plot CCDF curves from a paprlab CSV (log-scale probability axis)."""

import argparse
import csv

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv_path", help="CSV produced by the paprlab CLI")
    ap.add_argument("--out", default=None, help="output image (default: <csv>.png)")
    ap.add_argument("--floor", type=float, default=1e-3, help="lowest probability shown")
    args = ap.parse_args()

    with open(args.csv_path, encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    header, data = rows[0], rows[1:]
    thresholds = [float(r[0]) for r in data]

    fig, ax = plt.subplots(figsize=(7, 5))
    for col in range(1, len(header)):
        prob = [float(r[col]) for r in data]
        label = header[col].removeprefix("ccdf_")
        ax.semilogy(thresholds, prob, label=label)
    ax.set_xlabel("PAPR threshold (dB)")
    ax.set_ylabel("P(PAPR > threshold)")
    ax.set_ylim(bottom=args.floor)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    out = args.out or args.csv_path + ".png"
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
