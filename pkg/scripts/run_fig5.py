#!/usr/bin/env python3
"""Scheme comparison at N=8: baseline, SLM (Walsh/Golay, U=2), full permutation search.

Writes fig5.csv and fig5.meta.json into the current directory; pass extra
CLI flags (e.g. --seed 7 --out elsewhere.csv) to override.
"""

import sys

from paprlab.cli import main

if __name__ == "__main__":
    sys.exit(main(["fig5", "--out", "fig5.csv", "--meta-out", "fig5.meta.json", *sys.argv[1:]]))
