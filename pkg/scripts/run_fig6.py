#!/usr/bin/env python3
"""Candidate-budget sweep at N=8: sampled search with K in {8,100,500,1000} vs full search.

Writes fig6.csv and fig6.meta.json into the current directory; extra CLI
flags override.
"""

import sys

from paprlab.cli import main

if __name__ == "__main__":
    sys.exit(main(["fig6", "--out", "fig6.csv", "--meta-out", "fig6.meta.json", *sys.argv[1:]]))
