#!/usr/bin/env python3
"""Frame-size sweep: baseline vs permutation search at N in {4, 8, 16}.

Writes fig7.csv and fig7.meta.json into the current directory; extra CLI
flags override.
"""

import sys

from paprlab.cli import main

if __name__ == "__main__":
    sys.exit(main(["fig7", "--out", "fig7.csv", "--meta-out", "fig7.meta.json", *sys.argv[1:]]))
