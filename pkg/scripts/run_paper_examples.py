"""Recompute the three single-point examples and diff them against the stored tables."""

import sys

from fuzclose.cli import main

if __name__ == "__main__":
    sys.exit(main(["examples", "run-paper"]))
