#!/usr/bin/env python3
"""Run the acceptance gate and print one pass/fail line per criterion."""

import sys

from chartbench.acceptance import run_acceptance

if __name__ == "__main__":
    sys.exit(0 if run_acceptance() else 1)
