#!/usr/bin/env python3
"""Tabulate the dilation defect of diagonal grids against the closed form."""

from __future__ import annotations

import argparse
import sys

from sumfree.experiments import run_defect_experiment


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--a", type=int, default=2, help="dilation multiplier")
    parser.add_argument("--m-max", type=int, default=8, help="largest diagonal grid")
    args = parser.parse_args()
    sys.stdout.write(run_defect_experiment(args.a, args.m_max))
    return 0


if __name__ == "__main__":
    sys.exit(main())
