#!/usr/bin/env python3
"""Print the maximum sum-free fraction of diagonal grids as CSV."""

from __future__ import annotations

import argparse
import sys

from sumfree.experiments import run_ratio_experiment


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--k", type=int, default=2, help="sum arity")
    parser.add_argument("--m-max", type=int, default=3, help="largest diagonal grid")
    parser.add_argument("--budget", type=float, default=None, help="solver seconds per grid")
    parser.add_argument("--timing", action="store_true", help="include wall times")
    args = parser.parse_args()
    sys.stdout.write(run_ratio_experiment(args.k, args.m_max, budget=args.budget, timing=args.timing))
    return 0


if __name__ == "__main__":
    sys.exit(main())
