#!/usr/bin/env python3
"""Measure the dilation extraction guarantee over seeded random sets."""

from __future__ import annotations

import argparse
import sys

from sumfree.experiments import run_extraction_experiment


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--k", type=int, default=2, help="sum arity")
    parser.add_argument("--trials", type=int, default=50)
    parser.add_argument("--size", type=int, default=30, help="elements per trial set")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--magnitude", type=int, default=10**6, help="largest element")
    parser.add_argument("--timing", action="store_true", help="include wall times")
    args = parser.parse_args()
    sys.stdout.write(
        run_extraction_experiment(
            args.k, args.trials, args.size, args.seed,
            magnitude=args.magnitude, timing=args.timing,
        )
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
