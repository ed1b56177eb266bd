#!/usr/bin/env python3
"""Stress the periodic step and its bound verifiers on seeded random corpora.

Runs three waves: density-drop instances through the drop verifier,
translate-inequality instances through the counting check, and grown
sum-free sets through the full periodic step.  Any falsification is
serialized to disk and the process exits with status 4, mirroring the
command line contract.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from sumfree import (
    Falsified,
    check_translate_inequality,
    fls_step,
    geometric_schedule,
    min_ap_length,
    serialize_instance,
    verify_density_drop,
)
from sumfree.harness import grow_k_sum_free, random_drop_instance, random_inequality_case


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=100, help="instances per wave")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument(
        "--falsified-out", default="falsified-instance.json",
        help="where to serialize a falsifying instance, should one appear",
    )
    args = parser.parse_args()

    rng = random.Random(args.seed)
    for trial in range(args.trials):
        k = 2 if trial % 2 == 0 else 3
        inst = random_drop_instance(k, rng, mirrored=(trial % 5 == 0))
        if verify_density_drop(inst, k) is not True:
            with open(args.falsified_out, "w", encoding="utf-8") as handle:
                handle.write(serialize_instance(inst))
            print(f"FALSIFIED density drop, instance at {args.falsified_out}")
            return 4
    print(f"density drop verified on {args.trials} instances")

    for trial in range(args.trials):
        k = 2 if trial % 2 == 0 else 3
        s, n, x, m, i = random_inequality_case(k, rng)
        if check_translate_inequality(s, n, x, m, i, k) is not True:
            print(f"FALSIFIED translate inequality: n={n} x={x} m={m} i={i} k={k}")
            return 4
    print(f"translate inequality verified on {args.trials} instances")

    outcomes: dict[str, int] = {}
    for trial in range(args.trials):
        k = 2 if trial % 2 == 0 else 3
        s = grow_k_sum_free(k, 600, rng=rng, include_probability=rng.uniform(0.4, 1.0))
        n0 = rng.randrange(30, 80)
        eps = Fraction(1, rng.randrange(8, 30))
        if s.upto(n0) and len(s.upto(n0)) * Fraction(1, n0) >= Fraction(1, k + 1) + eps:
            q = rng.randrange(1, 9)
            i = min_ap_length(k, eps)
            schedule = geometric_schedule(n0, Fraction(16 * k) / eps, k * n0)
            out = fls_step(s, k, n0, q, i, eps, schedule)
            outcomes[out.tag] = outcomes.get(out.tag, 0) + 1
            if isinstance(out, Falsified):
                with open(args.falsified_out, "w", encoding="utf-8") as handle:
                    handle.write(serialize_instance(out.instance))
                print(f"FALSIFIED periodic step, instance at {args.falsified_out}")
                return 4
    print(f"periodic step outcomes: {outcomes}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
