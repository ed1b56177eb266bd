"""Seeded generators for the randomized corpora used by tests and experiments.

Everything here is deterministic given the supplied random.Random, so a
corpus is identified by its seed.  The growers maintain bitsets of
iterated sums, which makes the incremental k-sum-free check exact and
cheap even near the data horizon.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .core import IntSet, _require_arity
from .errors import InvalidParameterError
from .periodic import DensityDropInstance, geometric_schedule


def random_int_set(rng: random.Random, size: int, magnitude: int) -> IntSet:
    """size distinct integers drawn uniformly from [1, magnitude]."""
    if size < 1:
        raise InvalidParameterError(f"size must be >= 1, got {size}")
    if magnitude < size:
        raise InvalidParameterError(
            f"magnitude {magnitude} cannot host {size} distinct elements"
        )
    return IntSet.of(rng.sample(range(1, magnitude + 1), size))


def grow_k_sum_free(
    k: int,
    horizon: int,
    rng: random.Random = None,
    include_probability: float = 1.0,
    seed_elements: Sequence[int] = (),
) -> IntSet:
    """Greedy k-sum-free set on [1, horizon], optionally thinned at random.

    Seed elements are committed first and must be jointly k-sum-free.
    Then candidates 1..horizon are taken in order, each kept with the
    given probability when doing so preserves k-sum-freeness.  With
    probability 1 and no seeds this is the deterministic greedy set.
    """
    _require_arity(k)
    if horizon < 1:
        raise InvalidParameterError(f"horizon must be >= 1, got {horizon}")
    if not 0.0 <= include_probability <= 1.0:
        raise InvalidParameterError(
            f"include probability must lie in [0, 1], got {include_probability}"
        )
    if include_probability < 1.0 and rng is None:
        raise InvalidParameterError("thinning requires a random generator")
    window = (1 << (horizon + 1)) - 1
    members = 0
    sums = [0] * (k + 1)
    sums[0] = 1

    def addable(x: int) -> bool:
        if sums[k] >> x & 1:
            return False
        for c in range(1, k + 1):
            if (sums[k - c] << (c * x)) & members:
                return False
        return True

    def commit(x: int) -> None:
        nonlocal members
        members |= 1 << x
        for j in range(1, k + 1):
            sums[j] = (sums[j] | (sums[j - 1] << x)) & window

    for x in seed_elements:
        if not 1 <= x <= horizon:
            raise InvalidParameterError(f"seed element {x} is outside [1, {horizon}]")
        if members >> x & 1:
            continue
        if not addable(x):
            raise InvalidParameterError("seed elements are not jointly k-sum-free")
        commit(x)
    for x in range(1, horizon + 1):
        if members >> x & 1:
            continue
        if include_probability < 1.0 and rng.random() > include_probability:
            continue
        if addable(x):
            commit(x)
    return IntSet.of(x for x in range(1, horizon + 1) if members >> x & 1)


def find_progressions(
    s: IntSet, n0: int, ap_length: int, max_step: int
) -> list[tuple[int, int]]:
    """All (start, step) of length-ap_length progressions in s ∩ [1, n0]."""
    if ap_length < 2:
        raise InvalidParameterError(f"progression search needs length >= 2, got {ap_length}")
    members = set(s.upto(n0).elements)
    found = []
    for m in range(1, max_step + 1):
        for x in sorted(members):
            if x + (ap_length - 1) * m > n0:
                break
            if all(x + j * m in members for j in range(1, ap_length)):
                found.append((x, m))
    return found


def random_drop_instance(
    k: int, rng: random.Random, mirrored: bool = False, max_attempts: int = 400
) -> DensityDropInstance:
    """A hypothesis-satisfying density-drop instance with the requested orientation.

    Grows a thinned k-sum-free set, locates a progression inside the
    horizon, then picks a compatible signed difference on the requested
    side of the progression start.  The schedule uses the stronger
    16k/eps growth ratio so every ratio hypothesis is met with room.
    """
    _require_arity(k)
    for _ in range(max_attempts):
        horizon = rng.randrange(300, 700)
        prob = rng.uniform(0.25, 0.7)
        s = grow_k_sum_free(k, horizon, rng, prob)
        if len(s) < 10:
            continue
        n0 = rng.randrange(30, 90)
        ap_length = rng.randrange(1, 5)
        if ap_length == 1:
            step = rng.randrange(1, 7)
            choices = [(a, step) for a in s.upto(n0)]
        else:
            choices = find_progressions(s, n0, ap_length, max_step=8)
        if not choices:
            continue
        x, m = choices[rng.randrange(len(choices))]
        restricted = s.upto(n0).elements
        sums = {0}
        for _ in range(k - 1):
            sums = {t + a for t in sums for a in restricted}
        diffs = {u - t for u in restricted for t in sums}
        if mirrored:
            compatible = sorted(d for d in diffs if d > x and (d - x) % m == 0)
        else:
            compatible = sorted(d for d in diffs if d < x and (d - x) % m == 0)
        if not compatible:
            continue
        d = compatible[rng.randrange(len(compatible))]
        eps = Fraction(1, rng.randrange(8, 40))
        schedule = geometric_schedule(n0, Fraction(16 * k) / eps, k * n0)
        return DensityDropInstance(
            elements=s,
            n0=n0,
            ap_start=x,
            ap_step=m,
            ap_length=ap_length,
            difference=d,
            eps=eps,
            schedule=schedule,
            k=k,
        )
    raise InvalidParameterError(
        f"no drop instance found in {max_attempts} attempts; widen the budget"
    )


def random_inequality_case(
    k: int, rng: random.Random, max_attempts: int = 200
) -> tuple[IntSet, int, int, int, int]:
    """A k-sum-free set with a progression, for the translate counting bound.

    Returns (set, count horizon n, start x, step m, length i).  When the
    thinned grower yields no natural progression, one is planted high
    enough that its terms are jointly k-sum-free by size alone.
    """
    _require_arity(k)
    for _ in range(max_attempts):
        horizon = rng.randrange(200, 600)
        prob = rng.uniform(0.3, 0.8)
        i = rng.randrange(1, 6)
        s = grow_k_sum_free(k, horizon, rng, prob)
        if i == 1:
            if not s:
                continue
            x = s.elements[rng.randrange(len(s))]
            m = rng.randrange(1, 9)
        else:
            choices = find_progressions(s, horizon, i, max_step=8)
            if choices:
                x, m = choices[rng.randrange(len(choices))]
            else:
                m = rng.randrange(1, 9)
                lo = max(horizon // 2, (i - 1) * m + 1)
                hi = horizon - (i - 1) * m
                if lo >= hi:
                    continue
                x = rng.randrange(lo, hi)
                terms = [x + j * m for j in range(i)]
                s = grow_k_sum_free(k, horizon, rng, prob, seed_elements=terms)
        n = rng.randrange(horizon // 2, horizon + 50)
        return (s, n, x, m, i)
    raise InvalidParameterError(
        f"no inequality case found in {max_attempts} attempts; widen the budget"
    )
