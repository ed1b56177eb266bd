"""Dilation extraction: large k-sum-free subsets via rotations of an arc.

Write P = k*k - 1.  The open arc S = (1/P, k/P) on the unit circle is
k-sum-free: the sum of any k of its points falls in the complementary arc.
For a real x, the slice A_x = {a in A : frac(a*x) in S} is therefore a
k-sum-free subset of A, and averaging over x shows E|A_x| = |A|/(k+1),
so some dilator x achieves at least the ceiling of that.

Three ways to pick x:

* ``sweep``    - x -> |A_x| is piecewise constant with breakpoints
  (e + j)/a over a in A, e an arc endpoint, 0 <= j < a.  Evaluating the
  midpoint of every consecutive breakpoint pair in exact rationals gives
  the true maximum and the first interval attaining it.  Cost grows with
  sum(A), so this is for moderate element sizes.
* ``descent``  - bisection steered by conditional expectation: keep the
  half-interval on which the average of |A_x| is larger until the interval
  sits inside one constancy region.  The average never drops below
  |A|/(k+1), so the landing slice meets the guarantee.  Cost is
  O(|A| log max(A)) regardless of element size.
* ``sampled``  - seeded random dilators, for quick exploration; no
  optimality claim, but every slice is still verified k-sum-free.

There are also finite averaging variants: over a multiplicative grid F
with a designated k-sum-free S inside it, and the measure-weighted form of
the same thing.  Both report the exact lower bound the averaging argument
proves, and this module checks those bounds and the sum-freeness of every
returned subset, loudly, since a failure would mean a bug rather than bad
input.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import IntSet, is_k_sum_free, _require_arity
from .errors import FalsificationError, InvalidParameterError
from .measures import RationalMeasure

DEFAULT_SWEEP_CAP = 50_000


@dataclass(frozen=True)
class OpenInterval:
    """Open subinterval (lo, hi) of [0, 1], endpoints exact rationals."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if not (0 <= self.lo < self.hi <= 1):
            raise InvalidParameterError(f"need 0 <= lo < hi <= 1, got ({self.lo}, {self.hi})")

    def length(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, value: Fraction) -> bool:
        return self.lo < value < self.hi


def erdos_interval(k: int) -> OpenInterval:
    """The arc of length 1/(k+1) centred at 1/(2k-2): (1/(k^2-1), k/(k^2-1))."""
    _require_arity(k)
    p = k * k - 1
    return OpenInterval(Fraction(1, p), Fraction(k, p))


def interval_is_k_sum_free(k: int) -> bool:
    """Exact check that k points of the arc can never sum into the arc (mod 1)."""
    _require_arity(k)
    arc = erdos_interval(k)
    lo, hi = arc.lo, arc.hi
    # the k-fold sumset of (lo, hi) is the open arc (k*lo, k*hi) reduced mod 1
    shift = (k * lo).__floor__()
    s = k * lo - shift
    e = k * hi - shift
    if e <= 1:
        return e <= lo or s >= hi
    return s >= hi and e - 1 <= lo


@dataclass(frozen=True)
class ExtractionResult:
    """A dilator, the slice it produces, its score, and any proven lower bound."""

    dilator: "Fraction | int"
    subset: IntSet
    score: "int | Fraction"
    lower_bound: Optional[Fraction] = None
    method: str = ""


def _slice_members(elements: tuple[int, ...], x: Fraction, k: int) -> list[int]:
    """Elements a with frac(a*x) strictly inside the arc, by integer arithmetic."""
    p = k * k - 1
    num, den = x.numerator, x.denominator
    out = []
    for a in elements:
        residue = (a * num) % den
        scaled = p * residue
        if den < scaled < k * den:
            out.append(a)
    return out


def _member_measure(a: int, k: int, p: int, y: Fraction) -> Fraction:
    """Length of {x in [0, y) : frac(a*x) in the arc}, via closed-form arc counting."""
    if y <= 0:
        return Fraction(0)
    q = y * p * a
    full = (q - k) // p + 1
    if full < 0:
        full = 0
    elif full > a:
        full = a
    g = Fraction((k - 1) * full)
    if full <= a - 1:
        start = 1 + full * p
        if q > start:
            g += q - start
    return g / (p * a)


def _region_around(
    elements: tuple[int, ...], k: int, p: int, x: Fraction
) -> Optional[tuple[Fraction, Fraction]]:
    """Largest breakpoint-free open interval around x, or None if x is a breakpoint."""
    prev = Fraction(0)
    nxt = Fraction(1)
    for a in elements:
        base = x * p * a
        for t in (1, k):
            j = (base - t) // p
            if j >= 0:
                if j > a - 1:
                    j = a - 1
                candidate = Fraction(t + j * p, p * a)
                if candidate == x:
                    return None
                if candidate > prev:
                    prev = candidate
            j2 = j + 1 if j >= 0 else 0
            if j2 <= a - 1:
                candidate = Fraction(t + j2 * p, p * a)
                if candidate < nxt:
                    nxt = candidate
    return prev, nxt


def _sweep(elements: tuple[int, ...], k: int) -> tuple[int, Fraction]:
    """Exact maximum of |A_x| and the midpoint of the first maximizing interval."""
    p = k * k - 1
    points = {Fraction(0), Fraction(1)}
    for a in elements:
        for j in range(a):
            points.add(Fraction(1 + j * p, p * a))
            points.add(Fraction(k + j * p, p * a))
    ordered = sorted(points)
    best_count = -1
    best_mid = Fraction(0)
    for left, right in zip(ordered, ordered[1:]):
        mid = (left + right) / 2
        count = len(_slice_members(elements, mid, k))
        if count > best_count:
            best_count = count
            best_mid = mid
    return best_count, best_mid


def _descend(elements: tuple[int, ...], k: int) -> tuple[Fraction, Fraction]:
    """Conditional-expectation bisection down to one constancy region.

    Invariant: the average of |A_x| over the current interval never drops,
    so it stays at least |A|/(k+1); the final region's constant value equals
    that average, which is how the guarantee survives derandomization.
    """
    p = k * k - 1
    xl, xr = Fraction(0), Fraction(1)
    mass_l = Fraction(0)
    mass_r = sum(_member_measure(a, k, p, Fraction(1)) for a in elements)
    for _ in range(200):
        xm = (xl + xr) / 2
        region = _region_around(elements, k, p, xm)
        if region is not None and region[0] <= xl and xr <= region[1]:
            return region
        mass_m = sum(_member_measure(a, k, p, xm) for a in elements)
        if mass_m - mass_l >= mass_r - mass_m:
            xr, mass_r = xm, mass_m
        else:
            xl, mass_l = xm, mass_m
    raise FalsificationError("expectation descent failed to localize a constancy region")


def _finalize_circle_result(
    s: IntSet, k: int, dilator: Fraction, method: str, require_guarantee: bool
) -> ExtractionResult:
    subset = IntSet(tuple(_slice_members(s.elements, dilator, k)))
    if not is_k_sum_free(subset, k):
        raise FalsificationError(
            f"arc slice at {dilator} is not {k}-sum-free; this should be impossible"
        )
    score = len(subset)
    if require_guarantee and score * (k + 1) < len(s):
        raise FalsificationError(
            f"extraction score {score} fell below |A|/(k+1) = {len(s)}/{k + 1}"
        )
    return ExtractionResult(dilator, subset, score, None, method)


def extract_dilate_exhaustive(
    s: IntSet, k: int, method: str = "auto", sweep_cap: int = DEFAULT_SWEEP_CAP
) -> ExtractionResult:
    """Deterministic dilation extraction; score is at least ceil(|A|/(k+1)).

    ``method="sweep"`` computes the exact maximum of |A_x| over all x by the
    full breakpoint sweep.  ``method="descent"`` runs the expectation
    bisection, which meets the same guarantee at any element size but does
    not claim global optimality.  ``auto`` sweeps when the breakpoint count
    2*sum(A) stays under ``sweep_cap`` and descends otherwise.
    """
    _require_arity(k)
    if not s:
        raise InvalidParameterError("cannot extract from the empty set")
    if not interval_is_k_sum_free(k):
        raise FalsificationError(f"arc for k={k} failed its sum-freeness check")
    if method == "auto":
        method = "sweep" if 2 * sum(s.elements) + 2 <= sweep_cap else "descent"
    if method == "sweep":
        count, mid = _sweep(s.elements, k)
        result = _finalize_circle_result(s, k, mid, "sweep", require_guarantee=True)
        if result.score != count:
            raise FalsificationError("sweep maximizer does not reproduce its count")
        return result
    if method == "descent":
        left, right = _descend(s.elements, k)
        return _finalize_circle_result(
            s, k, (left + right) / 2, "descent", require_guarantee=True
        )
    raise InvalidParameterError(f"unknown extraction method {method!r}")


def extract_dilate_sampled(s: IntSet, k: int, samples: int, seed: int) -> ExtractionResult:
    """Best slice over seeded random dilators; no optimality guarantee."""
    _require_arity(k)
    if not s:
        raise InvalidParameterError("cannot extract from the empty set")
    if samples < 1:
        raise InvalidParameterError(f"need at least one sample, got {samples}")
    rng = random.Random(seed)
    best: Optional[tuple[int, Fraction]] = None
    for _ in range(samples):
        x = Fraction(rng.getrandbits(53), 1 << 53)
        count = len(_slice_members(s.elements, x, k))
        if best is None or count > best[0]:
            best = (count, x)
    assert best is not None
    return _finalize_circle_result(s, k, best[1], "sampled", require_guarantee=False)


def extract_dilate_folner(s: IntSet, f: IntSet, inner: IntSet, k: int) -> ExtractionResult:
    """Best slice A_x = {a : a*x in S} over grid dilators x in F.

    S must be a k-sum-free subset of F.  The averaging bound
    max_x |A_x| >= (|S|/|F|)*|A| - sum_a |aF △ F|/|F| is reported as
    ``lower_bound`` and enforced.
    """
    from .folner import set_dilation_defect

    _require_arity(k)
    if not s or not f:
        raise InvalidParameterError("both the source set and the grid must be nonempty")
    if any(x not in f for x in inner):
        raise InvalidParameterError("designated sum-free set must sit inside the grid")
    if not is_k_sum_free(inner, k):
        raise InvalidParameterError(f"designated subset is not {k}-sum-free")
    inner_members = set(inner.elements)
    best_x = None
    best_subset: tuple[int, ...] = ()
    for x in f.elements:
        subset = tuple(a for a in s.elements if a * x in inner_members)
        if best_x is None or len(subset) > len(best_subset):
            best_x = x
            best_subset = subset
    assert best_x is not None
    density = Fraction(len(inner), len(f))
    bound = density * len(s) - sum(set_dilation_defect(f, a) for a in s.elements)
    if len(best_subset) < bound:
        raise FalsificationError(
            f"grid extraction score {len(best_subset)} fell below its proven bound {bound}"
        )
    subset = IntSet(best_subset)
    if not is_k_sum_free(subset, k):
        raise FalsificationError("grid slice is not sum-free; this should be impossible")
    return ExtractionResult(best_x, subset, len(best_subset), bound, "folner")


def extract_dilate_measure(
    f: IntSet, inner: IntSet, m: RationalMeasure, k: int
) -> ExtractionResult:
    """Measure-weighted grid extraction: maximize mu(A_x) over dilators x in F.

    Same averaging as the counting form, weighted: the reported bound is
    (|S|/|F|)*mass(mu) - sum_a mu(a)*|aF △ F|/|F|.
    """
    from .folner import set_dilation_defect

    _require_arity(k)
    if not f:
        raise InvalidParameterError("the grid must be nonempty")
    if any(x not in f for x in inner):
        raise InvalidParameterError("designated sum-free set must sit inside the grid")
    if not is_k_sum_free(inner, k):
        raise InvalidParameterError(f"designated subset is not {k}-sum-free")
    inner_members = set(inner.elements)
    support = m.support()
    best_x = None
    best_weight = Fraction(-1)
    best_subset: tuple[int, ...] = ()
    for x in f.elements:
        subset = tuple(a for a in support if a * x in inner_members)
        weight = sum((m.weight_at(a) for a in subset), Fraction(0))
        if best_x is None or weight > best_weight:
            best_x = x
            best_weight = weight
            best_subset = subset
    assert best_x is not None
    density = Fraction(len(inner), len(f))
    bound = density * m.mass - sum(
        m.weight_at(a) * set_dilation_defect(f, a) for a in support
    )
    if best_weight < bound:
        raise FalsificationError(
            f"measure extraction score {best_weight} fell below its proven bound {bound}"
        )
    subset = IntSet(best_subset)
    if not is_k_sum_free(subset, k):
        raise FalsificationError("measure slice is not sum-free; this should be impossible")
    return ExtractionResult(best_x, subset, best_weight, bound, "measure")
