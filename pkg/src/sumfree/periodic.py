"""Periodic structure analysis for k-sum-free sets.

Projects a set onto residues modulo Q, tests sum-freeness at residue
level, extracts the difference kernel (residues that can never be hit by
adding k-1 set elements), searches for arithmetic progressions with
constrained difference, and runs the containment-or-density-drop step:
either the residue projection certifies a periodic k-sum-free superset,
or an explicit density drop along a fast-growing schedule is located and
verified.  A failed scan is reported as a falsification together with a
fully replayable instance.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Optional, Sequence, Union

from .core import IntSet, _require_arity, difference_witness, is_k_sum_free
from .errors import FalsificationError, InvalidParameterError


def density(s: IntSet, n: int) -> Fraction:
    """Exact density |s ∩ [1, n]| / n."""
    if n < 1:
        raise InvalidParameterError(f"density horizon must be >= 1, got {n}")
    return Fraction(bisect_right(s.elements, n), n)


@dataclass(frozen=True)
class ResidueSet:
    """A set of residues modulo Q, standing for the Q-periodic subset of N."""

    modulus: int
    residues: frozenset

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise InvalidParameterError(f"modulus must be >= 1, got {self.modulus}")
        for r in self.residues:
            if not isinstance(r, int) or isinstance(r, bool) or not 0 <= r < self.modulus:
                raise InvalidParameterError(
                    f"residue {r!r} out of range for modulus {self.modulus}"
                )

    @classmethod
    def of(cls, modulus: int, residues) -> "ResidueSet":
        if modulus < 1:
            raise InvalidParameterError(f"modulus must be >= 1, got {modulus}")
        return cls(modulus, frozenset(r % modulus for r in residues))

    def __contains__(self, n: int) -> bool:
        return n % self.modulus in self.residues

    def __len__(self) -> int:
        return len(self.residues)

    def elements_upto(self, n: int) -> IntSet:
        """The positive members of the periodic set that are <= n."""
        found = []
        for r in sorted(self.residues):
            first = r if r >= 1 else self.modulus
            found.extend(range(first, n + 1, self.modulus))
        return IntSet.of(found)


def periodic_hull(s: IntSet, n0: int, modulus: int) -> ResidueSet:
    """Residues modulo `modulus` hit by s within [1, n0]."""
    if n0 < 1:
        raise InvalidParameterError(f"horizon must be >= 1, got {n0}")
    if modulus < 1:
        raise InvalidParameterError(f"modulus must be >= 1, got {modulus}")
    return ResidueSet(modulus, frozenset(a % modulus for a in s.upto(n0)))


def _iterated_residue_sums(r: ResidueSet, rounds: int) -> frozenset:
    sums = {0}
    for _ in range(rounds):
        sums = {(t + x) % r.modulus for t in sums for x in r.residues}
    return frozenset(sums)


def is_residue_k_sum_free(r: ResidueSet, k: int) -> bool:
    """No multiset of k residues of r sums, mod Q, to a residue of r.

    Equivalent to the represented periodic set being k-sum-free in N:
    large representatives realize any residue identity with honest sums.
    """
    _require_arity(k)
    return _iterated_residue_sums(r, k).isdisjoint(r.residues)


def difference_kernel(r: ResidueSet, k: int) -> ResidueSet:
    """Residues of r that stay outside r under adding any k-1 residues of r.

    The result is always k-sum-free at residue level: a sum of k kernel
    members is a kernel member plus k-1 members of r, which by the
    defining condition cannot land in r, let alone in the kernel.
    """
    _require_arity(k)
    shifts = _iterated_residue_sums(r, k - 1)
    kept = frozenset(
        x for x in r.residues
        if all((x + t) % r.modulus not in r.residues for t in shifts)
    )
    return ResidueSet(r.modulus, kept)


def find_ap(s: IntSet, n0: int, ap_length: int, modulus: int) -> Optional[tuple[int, int]]:
    """An arithmetic progression in s ∩ [1, n0] with step dividing modulus.

    Returns (start, step), preferring the smallest step among divisors of
    the modulus in ascending order and then the smallest start; None when
    no progression of the requested length exists.
    """
    if ap_length < 1:
        raise InvalidParameterError(f"progression length must be >= 1, got {ap_length}")
    if modulus < 1:
        raise InvalidParameterError(f"modulus must be >= 1, got {modulus}")
    if n0 < 1:
        raise InvalidParameterError(f"horizon must be >= 1, got {n0}")
    members = set(s.upto(n0).elements)
    if not members:
        return None
    divisors = [m for m in range(1, modulus + 1) if modulus % m == 0]
    for m in divisors:
        for x in sorted(members):
            if x + (ap_length - 1) * m > n0:
                break
            if all(x + j * m in members for j in range(1, ap_length)):
                return (x, m)
    return None


def _drop_expression(ap_length: int, k: int) -> Fraction:
    return Fraction(ap_length + k - 2, ap_length * (k + 1) + k - 3)


def min_ap_length(k: int, eps: Fraction) -> int:
    """Least progression length i with (i+k-2)/(i(k+1)+k-3) <= 1/(k+1) + eps/4.

    The expression decreases to 1/(k+1) as i grows, so a minimum exists
    for every positive eps.  Solved in closed form, then the boundary is
    verified exactly.
    """
    _require_arity(k)
    eps = Fraction(eps)
    if eps <= 0:
        raise InvalidParameterError(f"eps must be positive, got {eps}")
    target = Fraction(1, k + 1) + eps / 4
    # (i+k-2) <= target*(i(k+1)+k-3) rearranges to i >= (k-2-target(k-3)) / (target(k+1)-1)
    numer = k - 2 - target * (k - 3)
    denom = target * (k + 1) - 1
    i = max(1, math.ceil(numer / denom))
    while _drop_expression(i, k) > target:
        i += 1
    while i > 1 and _drop_expression(i - 1, k) <= target:
        i -= 1
    return i


def upper_density_on_multiples_periodic(r: ResidueSet) -> Fraction:
    """Density along deep factorial multiples: 1 if residue 0 is present, else 0.

    For N with Q dividing N!, every multiple of N! lies in the periodic
    set exactly when 0 is a residue, so the density along that scale is
    all or nothing.
    """
    return Fraction(1) if 0 in r.residues else Fraction(0)


def geometric_schedule(start: int, ratio: Fraction, count: int) -> tuple[int, ...]:
    """count integers growing from start by at least the given ratio each step."""
    if start < 1:
        raise InvalidParameterError(f"schedule start must be >= 1, got {start}")
    ratio = Fraction(ratio)
    if ratio <= 1:
        raise InvalidParameterError(f"schedule ratio must exceed 1, got {ratio}")
    if count < 0:
        raise InvalidParameterError(f"schedule length must be >= 0, got {count}")
    out = []
    cur = start
    for _ in range(count):
        cur = math.ceil(cur * ratio)
        out.append(cur)
    return tuple(out)


@dataclass(frozen=True)
class DensityDropInstance:
    """A replayable certificate request for the density-drop bound.

    Carries the set, the horizon n0, the progression (start, step,
    length) inside [1, n0], a signed difference writable as one set
    member minus k-1 set members and congruent to the start mod step,
    the bound's eps, and the scanning schedule.
    """

    elements: IntSet
    n0: int
    ap_start: int
    ap_step: int
    ap_length: int
    difference: int
    eps: Fraction
    schedule: tuple[int, ...]
    k: int

    @property
    def orientation(self) -> str:
        return "mirrored" if self.difference > self.ap_start else "forward"

    def b_set(self) -> IntSet:
        """Members with a progression neighbor in the set.

        Forward orientation looks at a + j*step for j in 1..length, the
        mirrored orientation at a - j*step.
        """
        sign = 1 if self.orientation == "forward" else -1
        members = set(self.elements.elements)
        found = [
            a for a in self.elements
            if any(a + sign * j * self.ap_step in members for j in range(1, self.ap_length + 1))
        ]
        return IntSet.of(found)


def serialize_instance(instance: DensityDropInstance) -> str:
    payload = {
        "elements": list(instance.elements.elements),
        "n0": instance.n0,
        "ap_start": instance.ap_start,
        "ap_step": instance.ap_step,
        "ap_length": instance.ap_length,
        "difference": instance.difference,
        "eps": f"{instance.eps.numerator}/{instance.eps.denominator}",
        "schedule": list(instance.schedule),
        "k": instance.k,
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def parse_instance(text: str) -> DensityDropInstance:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidParameterError(f"instance is not valid JSON: {exc}") from None
    try:
        return DensityDropInstance(
            elements=IntSet.of(payload["elements"]),
            n0=int(payload["n0"]),
            ap_start=int(payload["ap_start"]),
            ap_step=int(payload["ap_step"]),
            ap_length=int(payload["ap_length"]),
            difference=int(payload["difference"]),
            eps=Fraction(payload["eps"]),
            schedule=tuple(int(n) for n in payload["schedule"]),
            k=int(payload["k"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidParameterError(f"malformed instance payload: {exc}") from None


def _check_schedule(
    schedule: Sequence[int], base: int, min_ratio: Fraction, label: str
) -> None:
    if not schedule:
        raise InvalidParameterError(f"{label}: schedule is empty")
    prev = base
    for j, n in enumerate(schedule):
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise InvalidParameterError(f"{label}: entry {j} is not a positive integer: {n!r}")
        if Fraction(n) < min_ratio * prev:
            raise InvalidParameterError(
                f"{label}: entry {j} = {n} grows by less than the required "
                f"ratio {min_ratio} over {prev}"
            )
        prev = n


def verify_density_drop(instance: DensityDropInstance, k: int) -> bool:
    """Check the density-drop conclusion on a hypothesis-satisfying instance.

    Scans schedule indices 1..k*n0 for an exact density at or below
    (i+k-2)/(i(k+1)+k-3) + 4k*eps.  Hypothesis failures raise
    invalid-parameter errors naming the failed hypothesis; a full-length
    scan with no drop returns False, which callers must treat as a loud
    falsification.
    """
    _require_arity(k)
    if instance.k != k:
        raise InvalidParameterError(
            f"instance was built for arity {instance.k}, checked with {k}"
        )
    if instance.n0 < 1:
        raise InvalidParameterError(f"n0 must be >= 1, got {instance.n0}")
    if instance.ap_start < 1 or instance.ap_step < 1 or instance.ap_length < 1:
        raise InvalidParameterError("progression start, step and length must be >= 1")
    eps = Fraction(instance.eps)
    if eps <= 0:
        raise InvalidParameterError(f"eps must be positive, got {eps}")
    if not is_k_sum_free(instance.elements, k):
        raise InvalidParameterError("set is not k-sum-free on its data")
    last = instance.ap_start + (instance.ap_length - 1) * instance.ap_step
    if last > instance.n0:
        raise InvalidParameterError(
            f"progression reaches {last}, beyond the horizon {instance.n0}"
        )
    members = set(instance.elements.elements)
    for j in range(instance.ap_length):
        term = instance.ap_start + j * instance.ap_step
        if term not in members:
            raise InvalidParameterError(f"progression term {term} is not in the set")
    restricted = instance.elements.upto(instance.n0)
    if difference_witness(restricted, instance.difference, k) is None:
        raise InvalidParameterError(
            f"difference {instance.difference} is not writable as one member "
            f"minus {k - 1} members within [1, {instance.n0}]"
        )
    if (instance.difference - instance.ap_start) % instance.ap_step != 0:
        raise InvalidParameterError(
            f"difference {instance.difference} is not congruent to the start "
            f"{instance.ap_start} modulo the step {instance.ap_step}"
        )
    _check_schedule(instance.schedule, instance.n0, 1 / eps, "schedule")
    bound = _drop_expression(instance.ap_length, k) + 4 * k * eps
    limit = k * instance.n0
    for n in instance.schedule[:limit]:
        if density(instance.elements, n) <= bound:
            return True
    if len(instance.schedule) < limit:
        raise InvalidParameterError(
            f"schedule has {len(instance.schedule)} entries but the conclusion "
            f"scans indices 1..{limit}; no drop found in the available prefix"
        )
    return False


def check_translate_inequality(
    s: IntSet, n: int, x: int, m: int, i: int, k: int
) -> bool:
    """Counting inequality from disjoint shifted copies of the set.

    With B the members having a forward progression neighbor (a + j*m in
    the set for some j in 1..i), checks
    (i+1)|A_n| - (i-1)|B_n| <= n + (k-1)x + (i-1)m exactly.  Under the
    preconditions (k-sum-free set containing the progression
    x, x+m, ..., x+(i-1)m) this provably holds; False is a falsification.
    """
    _require_arity(k)
    if n < 1:
        raise InvalidParameterError(f"count horizon must be >= 1, got {n}")
    if x < 1 or m < 1 or i < 1:
        raise InvalidParameterError("progression start, step and length must be >= 1")
    if not is_k_sum_free(s, k):
        raise InvalidParameterError("set is not k-sum-free on its data")
    members = set(s.elements)
    for j in range(i):
        if x + j * m not in members:
            raise InvalidParameterError(f"progression term {x + j * m} is not in the set")
    a_count = bisect_right(s.elements, n)
    b_count = sum(
        1
        for a in s.elements
        if a <= n and any(a + j * m in members for j in range(1, i + 1))
    )
    return (i + 1) * a_count - (i - 1) * b_count <= n + (k - 1) * x + (i - 1) * m


@dataclass(frozen=True)
class PeriodicContainment:
    """The horizon slice embeds in the periodic k-sum-free set of this hull."""

    hull: ResidueSet

    tag = "periodic-containment"


@dataclass(frozen=True)
class DensityDrop:
    """Scheduled density fell to 1/(k+1) + eps/2 at this 1-based index."""

    index: int
    value: Fraction

    tag = "density-drop"


@dataclass(frozen=True)
class ApNotFound:
    """No progression of the requested shape; parameters were below guarantee."""

    tag = "ap-not-found"


@dataclass(frozen=True)
class Falsified:
    """Hypotheses held but no density drop appeared; carries a replayable instance."""

    instance: DensityDropInstance
    reason: str

    tag = "falsified"


StepOutcome = Union[PeriodicContainment, DensityDrop, ApNotFound, Falsified]


def _derive_difference(
    restricted: IntSet, hull: ResidueSet, x: int, k: int
) -> int:
    """A value u - v_1 - ... - v_{k-1} over [1, n0] members, congruent to x mod hull steps.

    Works at residue level: since x's residue escapes the difference
    kernel, some k-1 residues of the hull push it back into the hull;
    smallest set representatives realize the identity.
    """
    smallest: dict = {}
    for a in restricted.elements:
        smallest.setdefault(a % hull.modulus, a)
    for combo in combinations_with_replacement(sorted(hull.residues), k - 1):
        target = (x + sum(combo)) % hull.modulus
        if target in hull.residues:
            vs = [smallest[t] for t in combo]
            return smallest[target] - sum(vs)
    raise FalsificationError(
        "difference derivation failed although the start residue escapes the kernel"
    )


def fls_step(
    s: IntSet,
    k: int,
    n0: int,
    modulus: int,
    ap_length: int,
    eps: Fraction,
    schedule: Sequence[int],
    horizon: Optional[int] = None,
) -> StepOutcome:
    """One containment-or-drop step for a dense k-sum-free set.

    Either the residue hull modulo `modulus` is k-sum-free, certifying a
    periodic k-sum-free superset of the horizon slice, or a density drop
    to 1/(k+1) + eps/2 is located along the schedule.  ApNotFound means
    the supplied (modulus, ap_length, n0) sat below the sizes that would
    guarantee a progression; Falsified means every hypothesis held and
    the scan still failed, which is a bug or a counterexample and ships
    with a replayable instance.

    An explicit horizon asserts the set is only known on [1, horizon];
    it must then cover the whole schedule.  Omitting it treats the set
    as exact.
    """
    _require_arity(k)
    if n0 < 1:
        raise InvalidParameterError(f"n0 must be >= 1, got {n0}")
    if modulus < 1:
        raise InvalidParameterError(f"modulus must be >= 1, got {modulus}")
    eps = Fraction(eps)
    if eps <= 0:
        raise InvalidParameterError(f"eps must be positive, got {eps}")
    needed = min_ap_length(k, eps)
    if ap_length < needed:
        raise InvalidParameterError(
            f"progression length {ap_length} is below the minimum {needed} "
            f"required for the drop bound at eps {eps}"
        )
    if not is_k_sum_free(s, k):
        raise InvalidParameterError("input set is not k-sum-free on its data")
    threshold = Fraction(1, k + 1) + eps
    have = density(s, n0)
    if have < threshold:
        raise InvalidParameterError(
            f"density at {n0} is {have}, below the required {threshold}"
        )
    schedule = tuple(schedule)
    if len(schedule) < k * n0:
        raise InvalidParameterError(
            f"schedule has {len(schedule)} entries, needs at least k*n0 = {k * n0}"
        )
    _check_schedule(schedule, n0, Fraction(16 * k) / eps, "schedule")
    if horizon is not None:
        if horizon < s.largest():
            raise InvalidParameterError(
                f"declared horizon {horizon} is below the largest element {s.largest()}"
            )
        if horizon < schedule[-1]:
            raise InvalidParameterError(
                f"declared horizon {horizon} does not cover the schedule end "
                f"{schedule[-1]}"
            )
    hull = periodic_hull(s, n0, modulus)
    if is_residue_k_sum_free(hull, k):
        return PeriodicContainment(hull)
    kernel = difference_kernel(hull, k)
    restricted = s.upto(n0)
    candidates = IntSet.of(
        a for a in restricted if a % modulus not in kernel.residues
    )
    ap = find_ap(candidates, n0, ap_length, modulus)
    if ap is None:
        return ApNotFound()
    x, m = ap
    d = _derive_difference(restricted, hull, x, k)
    drop_bound = Fraction(1, k + 1) + eps / 2
    for index, n in enumerate(schedule[: k * n0], start=1):
        value = density(s, n)
        if value <= drop_bound:
            return DensityDrop(index, value)
    instance = DensityDropInstance(
        elements=s,
        n0=n0,
        ap_start=x,
        ap_step=m,
        ap_length=ap_length,
        difference=d,
        eps=eps / (16 * k),
        schedule=schedule,
        k=k,
    )
    return Falsified(
        instance,
        reason=f"no scheduled density at or below {drop_bound} within {k * n0} indices",
    )
