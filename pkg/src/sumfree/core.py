"""Finite sets of positive integers and the k-sum-free predicates.

A set A of positive integers is k-sum-free when no multiset of k elements
of A (repetition allowed) sums to an element of A.  Strong k-sum-freeness
asks the same for every arity from 2 up to k.  This module holds the set
type used throughout the package, the predicates with their violation
certificates, and the difference-set helpers used by the periodic
machinery.

Two independent routes decide the predicate: a bitset route that builds
iterated sumsets by shifted OR on Python integers (used whenever the
largest element fits under a configurable cap), and a direct multiset
enumeration with monotone pruning.  They must agree; the test suite
checks that.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional

from .errors import InvalidParameterError

DEFAULT_BITSET_CAP = 1 << 20


def _require_arity(k: int) -> None:
    if not isinstance(k, int) or k < 2:
        raise InvalidParameterError(f"arity k must be an integer >= 2, got {k!r}")


@dataclass(frozen=True)
class IntSet:
    """Immutable finite set of positive integers, stored strictly increasing."""

    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        prev = 0
        for value in self.elements:
            if not isinstance(value, int):
                raise InvalidParameterError(f"set elements must be integers, got {value!r}")
            if value < 1:
                raise InvalidParameterError(f"set elements must be >= 1, got {value}")
            if value <= prev:
                raise InvalidParameterError("set elements must be strictly increasing")
            prev = value

    @staticmethod
    def of(values: Iterable[int]) -> "IntSet":
        """Build from any iterable, sorting and de-duplicating."""
        return IntSet(tuple(sorted(set(values))))

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.elements)

    def __contains__(self, value: object) -> bool:
        return value in self._members

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __bool__(self) -> bool:
        return bool(self.elements)

    def largest(self) -> int:
        if not self.elements:
            raise InvalidParameterError("empty set has no largest element")
        return self.elements[-1]

    def upto(self, n: int) -> "IntSet":
        """Restriction to [1, n]."""
        if n < 0:
            raise InvalidParameterError(f"restriction bound must be >= 0, got {n}")
        return IntSet(self.elements[: bisect_right(self.elements, n)])

    def dilate(self, c: int) -> "IntSet":
        """The set {c*a : a in A} for a positive integer c."""
        if not isinstance(c, int) or c < 1:
            raise InvalidParameterError(f"dilation factor must be a positive integer, got {c!r}")
        return IntSet(tuple(c * a for a in self.elements))


@dataclass(frozen=True)
class Violation:
    """Certificate that a set is not k-sum-free: summands and their total."""

    summands: tuple[int, ...]
    total: int

    def holds_in(self, s: IntSet) -> bool:
        return (
            sum(self.summands) == self.total
            and all(a in s for a in self.summands)
            and self.total in s
        )


def _bitset_route(elements: tuple[int, ...], k: int) -> bool:
    top = elements[-1]
    mask = 0
    for a in elements:
        mask |= 1 << a
    window = (1 << (top + 1)) - 1
    sums = mask
    for _ in range(k - 1):
        acc = 0
        for a in elements:
            acc |= sums << a
        # sums past the largest element can never land back in the set
        sums = acc & window
        if not sums:
            return True
    return (sums & mask) == 0


def _enumeration_route(elements: tuple[int, ...], k: int) -> bool:
    top = elements[-1]
    members = frozenset(elements)
    count = len(elements)

    def extend(start: int, chosen: int, total: int) -> bool:
        remaining = k - chosen
        for idx in range(start, count):
            a = elements[idx]
            if total + a * remaining > top:
                break
            if remaining == 1:
                if total + a in members:
                    return True
            elif extend(idx, chosen + 1, total + a):
                return True
        return False

    return not extend(0, 0, 0)


def is_k_sum_free(s: IntSet, k: int, bitset_cap: int = DEFAULT_BITSET_CAP) -> bool:
    """True iff no k-element multiset from s sums to an element of s."""
    _require_arity(k)
    if not s:
        return True
    if s.largest() <= bitset_cap:
        return _bitset_route(s.elements, k)
    return _enumeration_route(s.elements, k)


def find_violation(s: IntSet, k: int) -> Optional[Violation]:
    """Smallest witness that s is not k-sum-free, or None.

    Violations are ordered by total first, then by the ascending summand
    tuple, so the answer is reproducible across runs.
    """
    _require_arity(k)
    elements = s.elements
    if not elements:
        return None
    count = len(elements)
    picked: list[int] = []

    def search(start: int, left: int, target: int) -> bool:
        if left == 0:
            return target == 0
        if elements[-1] * left < target:
            return False
        for idx in range(start, count):
            a = elements[idx]
            if a * left > target:
                break
            picked.append(a)
            if search(idx, left - 1, target - a):
                return True
            picked.pop()
        return False

    for total in elements:
        if search(0, k, total):
            return Violation(tuple(picked), total)
    return None


def is_strongly_k_sum_free(s: IntSet, k: int, bitset_cap: int = DEFAULT_BITSET_CAP) -> bool:
    """True iff s is ell-sum-free for every ell in 2..k."""
    _require_arity(k)
    return all(is_k_sum_free(s, ell, bitset_cap) for ell in range(2, k + 1))


def k_difference_set(s: IntSet, k: int, n: int) -> frozenset:
    """The set A_n - (k-1)A_n, i.e. {u - v_1 - ... - v_{k-1}} over A ∩ [1, n].

    May contain zero and negative integers; returned as a plain frozenset.
    """
    _require_arity(k)
    restricted = s.upto(n).elements
    if not restricted:
        return frozenset()
    sums = {0}
    for _ in range(k - 1):
        sums = {t + a for t in sums for a in restricted}
    return frozenset(u - t for u in restricted for t in sums)


def difference_witness(s: IntSet, t: int, k: int) -> Optional[int]:
    """Smallest u in s with t = u - v_1 - ... - v_{k-1} for some v_i in s.

    Returns None when no such u exists.  A witness exists exactly when t
    lies in k_difference_set(s, k, max(s)).
    """
    _require_arity(k)
    if not s:
        return None
    sums = {0}
    for _ in range(k - 1):
        sums = {x + a for x in sums for a in s.elements}
    for u in s.elements:
        if u - t in sums:
            return u
    return None


def parse_set_text(text: str) -> IntSet:
    """Parse the one-integer-per-line set format (# comments, blank lines ok)."""
    values = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            value = int(line)
        except ValueError:
            raise InvalidParameterError(f"line {lineno}: not an integer: {line!r}") from None
        if value < 1:
            raise InvalidParameterError(f"line {lineno}: elements must be >= 1, got {value}")
        values.append(value)
    return IntSet.of(values)


def format_set_text(s: IntSet) -> str:
    return "".join(f"{a}\n" for a in s.elements)


def read_set_file(path: str) -> IntSet:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_set_text(handle.read())


def write_set_file(path: str, s: IntSet) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(format_set_text(s))
