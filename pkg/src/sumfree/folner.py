"""Multiplicative grids with vanishing dilation defect.

The grid with parameters (r, b) is the set of integers p_1^{e_1} ... p_r^{e_r}
where p_1 < ... < p_r are the first r primes and every exponent satisfies
0 <= e_i < b.  The diagonal family F_m (r = b = m) has the property that
dilating by any fixed integer a moves an asymptotically vanishing fraction
of the grid: the defect |aF △ F| / |F| tends to 0 as m grows whenever a's
prime factors appear in the grid.  That is what makes these grids useful
as an averaging substrate for dilation extraction.

The defect has a closed form read off a's factorization.  ``defect`` keeps
an independent route for it (direct set arithmetic while the grid is small
enough to enumerate) so the two can be cross-checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional

from .core import IntSet
from .errors import InvalidParameterError, ResourceLimitError

DEFAULT_GENERATE_CAP = 10**7
DEFAULT_DEFECT_ENUMERATION_CAP = 10**5


def first_primes(count: int) -> tuple[int, ...]:
    """The first ``count`` primes, by trial division (small counts only)."""
    if count < 0:
        raise InvalidParameterError(f"prime count must be >= 0, got {count}")
    primes: list[int] = []
    candidate = 2
    while len(primes) < count:
        if all(candidate % p for p in primes if p * p <= candidate):
            primes.append(candidate)
        candidate += 1
    return tuple(primes)


@dataclass(frozen=True)
class FolnerGrid:
    """Parameters (prime_count=r, exponent_bound=b) of a multiplicative grid."""

    prime_count: int
    exponent_bound: int

    def __post_init__(self) -> None:
        if not isinstance(self.prime_count, int) or self.prime_count < 1:
            raise InvalidParameterError(f"prime count must be >= 1, got {self.prime_count!r}")
        if not isinstance(self.exponent_bound, int) or self.exponent_bound < 1:
            raise InvalidParameterError(
                f"exponent bound must be >= 1, got {self.exponent_bound!r}"
            )

    @staticmethod
    def diagonal(m: int) -> "FolnerGrid":
        return FolnerGrid(m, m)

    @staticmethod
    def parse(text: str) -> "FolnerGrid":
        """Parse a grid descriptor: 'm' for diagonal, 'r,b' for rectangular."""
        parts = [p.strip() for p in text.split(",")]
        try:
            numbers = [int(p) for p in parts]
        except ValueError:
            raise InvalidParameterError(f"bad grid descriptor {text!r}") from None
        if len(numbers) == 1:
            return FolnerGrid.diagonal(numbers[0])
        if len(numbers) == 2:
            return FolnerGrid(numbers[0], numbers[1])
        raise InvalidParameterError(f"bad grid descriptor {text!r}")

    @cached_property
    def primes(self) -> tuple[int, ...]:
        return first_primes(self.prime_count)

    def size(self) -> int:
        return self.exponent_bound**self.prime_count


def generate(grid: FolnerGrid, cap: int = DEFAULT_GENERATE_CAP) -> IntSet:
    """Enumerate the full grid, refusing to materialize more than ``cap`` elements."""
    size = grid.size()
    if size > cap:
        raise ResourceLimitError(
            f"grid has {size} elements, over the enumeration cap {cap}", required=size
        )
    values = [1]
    for p in grid.primes:
        powers = [p**e for e in range(grid.exponent_bound)]
        values = [v * q for v in values for q in powers]
    return IntSet.of(values)


def contains(grid: FolnerGrid, n: int) -> Optional[tuple[int, ...]]:
    """Exponent vector of n in the grid, or None.

    Membership is decided by trial division by the grid primes alone, so this
    never factors n in full.
    """
    if not isinstance(n, int) or n < 1:
        raise InvalidParameterError(f"membership is defined for integers >= 1, got {n!r}")
    exponents = []
    for p in grid.primes:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
            if e >= grid.exponent_bound:
                return None
        exponents.append(e)
    if n != 1:
        return None
    return tuple(exponents)


def _factor_over(primes: tuple[int, ...], a: int) -> Optional[dict]:
    """Exponents of a over the given primes, or None if a cofactor remains."""
    exponents = {}
    for p in primes:
        e = 0
        while a % p == 0:
            a //= p
            e += 1
        exponents[p] = e
    if a != 1:
        return None
    return exponents


def defect_closed_form(grid: FolnerGrid, a: int) -> Fraction:
    """Closed form for |aF △ F| / |F| from a's factorization.

    Any prime of a outside the grid empties the intersection (defect 2);
    otherwise each exponent c_j shrinks its axis from b to max(0, b - c_j).
    """
    if not isinstance(a, int) or a < 1:
        raise InvalidParameterError(f"dilation factor must be a positive integer, got {a!r}")
    exponents = _factor_over(grid.primes, a)
    if exponents is None:
        return Fraction(2)
    b = grid.exponent_bound
    surviving = 1
    for c in exponents.values():
        surviving *= max(0, b - c)
    return 2 * (1 - Fraction(surviving, grid.size()))


def defect(
    grid: FolnerGrid, a: int, enumeration_cap: int = DEFAULT_DEFECT_ENUMERATION_CAP
) -> Fraction:
    """Exact dilation defect |aF △ F| / |F|.

    Grids small enough to enumerate are measured by direct set arithmetic,
    which keeps this route independent of ``defect_closed_form``.  Larger
    grids fall back to counting surviving exponent vectors, which avoids
    enumeration entirely.
    """
    if not isinstance(a, int) or a < 1:
        raise InvalidParameterError(f"dilation factor must be a positive integer, got {a!r}")
    size = grid.size()
    if size <= enumeration_cap:
        base = generate(grid, cap=enumeration_cap)
        members = set(base.elements)
        dilated = {a * x for x in base.elements}
        return Fraction(len(members.symmetric_difference(dilated)), size)
    exponents = _factor_over(grid.primes, a)
    if exponents is None:
        return Fraction(2)
    b = grid.exponent_bound
    surviving = 1
    for c in exponents.values():
        surviving *= max(0, b - c)
    return Fraction(2 * (size - surviving), size)


def set_dilation_defect(f: IntSet, a: int) -> Fraction:
    """|aF △ F| / |F| for an arbitrary finite set F (no grid structure assumed)."""
    if not f:
        raise InvalidParameterError("defect of the empty set is undefined")
    if not isinstance(a, int) or a < 1:
        raise InvalidParameterError(f"dilation factor must be a positive integer, got {a!r}")
    members = set(f.elements)
    dilated = {a * x for x in f.elements}
    return Fraction(len(members.symmetric_difference(dilated)), len(f))
