"""Finitely supported measures on the positive integers, in exact rationals.

These are the bookkeeping objects for averaging densities over several
scales at once: block averages of uniform measures over a growth schedule,
convex mixtures, and pushforwards under multiplication by a fixed integer.
The repeated mixture built by ``build_mu`` geometrically contracts the
weight of its starting measure, which is what lets a density statement at
one scale be transported to a dilation-invariant one; ``contraction_index``
says how many steps that takes for a given tolerance.

Everything is a Fraction; no floating point enters any computation here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .core import IntSet
from .errors import FalsificationError, InvalidParameterError, ResourceLimitError

DEFAULT_SUPPORT_CAP = 10**6


@dataclass(frozen=True)
class RationalMeasure:
    """Map point -> positive Fraction weight, with mass and support bound tracked."""

    weights: dict
    mass: Fraction
    support_max: int

    @staticmethod
    def from_weights(mapping: Mapping[int, Fraction]) -> "RationalMeasure":
        clean = {}
        for point, weight in mapping.items():
            if not isinstance(point, int) or point < 1:
                raise InvalidParameterError(f"support points must be integers >= 1, got {point!r}")
            w = Fraction(weight)
            if w < 0:
                raise InvalidParameterError(f"weights must be >= 0, got {w} at {point}")
            if w > 0:
                clean[point] = w
        mass = sum(clean.values(), Fraction(0))
        support_max = max(clean, default=0)
        return RationalMeasure(clean, mass, support_max)

    def weight_at(self, point: int) -> Fraction:
        return self.weights.get(point, Fraction(0))

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.weights))


def uniform_measure(n: int) -> RationalMeasure:
    """Weight 1/n on each of 1..n."""
    if not isinstance(n, int) or n < 1:
        raise InvalidParameterError(f"uniform measure needs n >= 1, got {n!r}")
    w = Fraction(1, n)
    return RationalMeasure({p: w for p in range(1, n + 1)}, Fraction(1), n)


def mix(coefficients: Sequence[Fraction], measures: Sequence[RationalMeasure]) -> RationalMeasure:
    """Convex combination; coefficients must be nonnegative and sum to 1 exactly."""
    if len(coefficients) != len(measures) or not measures:
        raise InvalidParameterError("mix needs matching, nonempty coefficient and measure lists")
    coeffs = [Fraction(c) for c in coefficients]
    if any(c < 0 for c in coeffs):
        raise InvalidParameterError("mix coefficients must be nonnegative")
    if sum(coeffs) != 1:
        raise InvalidParameterError(f"mix coefficients must sum to 1, got {sum(coeffs)}")
    accumulated: dict[int, Fraction] = {}
    for c, m in zip(coeffs, measures):
        if c == 0:
            continue
        for point, weight in m.weights.items():
            accumulated[point] = accumulated.get(point, Fraction(0)) + c * weight
    return RationalMeasure.from_weights(accumulated)


def pushforward_scale(m: RationalMeasure, q: int) -> RationalMeasure:
    """Image measure under point -> q * point."""
    if not isinstance(q, int) or q < 1:
        raise InvalidParameterError(f"pushforward scale must be a positive integer, got {q!r}")
    return RationalMeasure(
        {q * point: weight for point, weight in m.weights.items()},
        m.mass,
        q * m.support_max,
    )


def evaluate(m: RationalMeasure, s: IntSet) -> Fraction:
    """Measure of the set: sum of weights over support points lying in s."""
    return sum((w for point, w in m.weights.items() if point in s), Fraction(0))


@dataclass(frozen=True)
class NuSchedule:
    """A growth sequence n_0 < n_1 < ... with block boundaries i_0 = 0 < i_1 < ... < i_t.

    Block s averages the uniform measures over the scales strictly after
    i_{s-1} up to i_s (with i_{-1} read as -1, so block 0 is just n_0).
    The full-strength growth conditions (scale ratios at least 16k/eps,
    block gaps at least 2k n_{i_s}/eps, and t at least 2/eps) are what the
    density-transport argument needs; they are reported by
    ``strength_violations`` and enforced only on request, because toy
    schedules that ignore them are still perfectly good measures.
    """

    n_sequence: tuple[int, ...]
    block_ends: tuple[int, ...]
    eps: Fraction
    k: int

    def __post_init__(self) -> None:
        if not self.n_sequence:
            raise InvalidParameterError("schedule needs at least one scale")
        prev = 0
        for n in self.n_sequence:
            if not isinstance(n, int) or n < 1:
                raise InvalidParameterError(f"scales must be integers >= 1, got {n!r}")
            if n <= prev:
                raise InvalidParameterError("scales must be strictly increasing")
            prev = n
        if not self.block_ends or self.block_ends[0] != 0:
            raise InvalidParameterError("block boundaries must start at index 0")
        for lo, hi in zip(self.block_ends, self.block_ends[1:]):
            if hi <= lo:
                raise InvalidParameterError("block boundaries must be strictly increasing")
        if self.block_ends[-1] >= len(self.n_sequence):
            raise InvalidParameterError("block boundaries run past the scale sequence")
        if Fraction(self.eps) <= 0:
            raise InvalidParameterError(f"eps must be positive, got {self.eps}")
        if self.k < 2:
            raise InvalidParameterError(f"arity k must be >= 2, got {self.k}")

    @property
    def t(self) -> int:
        return len(self.block_ends) - 1

    def strength_violations(self) -> list[str]:
        eps = Fraction(self.eps)
        found = []
        for j in range(len(self.n_sequence) - 1):
            if self.n_sequence[j + 1] * eps < 16 * self.k * self.n_sequence[j]:
                found.append(f"scale ratio below 16k/eps between indices {j} and {j + 1}")
        for s in range(self.t):
            gap = self.block_ends[s + 1] - self.block_ends[s]
            if gap * eps < 2 * self.k * self.n_sequence[self.block_ends[s]]:
                found.append(f"block gap below 2k*n/eps after boundary {s}")
        if self.t * eps < 2:
            found.append("block count t below 2/eps")
        return found


def build_nu(
    schedule: NuSchedule,
    strict: bool = False,
    support_cap: int = DEFAULT_SUPPORT_CAP,
) -> RationalMeasure:
    """Average of per-block averages of uniform measures over the schedule."""
    if strict:
        violations = schedule.strength_violations()
        if violations:
            raise InvalidParameterError(f"schedule violates growth condition: {violations[0]}")
    top_scale = schedule.n_sequence[schedule.block_ends[-1]]
    if top_scale > support_cap:
        raise ResourceLimitError(
            f"largest scale {top_scale} exceeds the support cap {support_cap}",
            required=top_scale,
        )
    t = schedule.t
    outer = Fraction(1, t + 1)
    accumulated: dict[int, Fraction] = {}
    previous_end = -1
    for end in schedule.block_ends:
        block = range(previous_end + 1, end + 1)
        inner = Fraction(1, len(block))
        for i in block:
            n = schedule.n_sequence[i]
            w = outer * inner * Fraction(1, n)
            for point in range(1, n + 1):
                accumulated[point] = accumulated.get(point, Fraction(0)) + w
        previous_end = end
    built = RationalMeasure.from_weights(accumulated)
    if built.mass != 1:
        raise FalsificationError(f"block-average measure has mass {built.mass}, expected 1")
    return built


def build_mu(
    i_max: int,
    q: int,
    k: int,
    nu_provider: Callable[[int], RationalMeasure],
    n_start: int = 1,
) -> RationalMeasure:
    """Iterate mu_{i+1} = (k/(k+1)) * (scale-by-q pushforward of mu_i) + (1/(k+1)) * nu.

    Starts from mu_1 = nu_provider(n_start); at each step the provider is
    asked for a measure at q times the current support bound.  Providers
    must return mass-1 measures supported at least as far as the request.
    """
    if not isinstance(i_max, int) or i_max < 1:
        raise InvalidParameterError(f"step count must be >= 1, got {i_max!r}")
    if not isinstance(q, int) or q < 1:
        raise InvalidParameterError(f"scale factor must be a positive integer, got {q!r}")
    if not isinstance(k, int) or k < 2:
        raise InvalidParameterError(f"arity k must be >= 2, got {k!r}")
    if not isinstance(n_start, int) or n_start < 1:
        raise InvalidParameterError(f"starting scale must be >= 1, got {n_start!r}")

    def fetch(n: int) -> RationalMeasure:
        candidate = nu_provider(n)
        if candidate.mass != 1:
            raise InvalidParameterError(f"nu provider returned mass {candidate.mass} at {n}")
        if candidate.support_max < n:
            raise InvalidParameterError(
                f"nu provider at {n} is supported only up to {candidate.support_max}"
            )
        return candidate

    mu = fetch(n_start)
    keep = Fraction(k, k + 1)
    inject = Fraction(1, k + 1)
    for _ in range(i_max - 1):
        fresh = fetch(q * mu.support_max)
        mu = mix([keep, inject], [pushforward_scale(mu, q), fresh])
        if mu.mass != 1:
            raise FalsificationError(f"mixture lost mass: {mu.mass}")
    return mu


def contraction_index(k: int, eps: Fraction) -> int:
    """Least i with (k/(k+1))**i <= 2*eps."""
    if not isinstance(k, int) or k < 2:
        raise InvalidParameterError(f"arity k must be >= 2, got {k!r}")
    eps = Fraction(eps)
    if not 0 < eps < Fraction(1, 2):
        raise InvalidParameterError(f"eps must lie in (0, 1/2), got {eps}")
    ratio = Fraction(k, k + 1)
    power = ratio
    i = 1
    while power > 2 * eps:
        power *= ratio
        i += 1
    return i


def serialize_measure(m: RationalMeasure) -> str:
    """One line per support point: 'point numerator/denominator', sorted by point."""
    lines = []
    for point in sorted(m.weights):
        w = m.weights[point]
        lines.append(f"{point} {w.numerator}/{w.denominator}\n")
    return "".join(lines)


def parse_measure(text: str) -> RationalMeasure:
    weights: dict[int, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InvalidParameterError(f"line {lineno}: expected 'point num/den', got {line!r}")
        try:
            point = int(parts[0])
            weight = Fraction(parts[1])
        except (ValueError, ZeroDivisionError):
            raise InvalidParameterError(f"line {lineno}: bad measure entry {line!r}") from None
        if point in weights:
            raise InvalidParameterError(f"line {lineno}: duplicate support point {point}")
        weights[point] = weight
    return RationalMeasure.from_weights(weights)
