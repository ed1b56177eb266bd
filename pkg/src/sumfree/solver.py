"""Exact maximum k-sum-free subsets, as hypergraph independent sets.

Every violating multiset (k summands from A plus their total, all in A)
contributes its support set as a forbidden edge; a subset of A is
k-sum-free exactly when it contains no edge in full.  Edges that contain
another edge are dropped, since they can never be the binding constraint.

Two solvers: a plain depth-first enumeration over subsets (``brute``),
kept simple enough to trust as an oracle and guaranteeing the
lexicographically smallest optimal witness, and a branch-and-bound
(``bb``) that branches on the vertex lying in the most active edges and
prunes with a greedy disjoint-edge bound.  ``bb`` honors a wall-clock
budget: on expiry the best set found so far is returned as a certified
lower bound rather than an optimum.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import IntSet, is_k_sum_free, is_strongly_k_sum_free, _require_arity
from .errors import FalsificationError, InvalidParameterError, ResourceLimitError
from .folner import FolnerGrid, generate

DEFAULT_EDGE_CAP = 10**7
BRUTE_SIZE_LIMIT = 30


@dataclass(frozen=True)
class ForbiddenHypergraph:
    """Vertices plus the minimal supports of violating multisets."""

    vertices: IntSet
    edges: tuple[tuple[int, ...], ...]

    def is_independent(self, subset: IntSet) -> bool:
        chosen = set(subset.elements)
        return all(not chosen.issuperset(edge) for edge in self.edges)


def _collect_supports(elements: tuple[int, ...], k: int, cap: int, supports: set) -> None:
    top = elements[-1]
    members = frozenset(elements)
    count = len(elements)
    stack: list[int] = []

    def extend(start: int, chosen: int, total: int) -> None:
        remaining = k - chosen
        for idx in range(start, count):
            a = elements[idx]
            if total + a * remaining > top:
                break
            stack.append(a)
            if remaining == 1:
                if total + a in members:
                    supports.add(frozenset(stack + [total + a]))
                    if len(supports) > cap:
                        raise ResourceLimitError(
                            f"violating-multiset supports exceed the edge cap {cap}",
                            required=len(supports),
                        )
            else:
                extend(idx, chosen + 1, total + a)
            stack.pop()

    extend(0, 0, 0)


def build_hypergraph(
    s: IntSet, k: int, strong: bool = False, edge_cap: int = DEFAULT_EDGE_CAP
) -> ForbiddenHypergraph:
    """All minimal forbidden supports for k (or for every arity 2..k if strong)."""
    _require_arity(k)
    supports: set = set()
    if s:
        arities = range(2, k + 1) if strong else (k,)
        for ell in arities:
            _collect_supports(s.elements, ell, edge_cap, supports)
    # keep only inclusion-minimal supports, smallest first so subsets are seen early
    ordered = sorted(supports, key=lambda e: (len(e), tuple(sorted(e))))
    kept: list[frozenset] = []
    for edge in ordered:
        if not any(other <= edge for other in kept):
            kept.append(edge)
    edges = tuple(tuple(sorted(e)) for e in kept)
    return ForbiddenHypergraph(s, edges)


@dataclass(frozen=True)
class SolveResult:
    size: int
    witness: IntSet
    nodes: int
    status: str  # "optimal" or "timeout-lower-bound"


@dataclass(frozen=True)
class MaxFractionResult:
    fraction: Fraction
    solve: SolveResult


def _edge_masks(vertices: tuple[int, ...], edges: tuple[tuple[int, ...], ...]) -> list[int]:
    index = {v: i for i, v in enumerate(vertices)}
    masks = []
    for edge in edges:
        mask = 0
        for v in edge:
            mask |= 1 << index[v]
        masks.append(mask)
    return masks


def _mask_to_set(mask: int, vertices: tuple[int, ...]) -> IntSet:
    return IntSet(tuple(v for i, v in enumerate(vertices) if mask >> i & 1))


def _solve_brute(vertices: tuple[int, ...], masks: list[int]) -> SolveResult:
    n = len(vertices)
    edges_with: list[list[int]] = [[] for _ in range(n)]
    for m in masks:
        r = m
        while r:
            bit = r & -r
            edges_with[bit.bit_length() - 1].append(m)
            r ^= bit
    best_size = -1
    best_mask = 0
    nodes = 0

    # include-first ascending order visits subsets lexicographically, so the
    # first optimum found is the lexicographically smallest one
    def walk(idx: int, cur: int, size: int) -> None:
        nonlocal best_size, best_mask, nodes
        nodes += 1
        if size + (n - idx) <= best_size:
            return
        if idx == n:
            if size > best_size:
                best_size = size
                best_mask = cur
            return
        bit = 1 << idx
        grown = cur | bit
        if all(m & ~grown for m in edges_with[idx]):
            walk(idx + 1, grown, size + 1)
        walk(idx + 1, cur, size)

    walk(0, 0, 0)
    return SolveResult(best_size, _mask_to_set(best_mask, vertices), nodes, "optimal")


def _greedy_seed(n: int, edges_with: list[list[int]]) -> int:
    cur = 0
    for idx in range(n):
        grown = cur | 1 << idx
        if all(m & ~grown for m in edges_with[idx]):
            cur = grown
    return cur


def _solve_bb(
    vertices: tuple[int, ...], masks: list[int], budget: Optional[float]
) -> SolveResult:
    n = len(vertices)
    all_mask = (1 << n) - 1
    edges_with: list[list[int]] = [[] for _ in range(n)]
    for m in masks:
        r = m
        while r:
            bit = r & -r
            edges_with[bit.bit_length() - 1].append(m)
            r ^= bit
    best_mask = _greedy_seed(n, edges_with)
    best_size = best_mask.bit_count()
    deadline = None if budget is None else time.monotonic() + budget
    status = "optimal"
    nodes = 0
    stack: list[tuple[int, int]] = [(0, 0)]
    while stack:
        nodes += 1
        if deadline is not None and nodes & 255 == 0 and time.monotonic() > deadline:
            status = "timeout-lower-bound"
            break
        chosen, out = stack.pop()
        # unit propagation: an active edge with one undecided vertex forces it out
        infeasible = False
        changed = True
        while changed:
            changed = False
            for m in masks:
                if m & out:
                    continue
                residual = m & ~chosen
                if residual == 0:
                    infeasible = True
                    break
                if residual & (residual - 1) == 0:
                    out |= residual
                    changed = True
            if infeasible:
                break
        if infeasible:
            continue
        free = all_mask & ~chosen & ~out
        residuals = [m & ~chosen for m in masks if not m & out]
        if not residuals:
            size = (chosen | free).bit_count()
            if size > best_size:
                best_size = size
                best_mask = chosen | free
            continue
        used = 0
        matching = 0
        for r in residuals:
            if not r & used:
                used |= r
                matching += 1
        if chosen.bit_count() + free.bit_count() - matching <= best_size:
            continue
        degree: dict[int, int] = {}
        for r in residuals:
            while r:
                bit = r & -r
                degree[bit] = degree.get(bit, 0) + 1
                r ^= bit
        branch_bit = max(sorted(degree), key=lambda b: degree[b])
        stack.append((chosen, out | branch_bit))
        stack.append((chosen | branch_bit, out))
    return SolveResult(best_size, _mask_to_set(best_mask, vertices), nodes, status)


def max_k_sum_free(
    s: IntSet,
    k: int,
    algo: str = "bb",
    strong: bool = False,
    budget: Optional[float] = None,
    edge_cap: int = DEFAULT_EDGE_CAP,
) -> SolveResult:
    """Size and witness of a maximum k-sum-free (or strongly so) subset of s."""
    _require_arity(k)
    if budget is not None and budget <= 0:
        raise InvalidParameterError(f"time budget must be positive, got {budget}")
    if algo not in ("bb", "brute"):
        raise InvalidParameterError(f"unknown solver algo {algo!r}")
    if algo == "brute" and len(s) > BRUTE_SIZE_LIMIT:
        raise InvalidParameterError(
            f"brute force is limited to {BRUTE_SIZE_LIMIT} elements, got {len(s)}"
        )
    graph = build_hypergraph(s, k, strong=strong, edge_cap=edge_cap)
    masks = _edge_masks(s.elements, graph.edges)
    if algo == "brute":
        result = _solve_brute(s.elements, masks)
    else:
        result = _solve_bb(s.elements, masks, budget)
    checker = is_strongly_k_sum_free if strong else is_k_sum_free
    if not checker(result.witness, k):
        raise FalsificationError("solver witness fails the sum-freeness predicate")
    return result


def max_fraction(
    grid: FolnerGrid, k: int, budget: Optional[float] = None, algo: str = "bb"
) -> MaxFractionResult:
    """Largest k-sum-free fraction of a grid, with the solver's status attached."""
    f = generate(grid)
    result = max_k_sum_free(f, k, algo=algo, budget=budget)
    return MaxFractionResult(Fraction(result.size, len(f)), result)
