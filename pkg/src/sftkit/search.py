"""Bounded bidirectional search for balanced strong shift equivalence paths.

Nodes are matrices up to simultaneous permutation (deduplicated by
canonical form). Edges are out-amalgamations, outsplits and balanced
elementary moves, all kept inside the size and entry bounds. Each level of
the breadth-first search is finished before the two frontiers are compared,
so the result does not depend on expansion order within a level.
"""
from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .conjugacy import canonical_key, permutation_equivalent
from .graph import has_zero_row
from .matrix import DimensionError, IntMatrix, as_matrix
from .moves import (Move, MoveSequence, amalgamate_groups, balanced_move, division_from_labels,
                    outamalgamation_move, outsplit_move, permutation_move, verify_move_sequence)


@dataclass(frozen=True)
class SearchLimits:
    max_matrix_size: int = 6
    max_depth: int = 6
    max_entry: int = 4
    max_nodes: int = 20000

    def __post_init__(self):
        for name in ("max_matrix_size", "max_depth", "max_entry", "max_nodes"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")

    @classmethod
    def for_pair(cls, a: IntMatrix, b: IntMatrix, **overrides) -> "SearchLimits":
        # one vertex of headroom lets a path pass through a single split
        base = dict(max_matrix_size=max(a.rows, b.rows) + 1,
                    max_entry=max(2, a.max(), b.max()))
        base.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**base)


key_of = lru_cache(maxsize=200_000)(canonical_key)


# -- enumeration helpers -----------------------------------------------------

def set_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of ``parts`` nonnegative ints summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in compositions(total - head, parts - 1):
            yield (head,) + tail


def _vectors_below(bound: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    return product(*(range(b + 1) for b in bound))


def vector_partitions(row: tuple[int, ...], parts: int,
                      cap: tuple[int, ...] | None = None) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Multisets of ``parts`` nonzero vectors summing to ``row``, parts in descending order."""
    if parts == 1:
        if any(row) and (cap is None or row <= cap):
            yield (row,)
        return
    for p in _vectors_below(row):
        if not any(p) or (cap is not None and p > cap):
            continue
        rest = tuple(x - y for x, y in zip(row, p))
        if not any(rest):
            continue
        for tail in vector_partitions(rest, parts - 1, p):
            yield (p,) + tail


# -- neighbours --------------------------------------------------------------

def _amalgamation_moves(a: IntMatrix, limits: SearchLimits) -> list[Move]:
    classes: "OrderedDict[tuple, list[int]]" = OrderedDict()
    for j in range(a.cols):
        classes.setdefault(a.col(j), []).append(j)
    multi = [c for c in classes.values() if len(c) > 1]
    if not multi:
        return []
    singles = [[c[0]] for c in classes.values() if len(c) == 1]
    moves = []
    for choice in product(*(list(set_partitions(c)) for c in multi)):
        groups = singles + [g for part in choice for g in part]
        if len(groups) == a.cols:
            continue
        groups.sort(key=lambda g: g[0])
        smaller, d, e = amalgamate_groups(a, groups)
        if smaller.max() <= limits.max_entry:
            moves.append(outamalgamation_move(d, e))
    return moves


def _outsplit_moves(a: IntMatrix, limits: SearchLimits) -> list[Move]:
    budget = limits.max_matrix_size - a.rows
    if budget <= 0:
        return []
    options = []
    for i in range(a.rows):
        row = a.row(i)
        opts = []
        for q in range(1, budget + 2):
            opts.extend((q - 1, split) for split in vector_partitions(row, q))
        options.append(opts)
    moves = []

    def rec(i, used, chosen):
        if i == a.rows:
            if used == 0:
                return
            labels, parts = [], []
            for v, split in enumerate(chosen):
                for p in split:
                    labels.append(v)
                    parts.append(p)
            d = division_from_labels(labels, a.rows)
            e = IntMatrix(parts)
            moves.append(outsplit_move(d, e))
            return
        for extra, split in options[i]:
            if used + extra <= budget:
                chosen.append(split)
                rec(i + 1, used + extra, chosen)
                chosen.pop()

    rec(0, 0, [])
    return moves


def _balanced_moves(a: IntMatrix, limits: SearchLimits) -> list[Move]:
    classes: "OrderedDict[tuple, list[int]]" = OrderedDict()
    for i in range(a.rows):
        classes.setdefault(a.row(i), []).append(i)
    multi = [c for c in classes.values() if len(c) > 1]
    if not multi:
        return []
    singles = [[c[0]] for c in classes.values() if len(c) == 1]
    moves = []
    for choice in product(*(list(set_partitions(c)) for c in multi)):
        groups = singles + [g for part in choice for g in part]
        if all(len(g) == 1 for g in groups):
            continue
        groups.sort(key=lambda g: g[0])
        labels = [0] * a.rows
        for gi, g in enumerate(groups):
            for v in g:
                labels[v] = gi
        s = division_from_labels(labels, len(groups)).T
        r_a = IntMatrix([a.row(g[0]) for g in groups])
        wide = [g for g in groups if len(g) > 1]
        # each (row group, wide column group) redistributes its mass freely
        slots = [(gi, g) for gi in range(len(groups)) for g in wide]
        choices = [[c for c in compositions(sum(r_a[gi, j] for j in g), len(g))
                    if max(c) <= limits.max_entry] for gi, g in slots]
        for pick in product(*choices):
            rb = [list(r_a.row(gi)) for gi in range(len(groups))]
            for (gi, g), comp in zip(slots, pick):
                for j, x in zip(g, comp):
                    rb[gi][j] = x
            r_b = IntMatrix(rb)
            if r_b == r_a:
                continue
            moves.append(balanced_move(s, r_a, r_b))
    return moves


def neighbors(a, limits: SearchLimits) -> list[Move]:
    """All moves out of ``a`` within the limits, one per target up to permutation."""
    a = as_matrix(a)
    if not a.is_square:
        raise DimensionError("expected a square matrix")
    if has_zero_row(a):
        raise ValueError("matrix has a zero row")
    seen = {key_of(a)}
    out = []
    for mv in (_amalgamation_moves(a, limits) + _outsplit_moves(a, limits)
               + _balanced_moves(a, limits)):
        k = key_of(mv.target)
        if k not in seen:
            seen.add(k)
            out.append(mv)
    return out


# -- search ------------------------------------------------------------------

@dataclass
class SearchResult:
    status: str  # "found" | "exhausted" | "limit"
    path: MoveSequence | None
    nodes: int
    depth: int

    def __bool__(self) -> bool:
        return self.path is not None


def _chain(visited: dict, k) -> list[Move]:
    moves = []
    while True:
        rep, parent, move = visited[k]
        if parent is None:
            return moves[::-1]
        moves.append(move)
        k = parent


def _join(a, b, visited_a, visited_b, k) -> MoveSequence:
    steps = _chain(visited_a, k)
    rep_a, rep_b = visited_a[k][0], visited_b[k][0]
    if rep_a != rep_b:
        w = permutation_equivalent(rep_a, rep_b)
        steps.append(permutation_move(rep_a, w.mapping))
    back = MoveSequence(b, tuple(_chain(visited_b, k))).reversed()
    return MoveSequence(a, tuple(steps) + back.steps)


def search_balanced_path(a, b, limits: SearchLimits | None = None) -> SearchResult:
    a, b = as_matrix(a), as_matrix(b)
    for m in (a, b):
        if not m.is_square:
            raise DimensionError("expected square matrices")
        if has_zero_row(m):
            raise ValueError("matrix has a zero row")
    limits = limits or SearchLimits.for_pair(a, b)
    ka, kb = key_of(a), key_of(b)
    visited_a = {ka: (a, None, None)}
    visited_b = {kb: (b, None, None)}
    if ka == kb:
        path = _join(a, b, visited_a, visited_b, ka)
        return SearchResult("found", path, 1, len(path))
    frontier_a, frontier_b = [ka], [kb]
    depth_a = depth_b = 0
    while depth_a + depth_b < limits.max_depth:
        if not frontier_a or not frontier_b:
            return SearchResult("exhausted", None, len(visited_a) + len(visited_b),
                                depth_a + depth_b)
        side_a = len(frontier_a) <= len(frontier_b)
        visited, other = (visited_a, visited_b) if side_a else (visited_b, visited_a)
        new = []
        for k in (frontier_a if side_a else frontier_b):
            rep = visited[k][0]
            for mv in neighbors(rep, limits):
                k2 = key_of(mv.target)
                if k2 in visited:
                    continue
                visited[k2] = (mv.target, k, mv)
                new.append(k2)
                if len(visited_a) + len(visited_b) > limits.max_nodes:
                    return SearchResult("limit", None, len(visited_a) + len(visited_b),
                                        depth_a + depth_b)
        if side_a:
            frontier_a, depth_a = new, depth_a + 1
        else:
            frontier_b, depth_b = new, depth_b + 1
        meet = next((k for k in new if k in other), None)
        if meet is not None:
            path = _join(a, b, visited_a, visited_b, meet)
            assert verify_move_sequence(path), "search produced an invalid path"
            return SearchResult("found", path, len(visited_a) + len(visited_b), len(path))
    return SearchResult("limit", None, len(visited_a) + len(visited_b), depth_a + depth_b)
