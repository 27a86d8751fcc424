"""Reachability structure of the graph of a square nonnegative matrix.

Vertex indices are 0-based throughout. There is an edge i -> j whenever
A(i, j) != 0.
"""
from __future__ import annotations

from dataclasses import dataclass

from .matrix import DimensionError, IntMatrix
from .snf import smith_normal_form


def reachability(a: IntMatrix) -> list[list[bool]]:
    """reach[i][j] iff some power A^k, k >= 1, has A^k(i, j) != 0."""
    if not a.is_square:
        raise DimensionError("reachability needs a square matrix")
    n = a.rows
    reach = [[a[i, j] != 0 for j in range(n)] for i in range(n)]
    for k in range(n):
        rk = reach[k]
        for i in range(n):
            if reach[i][k]:
                ri = reach[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    return reach


@dataclass(frozen=True)
class ComponentPoset:
    """Strongly connected components in a fixed topological order.

    ``components[p]`` is a sorted tuple of vertices; ``order`` holds the pairs
    (p, q) with p <= q (reflexive). ``irreducible[p]`` tells whether the
    component carries a cycle, i.e. is an irreducible diagonal block rather
    than a lone vertex without a loop.
    """

    components: tuple[tuple[int, ...], ...]
    order: frozenset[tuple[int, int]]
    irreducible: tuple[bool, ...]

    def leq(self, p: int, q: int) -> bool:
        return (p, q) in self.order

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.components)

    @property
    def vertex_order(self) -> tuple[int, ...]:
        """The vertex permutation that makes the matrix block upper triangular."""
        return tuple(v for c in self.components for v in c)

    def component_of(self, v: int) -> int:
        return next(p for p, c in enumerate(self.components) if v in c)


def scc_poset(a: IntMatrix) -> ComponentPoset:
    reach = reachability(a)
    n = a.rows
    comp_id = [-1] * n
    raw: list[tuple[int, ...]] = []
    for v in range(n):
        if comp_id[v] >= 0:
            continue
        members = tuple(w for w in range(n) if w == v or (reach[v][w] and reach[w][v]))
        for w in members:
            comp_id[w] = len(raw)
        raw.append(members)

    def below(p, q):
        return any(reach[i][j] for i in raw[p] for j in raw[q])

    # Kahn's algorithm; among ready components take the one with least vertex.
    k = len(raw)
    placed: list[int] = []
    remaining = set(range(k))
    while remaining:
        ready = [q for q in remaining
                 if not any(below(p, q) for p in remaining if p != q)]
        q = min(ready, key=lambda c: raw[c][0])
        placed.append(q)
        remaining.remove(q)
    pos = {c: i for i, c in enumerate(placed)}
    comps = tuple(raw[c] for c in placed)
    order = set()
    for p in range(k):
        for q in range(k):
            if p == q or below(placed[p], placed[q]):
                order.add((pos[placed[p]], pos[placed[q]]))
    irred = tuple(reach[c[0]][c[0]] for c in comps)
    return ComponentPoset(comps, frozenset(order), irred)


def is_irreducible(a: IntMatrix) -> bool:
    if not a.is_square:
        return False
    reach = reachability(a)
    return all(all(r) for r in reach)


def row_col_profile(a: IntMatrix) -> tuple[bool, bool]:
    """(has a zero row, has a zero column): sinks and sources."""
    return (any(not any(r) for r in a.iter_rows()),
            any(not any(a.col(j)) for j in range(a.cols)))


def is_essential(a: IntMatrix) -> bool:
    return a.is_square and row_col_profile(a) == (False, False)


def has_zero_row(a: IntMatrix) -> bool:
    return row_col_profile(a)[0]


def block_form(a: IntMatrix) -> tuple[IntMatrix, ComponentPoset]:
    """Conjugate ``a`` into block upper triangular form along its poset."""
    poset = scc_poset(a)
    order = poset.vertex_order
    perm = [0] * a.rows
    for new, old in enumerate(order):
        perm[old] = new
    return a.conjugate_by(perm), poset


def _block_ranges(sizes):
    start = 0
    for s in sizes:
        yield range(start, start + s)
        start += s


def is_canonical_form(a: IntMatrix) -> tuple[bool, list[str]]:
    """Check the three canonical-form clauses after topological reordering.

    Clause 3 reads the Smith normal form condition as applying to the
    diagonal block itself (not to I - block^t), which is how the condition
    is phrased for the block.
    """
    if not a.is_square:
        raise DimensionError("canonical form needs a square matrix")
    b, poset = block_form(a)
    n = b.rows
    violated = []
    if any(b[i, i] <= 0 for i in range(n)):
        violated.append("1: diagonal entry not positive")
    reach = reachability(b)
    if any(reach[i][j] and b[i, j] <= 0 for i in range(n) for j in range(n)):
        violated.append("2: reachable pair without a direct edge")
    for p, rng in enumerate(_block_ranges(poset.block_sizes)):
        if not poset.irreducible[p]:
            continue
        blk = b.submatrix(rng, rng)
        if blk == IntMatrix([[1]]):
            continue
        ok = (blk.rows >= 3
              and smith_normal_form(blk).diag.count(1) >= 2
              and all(blk[i, i] >= 2 for i in range(blk.rows)))
        if not ok:
            violated.append(f"3: irreducible block {p} (vertices {poset.components[p]})")
    return not violated, violated


def poset_isomorphism(pa: ComponentPoset, pb: ComponentPoset) -> tuple[int, ...] | None:
    """A bijection of components preserving block sizes and order, or None."""
    k = len(pa.components)
    if k != len(pb.components) or sorted(pa.block_sizes) != sorted(pb.block_sizes):
        return None
    identity = tuple(range(k))
    if pa.block_sizes == pb.block_sizes and pa.order == pb.order:
        return identity
    assign: list[int] = []
    used = [False] * k

    def extend():
        p = len(assign)
        if p == k:
            return True
        for q in range(k):
            if used[q] or pa.block_sizes[p] != pb.block_sizes[q]:
                continue
            if all(pa.leq(p, r) == pb.leq(q, assign[r]) and pa.leq(r, p) == pb.leq(assign[r], q)
                   for r in range(p)):
                used[q] = True
                assign.append(q)
                if extend():
                    return True
                assign.pop()
                used[q] = False
        return False

    return tuple(assign) if extend() else None


def is_standard_form_pair(a: IntMatrix, b: IntMatrix) -> bool:
    if not (is_canonical_form(a)[0] and is_canonical_form(b)[0]):
        return False
    return poset_isomorphism(scc_poset(a), scc_poset(b)) is not None


__all__ = [
    "ComponentPoset", "reachability", "scc_poset", "is_irreducible", "row_col_profile",
    "is_essential", "has_zero_row", "block_form", "is_canonical_form",
    "poset_isomorphism", "is_standard_form_pair",
]
