"""One-sided conjugacy and conjugate higher powers.

Both decisions reduce to comparing total amalgamations up to a simultaneous
relabelling of vertices, so most of this module is a small backtracking
matcher for permutation conjugacy.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .graph import has_zero_row
from .matrix import DimensionError, IntMatrix, as_matrix
from .moves import MoveSequence, total_amalgamation


@dataclass(frozen=True)
class PermWitness:
    """Vertex i of the source goes to vertex mapping[i] of the target."""

    mapping: tuple[int, ...]

    def apply(self, m: IntMatrix) -> IntMatrix:
        return m.conjugate_by(self.mapping)

    def inverse(self) -> "PermWitness":
        inv = [0] * len(self.mapping)
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return PermWitness(tuple(inv))

    def then(self, other: "PermWitness") -> "PermWitness":
        return PermWitness(tuple(other.mapping[j] for j in self.mapping))

    @classmethod
    def identity(cls, n: int) -> "PermWitness":
        return cls(tuple(range(n)))


def _signature(ms: Sequence[IntMatrix], v: int):
    return tuple((m[v, v], tuple(sorted(m.row(v))), tuple(sorted(m.col(v)))) for m in ms)


def _match(sources: Sequence[IntMatrix], targets: Sequence[IntMatrix]) -> PermWitness | None:
    n = sources[0].rows
    sig_a = [_signature(sources, v) for v in range(n)]
    sig_b = [_signature(targets, v) for v in range(n)]
    if sorted(sig_a) != sorted(sig_b):
        return None
    cands = [[w for w in range(n) if sig_b[w] == sig_a[v]] for v in range(n)]
    order = sorted(range(n), key=lambda v: (len(cands[v]), v))
    image = [-1] * n
    used = [False] * n
    pairs = list(zip(sources, targets))

    def fits(v, w, k):
        for i in range(k):
            u = order[i]
            x = image[u]
            for a, b in pairs:
                if a[v, u] != b[w, x] or a[u, v] != b[x, w]:
                    return False
        return True

    def dfs(k):
        if k == n:
            return True
        v = order[k]
        for w in cands[v]:
            if not used[w] and fits(v, w, k):
                image[v], used[w] = w, True
                if dfs(k + 1):
                    return True
                image[v], used[w] = -1, False
        return False

    return PermWitness(tuple(image)) if dfs(0) else None


def permutation_equivalent(a, b) -> PermWitness | None:
    """A witness P with P^t a P == b, or None."""
    a, b = as_matrix(a), as_matrix(b)
    if not (a.is_square and b.is_square):
        raise DimensionError("permutation equivalence needs square matrices")
    if a.rows != b.rows:
        return None
    return _match([a], [b])


def joint_permutation_equivalent(a1, a2, b1, b2) -> PermWitness | None:
    """One relabelling carrying a1 to b1 and a2 to b2 simultaneously."""
    a1, a2, b1, b2 = map(as_matrix, (a1, a2, b1, b2))
    if a1.shape != a2.shape or b1.shape != b2.shape:
        raise DimensionError("paired matrices must have equal sizes")
    if a1.rows != b1.rows:
        return None
    return _match([a1, a2], [b1, b2])


# -- canonical labelling -----------------------------------------------------

def _refined_colors(m: IntMatrix) -> list[int]:
    n = m.rows
    sigs = [(m[v, v], tuple(sorted(m.row(v))), tuple(sorted(m.col(v)))) for v in range(n)]
    colors = _rank(sigs)
    while True:
        sigs = [(colors[v],
                 tuple(sorted((m[v, w], colors[w]) for w in range(n))),
                 tuple(sorted((m[w, v], colors[w]) for w in range(n))))
                for v in range(n)]
        new = _rank(sigs)
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _rank(sigs) -> list[int]:
    table = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return [table[s] for s in sigs]


def _twins(m: IntMatrix, u: int, v: int) -> bool:
    if m[u, u] != m[v, v] or m[u, v] != m[v, u]:
        return False
    return all(m[u, x] == m[v, x] and m[x, u] == m[x, v]
               for x in range(m.rows) if x != u and x != v)


def canonical_form(m) -> tuple[IntMatrix, PermWitness]:
    """Least relabelling of ``m`` among those ordering vertices by refined colour.

    Matrices related by a simultaneous permutation get identical canonical
    forms. Entries are compared in the order they become fixed as vertices
    are placed; transpositions of twin vertices are pruned.
    """
    m = as_matrix(m)
    n = m.rows
    colors = _refined_colors(m)
    slot_color = sorted(colors)
    best: list | None = None
    best_order: list[int] = []
    order: list[int] = []
    chunks: list[tuple] = []
    used = [False] * n

    def chunk(v):
        out = [m[v, v]]
        for p in order:
            out.append(m[p, v])
            out.append(m[v, p])
        return tuple(out)

    def dfs(k):
        nonlocal best, best_order
        if k == n:
            if best is None or chunks < best:
                best = list(chunks)
                best_order = list(order)
            return
        tried: list[int] = []
        for v in range(n):
            if used[v] or colors[v] != slot_color[k]:
                continue
            if any(_twins(m, u, v) for u in tried):
                continue
            tried.append(v)
            ch = chunk(v)
            if best is not None and chunks + [ch] > best[:k + 1]:
                continue
            used[v] = True
            order.append(v)
            chunks.append(ch)
            dfs(k + 1)
            chunks.pop()
            order.pop()
            used[v] = False

    dfs(0)
    perm = [0] * n
    for pos, v in enumerate(best_order):
        perm[v] = pos
    witness = PermWitness(tuple(perm))
    return witness.apply(m), witness


def canonical_key(m) -> IntMatrix:
    return canonical_form(m)[0]


# -- decisions ---------------------------------------------------------------

def _require_no_zero_rows(*ms: IntMatrix) -> None:
    for m in ms:
        if not m.is_square:
            raise DimensionError("expected square matrices")
        if has_zero_row(m):
            raise ValueError("matrix has a zero row")


@dataclass(frozen=True)
class ConjugacyCertificate:
    total_a: IntMatrix
    total_b: IntMatrix
    seq_a: MoveSequence
    seq_b: MoveSequence
    witness: PermWitness | None


def one_sided_conjugate(a, b) -> tuple[bool, ConjugacyCertificate]:
    a, b = as_matrix(a), as_matrix(b)
    _require_no_zero_rows(a, b)
    ta, sa = total_amalgamation(a)
    tb, sb = total_amalgamation(b)
    w = permutation_equivalent(ta, tb)
    return w is not None, ConjugacyCertificate(ta, tb, sa, sb, w)


@dataclass
class HigherPowersReport:
    n: int
    totals: dict[str, IntMatrix]
    interpretation: str
    joint_witness: PermWitness | None = None
    separate_witnesses: tuple = (None, None)
    verdict: bool = False
    reason: str = ""
    notes: list[str] = field(default_factory=list)


def conjugate_higher_powers(a, b, n: int | None = None) -> tuple[bool, HigherPowersReport]:
    """Compare total amalgamations of the n-th and (n+1)-st powers.

    ``n`` defaults to max(|A|, |B|) and may not be set lower. When the two
    totals of one matrix differ in size a single shared relabelling is not
    defined, so the m = n and m = n + 1 comparisons are made separately and
    the report says so (``interpretation == "separate"``).
    """
    a, b = as_matrix(a), as_matrix(b)
    _require_no_zero_rows(a, b)
    floor = max(a.rows, b.rows)
    if n is None:
        n = floor
    elif n < floor:
        raise ValueError(f"power {n} is below max(|A|, |B|) = {floor}")
    totals = {
        "A^n": total_amalgamation(a ** n)[0],
        "A^(n+1)": total_amalgamation(a ** (n + 1))[0],
        "B^n": total_amalgamation(b ** n)[0],
        "B^(n+1)": total_amalgamation(b ** (n + 1))[0],
    }
    ta0, ta1, tb0, tb1 = totals.values()
    sep = (permutation_equivalent(ta0, tb0), permutation_equivalent(ta1, tb1))
    joint_ok = ta0.rows == ta1.rows and tb0.rows == tb1.rows
    report = HigherPowersReport(n, totals, "joint" if joint_ok else "separate",
                                separate_witnesses=sep)
    if joint_ok:
        report.joint_witness = joint_permutation_equivalent(ta0, ta1, tb0, tb1)
        report.verdict = report.joint_witness is not None
        if not report.verdict:
            report.reason = ("totals differ" if None in sep
                             else "totals agree separately but not under one permutation")
    else:
        report.verdict = None not in sep
        report.notes.append("totals of A^n and A^(n+1) (or of B) differ in size; "
                            "compared each power separately")
        if not report.verdict:
            report.reason = "total amalgamations differ at m = " + (
                "n" if sep[0] is None else "n+1")
    return report.verdict, report
