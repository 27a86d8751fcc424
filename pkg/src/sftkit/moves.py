"""State splitting moves and their certificates.

Conventions: a division matrix D has {0,1} entries, at least one 1 per row
and exactly one 1 per column. An outsplit takes A = D E to B = E D; the
out-amalgamation is the reverse move, recorded with the same (D, E) so that
``source = E D`` and ``target = D E``. A balanced elementary move replaces
A = S R_A by B = S R_B where R_A S = R_B S.
"""
from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Sequence

from .matrix import DimensionError, IntMatrix, as_matrix
from .graph import has_zero_row

OUTSPLIT = "outsplit"
OUTAMALGAMATION = "outamalgamation"
BALANCED = "balanced"
KINDS = (OUTSPLIT, OUTAMALGAMATION, BALANCED)


@dataclass(frozen=True)
class Check:
    """Boolean outcome with the reasons it failed, if any."""

    ok: bool
    failures: tuple[str, ...] = ()
    index: int | None = None

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def from_failures(cls, failures: Sequence[str], index: int | None = None) -> "Check":
        failures = tuple(failures)
        return cls(not failures, failures, index if failures else None)


def is_division_matrix(d: IntMatrix) -> bool:
    if any(x not in (0, 1) for x in d.entries):
        return False
    return all(any(r) for r in d.iter_rows()) and all(sum(d.col(j)) == 1 for j in range(d.cols))


def division_from_labels(labels: Sequence[int], groups: int | None = None) -> IntMatrix:
    """Division matrix with D(g, k) = 1 iff labels[k] == g."""
    groups = max(labels) + 1 if groups is None else groups
    return IntMatrix([[int(lab == g) for lab in labels] for g in range(groups)])


def permutation_matrix(perm: Sequence[int]) -> IntMatrix:
    """P with P(i, perm[i]) = 1, so that P^t M P == M.conjugate_by(perm)."""
    n = len(perm)
    return IntMatrix([[int(perm[i] == j) for j in range(n)] for i in range(n)])


@dataclass(frozen=True)
class Move:
    kind: str
    source: IntMatrix
    target: IntMatrix
    mats: dict = field(hash=False, compare=True)

    def check(self) -> Check:
        return check_move(self)

    def inverse(self) -> "Move":
        if self.kind == OUTSPLIT:
            return Move(OUTAMALGAMATION, self.target, self.source, dict(self.mats))
        if self.kind == OUTAMALGAMATION:
            return Move(OUTSPLIT, self.target, self.source, dict(self.mats))
        m = self.mats
        return Move(BALANCED, self.target, self.source,
                    {"S": m["S"], "R_A": m["R_B"], "R_B": m["R_A"]})


def outsplit_move(d: IntMatrix, e: IntMatrix) -> Move:
    return Move(OUTSPLIT, d @ e, e @ d, {"D": d, "E": e})


def outamalgamation_move(d: IntMatrix, e: IntMatrix) -> Move:
    return Move(OUTAMALGAMATION, e @ d, d @ e, {"D": d, "E": e})


def balanced_move(s: IntMatrix, r_a: IntMatrix, r_b: IntMatrix) -> Move:
    return Move(BALANCED, s @ r_a, s @ r_b, {"S": s, "R_A": r_a, "R_B": r_b})


def permutation_move(m: IntMatrix, perm: Sequence[int]) -> Move:
    """Relabelling M to P^t M P, expressed as an outsplit with D = P."""
    p = permutation_matrix(perm)
    return outsplit_move(p, p.T @ m)


@dataclass(frozen=True)
class MoveSequence:
    start: IntMatrix
    steps: tuple[Move, ...] = ()

    @property
    def end(self) -> IntMatrix:
        return self.steps[-1].target if self.steps else self.start

    def __len__(self) -> int:
        return len(self.steps)

    def then(self, other: "MoveSequence") -> "MoveSequence":
        return MoveSequence(self.start, self.steps + other.steps)

    def reversed(self) -> "MoveSequence":
        return MoveSequence(self.end, tuple(m.inverse() for m in reversed(self.steps)))


def _eq(name: str, lhs: IntMatrix, rhs: IntMatrix) -> list[str]:
    return [] if lhs == rhs else [name]


def check_move(move: Move) -> Check:
    m = move.mats
    fails: list[str] = []
    try:
        if move.kind in (OUTSPLIT, OUTAMALGAMATION):
            d, e = m["D"], m["E"]
            if not is_division_matrix(d):
                fails.append("D is not a division matrix")
            if not e.is_nonnegative():
                fails.append("E has negative entries")
            big, small = (move.target, move.source) if move.kind == OUTSPLIT else (move.source, move.target)
            fails += _eq("D E == smaller matrix", d @ e, small)
            fails += _eq("E D == larger matrix", e @ d, big)
        elif move.kind == BALANCED:
            s, r_a, r_b = m["S"], m["R_A"], m["R_B"]
            if not all(x.is_nonnegative() for x in (s, r_a, r_b)):
                fails.append("negative entries")
            fails += _eq("source == S R_A", s @ r_a, move.source)
            fails += _eq("target == S R_B", s @ r_b, move.target)
            fails += _eq("R_A S == R_B S", r_a @ s, r_b @ s)
        else:
            fails.append(f"unknown move kind {move.kind!r}")
    except DimensionError as exc:
        fails.append(f"dimension mismatch: {exc}")
    return Check.from_failures(fails)


def verify_move_sequence(seq: MoveSequence) -> Check:
    """Replay every step; the Check carries the index of the first failure."""
    current = seq.start
    for k, move in enumerate(seq.steps):
        if move.source != current:
            return Check.from_failures(["source does not match previous matrix"], k)
        chk = check_move(move)
        if not chk:
            return Check.from_failures(chk.failures, k)
        current = move.target
    return Check(True)


# -- outsplits ---------------------------------------------------------------

def apply_outsplit(a, spec: Sequence[Sequence[Sequence[int]]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Split each vertex i of ``a`` into the given parts of row i.

    ``spec[i]`` lists nonzero nonnegative row vectors summing to row i.
    Returns (B, D, E) with A = D E and B = E D.
    """
    a = as_matrix(a)
    if not a.is_square:
        raise DimensionError("outsplit needs a square matrix")
    if len(spec) != a.rows:
        raise ValueError(f"spec covers {len(spec)} vertices, matrix has {a.rows}")
    labels, parts = [], []
    for i, vparts in enumerate(spec):
        if not vparts:
            raise ValueError(f"vertex {i} has no parts")
        total = [0] * a.cols
        for p in vparts:
            p = tuple(int(x) for x in p)
            if len(p) != a.cols or any(x < 0 for x in p):
                raise ValueError(f"bad part {p} for vertex {i}")
            if not any(p):
                raise ValueError(f"zero part for vertex {i}")
            total = [x + y for x, y in zip(total, p)]
            labels.append(i)
            parts.append(p)
        if tuple(total) != a.row(i):
            raise ValueError(f"parts of vertex {i} do not sum to its row")
    d = division_from_labels(labels, a.rows)
    e = IntMatrix(parts)
    return e @ d, d, e


# -- amalgamation ------------------------------------------------------------

def out_amalgamation_step(a) -> tuple[IntMatrix, IntMatrix, IntMatrix] | None:
    """Merge every class of identical columns at once.

    Returns (smaller, D, E) with ``a == E D`` and ``smaller == D E``, or None
    when all columns are distinct.
    """
    a = as_matrix(a)
    classes: "OrderedDict[tuple, list[int]]" = OrderedDict()
    for j in range(a.cols):
        classes.setdefault(a.col(j), []).append(j)
    if len(classes) == a.cols:
        return None
    return amalgamate_groups(a, list(classes.values()))


def amalgamate_groups(a: IntMatrix, groups: Sequence[Sequence[int]]):
    labels = [0] * a.cols
    for g, members in enumerate(groups):
        for j in members:
            labels[j] = g
    d = division_from_labels(labels, len(groups))
    e = IntMatrix([[a[i, members[0]] for members in groups] for i in range(a.rows)])
    return d @ e, d, e


def total_amalgamation(a) -> tuple[IntMatrix, MoveSequence]:
    a = as_matrix(a)
    if not a.is_square:
        raise DimensionError("total amalgamation needs a square matrix")
    if has_zero_row(a):
        raise ValueError("total amalgamation needs a matrix with no zero rows")
    steps = []
    current = a
    while (step := out_amalgamation_step(current)) is not None:
        smaller, d, e = step
        steps.append(outamalgamation_move(d, e))
        current = smaller
    return current, MoveSequence(a, tuple(steps))


# -- insplits and balanced moves ---------------------------------------------

def verify_insplit(a, b, d, e) -> bool:
    """A = E D^t and B = D^t E, exactly."""
    a, b, d, e = map(as_matrix, (a, b, d, e))
    return e @ d.T == a and d.T @ e == b


def verify_balanced_elementary(a, b, s, r_a, r_b) -> tuple[bool, bool]:
    """(A = S R_A, B = S R_B and R_A S = R_B S; S is a transposed division matrix)."""
    a, b, s, r_a, r_b = map(as_matrix, (a, b, s, r_a, r_b))
    if s.cols != r_a.rows or s.cols != r_b.rows or r_a.shape != r_b.shape:
        raise DimensionError("incompatible balanced elementary factors")
    valid = (s @ r_a == a and s @ r_b == b and r_a @ s == r_b @ s
             and all(x.is_nonnegative() for x in (s, r_a, r_b)))
    return valid, is_division_matrix(s.T)
