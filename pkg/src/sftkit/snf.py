"""Smith normal form and exact determinants over the integers."""
from __future__ import annotations

from dataclasses import dataclass

from .matrix import DimensionError, IntMatrix


@dataclass(frozen=True)
class SnfDecomposition:
    """``left @ m @ right`` equals the diagonal of ``diag`` (padded to m's shape).

    ``diag`` has min(rows, cols) nonnegative entries, each nonzero one
    dividing the next; zeros come last.
    """

    left: IntMatrix
    diag: tuple[int, ...]
    right: IntMatrix

    def diagonal_matrix(self) -> IntMatrix:
        return IntMatrix.diagonal(self.diag, self.left.rows, self.right.rows)

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d)

    def check(self, m: IntMatrix) -> bool:
        """Replay the reconstruction identity and the divisibility chain."""
        if self.left @ m @ self.right != self.diagonal_matrix():
            return False
        if abs(determinant(self.left)) != 1 or abs(determinant(self.right)) != 1:
            return False
        nz = [d for d in self.diag if d]
        if any(d < 0 for d in self.diag) or self.diag[:len(nz)] != tuple(nz):
            return False
        return all(b % a == 0 for a, b in zip(nz, nz[1:]))


PIVOT_STRATEGIES = ("smallest", "first")


def smith_normal_form(m: IntMatrix, pivot: str = "smallest") -> SnfDecomposition:
    """Return unimodular U, V and invariant factors with U m V diagonal.

    ``pivot`` selects the elimination order: ``"smallest"`` always brings the
    entry of least absolute value into pivot position, ``"first"`` takes the
    first nonzero entry in column-major scan order. Both give the same
    invariant factors; the transforms differ.
    """
    if pivot not in PIVOT_STRATEGIES:
        raise ValueError(f"unknown pivot strategy {pivot!r}")
    nr, nc = m.rows, m.cols
    a = m.tolist()
    u = IntMatrix.identity(nr).tolist()
    v = IntMatrix.identity(nc).tolist()

    def add_row(dst, src, k):
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def add_col(dst, src, k):
        for r in a:
            r[dst] += k * r[src]
        for r in v:
            r[dst] += k * r[src]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def choose(cands):
        # cands: list of (value, position); nonzero values only
        if pivot == "first":
            return cands[0][1]
        return min(cands, key=lambda c: abs(c[0]))[1]

    for t in range(min(nr, nc)):
        cands = [(a[i][j], (i, j)) for j in range(t, nc) for i in range(t, nr) if a[i][j]]
        if not cands:
            break
        pi, pj = choose(cands)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            p = a[t][t]
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            rest = [(a[i][t], i) for i in range(t + 1, nr) if a[i][t]]
            if rest:
                swap_rows(t, choose(rest))
                continue
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            rest = [(a[t][j], j) for j in range(t + 1, nc) if a[t][j]]
            if rest:
                swap_cols(t, choose(rest))
                continue
            bad = next((i for i in range(t + 1, nr)
                        if any(a[i][j] % p for j in range(t + 1, nc))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    diag = tuple(a[i][i] for i in range(min(nr, nc)))
    return SnfDecomposition(IntMatrix(u), diag, IntMatrix(v))


def determinant(m: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    if not m.is_square:
        raise DimensionError(f"determinant of a {m.rows}x{m.cols} matrix")
    n = m.rows
    a = m.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def det_sign(m: IntMatrix) -> int:
    """Sign of det(m) as -1, 0 or +1."""
    d = determinant(m)
    return (d > 0) - (d < 0)
