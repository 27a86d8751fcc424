"""Dimension groups and Bowen-Franks groups as computable data.

An element [v, k] of the dimension group of A is stored as the vector v
with its stage k; two elements are equal when A^t pushes them to the same
vector at a common later stage. Because the kernel chain of A^t stabilises
within |A| steps, pushing |A| stages past the larger stage decides
equality exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .matrix import DimensionError, IntMatrix, as_matrix, mat_pow, mat_vec
from .snf import SnfDecomposition, det_sign, determinant, smith_normal_form


@dataclass(frozen=True)
class DimElement:
    base: IntMatrix
    vec: tuple[int, ...]
    stage: int = 0

    def __post_init__(self):
        object.__setattr__(self, "vec", tuple(int(x) for x in self.vec))
        if len(self.vec) != self.base.rows:
            raise DimensionError(f"vector of length {len(self.vec)} over a {self.base.rows}x{self.base.rows} matrix")
        if self.stage < 0:
            raise ValueError("stage must be nonnegative")

    @classmethod
    def unit(cls, base) -> "DimElement":
        base = as_matrix(base)
        return cls(base, (1,) * base.rows, 0)


def push(a: IntMatrix, v: Sequence[int], steps: int) -> tuple[int, ...]:
    """(A^t)^steps v."""
    return mat_vec(mat_pow(a.T, steps), v)


def dim_elem_equal(x: DimElement, y: DimElement) -> bool:
    if x.base != y.base:
        raise DimensionError("elements live over different matrices")
    a = x.base
    top = max(x.stage, y.stage) + a.rows
    return push(a, x.vec, top - x.stage) == push(a, y.vec, top - y.stage)


def theta_apply(x: DimElement) -> DimElement:
    return DimElement(x.base, mat_vec(x.base.T, x.vec), x.stage)


def positivity_witness(x: DimElement, l_max: int) -> int | None:
    """Least l <= l_max with (A^t)^l v >= 0, or None when inconclusive."""
    at = x.base.T
    v = x.vec
    for l in range(l_max + 1):
        if all(c >= 0 for c in v):
            return l
        v = mat_vec(at, v)
    return None


def induced_dim_map(r, x: DimElement, target) -> DimElement:
    """[v, k] -> [R^t v, k], from the dimension group of A to that of B."""
    r, target = as_matrix(r), as_matrix(target)
    if r.rows != x.base.rows or r.cols != target.rows:
        raise DimensionError(f"R is {r.rows}x{r.cols}, expected {x.base.rows}x{target.rows}")
    return DimElement(target, mat_vec(r.T, x.vec), x.stage)


# -- Bowen-Franks ------------------------------------------------------------

def _reduce(coords: Sequence[int], factors: Sequence[int]) -> tuple[int, ...]:
    # a coordinate over a zero factor is a free integer
    return tuple(c % d if d else c for c, d in zip(coords, factors))


@dataclass(frozen=True)
class Cokernel:
    """Z^n / M Z^n, presented through the Smith normal form of M.

    The class of x has coordinates U x reduced modulo the invariant factors,
    where U is the left transform; equal classes give equal tuples.
    """

    matrix: IntMatrix
    snf: SnfDecomposition

    @classmethod
    def of(cls, m: IntMatrix) -> "Cokernel":
        if not m.is_square:
            raise DimensionError("cokernel presentation expects a square matrix")
        return cls(m, smith_normal_form(m))

    @property
    def factors(self) -> tuple[int, ...]:
        return self.snf.diag

    @property
    def nontrivial(self) -> tuple[int, ...]:
        """Indices of generator coordinates that are not forced to zero."""
        return tuple(i for i, d in enumerate(self.factors) if d != 1)

    def coords(self, x: Sequence[int]) -> tuple[int, ...]:
        return _reduce(mat_vec(self.snf.left, x), self.factors)

    def short_coords(self, x: Sequence[int]) -> tuple[int, ...]:
        c = self.coords(x)
        return tuple(c[i] for i in self.nontrivial)

    @cached_property
    def _left_inverse(self) -> IntMatrix:
        return _unimodular_inverse(self.snf.left)

    def generator(self, i: int) -> tuple[int, ...]:
        """A vector whose class has coordinates e_i."""
        return self._left_inverse.col(i)

    def group(self) -> tuple[int, ...]:
        """The nontrivial cyclic factors; 0 stands for a copy of Z."""
        return tuple(self.factors[i] for i in self.nontrivial)


def _unimodular_inverse(u: IntMatrix) -> IntMatrix:
    # adjugate / det with det = +-1
    n = u.rows
    d = determinant(u)
    if abs(d) != 1:
        raise ValueError("matrix is not unimodular")
    if n == 1:
        return IntMatrix([[d]])
    cof = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = u.submatrix([r for r in range(n) if r != i], [c for c in range(n) if c != j])
            cof[j][i] = (-1) ** (i + j) * determinant(minor) * d
    return IntMatrix(cof)


@dataclass(frozen=True)
class BowenFranksData:
    invariant_factors: tuple[int, ...]
    unit_class: tuple[int, ...]
    sign: int

    def group(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d != 1)

    def to_json(self) -> dict:
        return {"factors": list(self.invariant_factors),
                "unit_class": list(self.unit_class),
                "sign": {-1: "-1", 0: "0", 1: "+1"}[self.sign]}


def bf_cokernel(a: IntMatrix) -> Cokernel:
    a = as_matrix(a)
    return Cokernel.of(IntMatrix.identity(a.rows) - a.T)


def bowen_franks(a, pivot: str = "smallest") -> BowenFranksData:
    a = as_matrix(a)
    if not a.is_square:
        raise DimensionError("Bowen-Franks group of a non-square matrix")
    m = IntMatrix.identity(a.rows) - a.T
    ck = Cokernel(m, smith_normal_form(m, pivot=pivot))
    return BowenFranksData(ck.factors, ck.coords((1,) * a.rows), det_sign(m))


@dataclass(frozen=True)
class BFMap:
    """Homomorphism BF(A) -> BF(B) on the Smith generator bases.

    ``matrix`` has one column per nontrivial generator of BF(A) and one row
    per nontrivial generator of BF(B).
    """

    source: Cokernel
    target: Cokernel
    r: IntMatrix
    matrix: tuple[tuple[int, ...], ...]

    def apply(self, x: Sequence[int]) -> tuple[int, ...]:
        """Image of the class of x (a vector in Z^|A|), in target coordinates."""
        return self.target.coords(mat_vec(self.r.T, x))

    def well_defined(self) -> bool:
        """Relations of BF(A) map into relations of BF(B)."""
        rel = self.r.T @ self.source.matrix
        return all(not any(self.target.coords(rel.col(j))) for j in range(rel.cols))

    def is_isomorphism(self) -> bool:
        if not self.well_defined() or self.source.group() != self.target.group():
            return False
        # surjective onto a group of the same isomorphism type forces bijective
        k = len(self.target.nontrivial)
        if k == 0:
            return True
        cols = [list(c) for c in zip(*self.matrix)] if self.matrix and self.matrix[0] else []
        rows = []
        for t, i in enumerate(self.target.nontrivial):
            gens = [col[t] for col in cols]
            rel = [self.target.factors[i] if s == t else 0 for s in range(k)]
            rows.append(gens + rel)
        snf = smith_normal_form(IntMatrix(rows))
        return snf.diag.count(1) == k


def bf_induced_map(r, source, target) -> BFMap:
    r, source, target = map(as_matrix, (r, source, target))
    if r.rows != source.rows or r.cols != target.rows:
        raise DimensionError(f"R is {r.rows}x{r.cols}, expected {source.rows}x{target.rows}")
    ca, cb = bf_cokernel(source), bf_cokernel(target)
    cols = []
    for i in ca.nontrivial:
        img = cb.coords(mat_vec(r.T, ca.generator(i)))
        cols.append(tuple(img[t] for t in cb.nontrivial))
    matrix = tuple(zip(*cols)) if cols else tuple(() for _ in cb.nontrivial)
    return BFMap(ca, cb, r, tuple(tuple(row) for row in matrix))


def compose_bf(first: BFMap, second: BFMap) -> BFMap:
    """second after first, composed on the generator tables."""
    t1, t2 = first.matrix, second.matrix
    inner = len(first.target.nontrivial)
    k_out = len(second.target.nontrivial)
    k_in = len(first.source.nontrivial)
    table = []
    for t in range(k_out):
        d = second.target.factors[second.target.nontrivial[t]]
        row = []
        for j in range(k_in):
            c = sum(t2[t][s] * t1[s][j] for s in range(inner))
            row.append(c % d if d else c)
        table.append(tuple(row))
    return BFMap(first.source, second.target, first.r @ second.r, tuple(table))


def check_commuting_square(r, a, b) -> tuple[bool, int | None]:
    """Check q_B(R^t e_i) == BF-map(q_A(e_i)) for every basis vector e_i.

    The right-hand side goes through the generator-basis table of the
    induced map, so this tests the table against the direct definition.
    """
    r, a, b = map(as_matrix, (r, a, b))
    f = bf_induced_map(r, a, b)
    for i in range(a.rows):
        e = [0] * a.rows
        e[i] = 1
        direct = f.target.short_coords(mat_vec(r.T, e))
        src = f.source.short_coords(e)
        via = [sum(row[j] * src[j] for j in range(len(src))) for row in f.matrix]
        via = tuple(c % f.target.factors[t] if f.target.factors[t] else c
                    for c, t in zip(via, f.target.nontrivial))
        if direct != via:
            return False, i
    return True, None
