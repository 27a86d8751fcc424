"""Dense exact integer matrices.

Entries are Python ints, so products never overflow; powers of a 10x10
matrix with entries in the millions are routine in the conjugacy code.
"""
from __future__ import annotations

from typing import Iterable, Iterator, Sequence


class DimensionError(ValueError):
    """Raised when matrix shapes are incompatible for an operation."""


def _init(m, rows: int, cols: int, entries: tuple) -> None:
    for name, value in (("rows", rows), ("cols", cols), ("entries", entries), ("_hash", None)):
        object.__setattr__(m, name, value)


class IntMatrix:
    """Immutable row-major matrix of arbitrary-precision integers.

    >>> m = IntMatrix([[1, 2], [1, 1]])
    >>> (m @ m).tolist()
    [[3, 4], [2, 3]]
    """

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, data: Sequence[Sequence[int]]):
        rows = [tuple(int(x) for x in r) for r in data]
        if not rows or not rows[0]:
            raise DimensionError("matrix must have at least one row and one column")
        cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise DimensionError("ragged rows")
        _init(self, len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def _raw(cls, rows: int, cols: int, entries: tuple) -> "IntMatrix":
        m = object.__new__(cls)
        _init(m, rows, cols, entries)
        return m

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[int]) -> "IntMatrix":
        entries = tuple(int(x) for x in entries)
        if rows < 1 or cols < 1 or len(entries) != rows * cols:
            raise DimensionError(f"cannot shape {len(entries)} entries as {rows}x{cols}")
        return cls._raw(rows, cols, entries)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls._raw(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls._raw(rows, cols, (0,) * (rows * cols))

    @classmethod
    def ones(cls, rows: int, cols: int = 1) -> "IntMatrix":
        return cls._raw(rows, cols, (1,) * (rows * cols))

    @classmethod
    def column(cls, values: Iterable[int]) -> "IntMatrix":
        values = tuple(int(x) for x in values)
        return cls._raw(len(values), 1, values)

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: int | None = None,
                 cols: int | None = None) -> "IntMatrix":
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        data = [0] * (rows * cols)
        for i, v in enumerate(values):
            data[i * cols + i] = int(v)
        return cls._raw(rows, cols, tuple(data))

    @classmethod
    def block(cls, blocks: Sequence[Sequence["IntMatrix"]]) -> "IntMatrix":
        """Assemble a block matrix; blocks in a row share height, in a column width."""
        out = []
        for brow in blocks:
            h = brow[0].rows
            if any(b.rows != h for b in brow):
                raise DimensionError("block row heights differ")
            for i in range(h):
                out.append([x for b in brow for x in b.row(i)])
        widths = [len(r) for r in out]
        if len(set(widths)) != 1:
            raise DimensionError("block column widths differ")
        return cls(out)

    # -- access ---------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols]

    def iter_rows(self) -> Iterator[tuple[int, ...]]:
        for i in range(self.rows):
            yield self.row(i)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.iter_rows()]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        return IntMatrix([[self[i, j] for j in cols] for i in rows])

    def conjugate_by(self, perm: Sequence[int]) -> "IntMatrix":
        """Return P^t M P where vertex i is sent to perm[i]."""
        n = self.rows
        out = [0] * (n * n)
        for i in range(n):
            pi = perm[i]
            for j in range(n):
                out[pi * n + perm[j]] = self.entries[i * n + j]
        return IntMatrix._raw(n, n, tuple(out))

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix._raw(self.cols, self.rows,
                              tuple(x for j in range(self.cols) for x in self.col(j)))

    def min(self) -> int:
        return min(self.entries)

    def max(self) -> int:
        return max(self.entries)

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for x in self.entries)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def trace(self) -> int:
        _require_square(self)
        return sum(self.entries[i * self.cols + i] for i in range(self.rows))

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.iter_rows())

    def col_sums(self) -> tuple[int, ...]:
        return tuple(sum(self.col(j)) for j in range(self.cols))

    # -- arithmetic -----------------------------------------------------

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return mat_mul(self, other)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        _require_same_shape(self, other)
        return IntMatrix._raw(self.rows, self.cols,
                              tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        _require_same_shape(self, other)
        return IntMatrix._raw(self.rows, self.cols,
                              tuple(x - y for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix._raw(self.rows, self.cols, tuple(-x for x in self.entries))

    def __mul__(self, k: int) -> "IntMatrix":
        if not isinstance(k, int):
            return NotImplemented
        return IntMatrix._raw(self.rows, self.cols, tuple(k * x for x in self.entries))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntMatrix":
        return mat_pow(self, n)

    # -- identity -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.rows, self.cols, self.entries)))
        return self._hash

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    def __lt__(self, other: "IntMatrix") -> bool:
        return (self.rows, self.cols, self.entries) < (other.rows, other.cols, other.entries)

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r})"

    def __str__(self) -> str:
        width = max(len(str(x)) for x in self.entries)
        return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in self.iter_rows())


def _require_square(a: IntMatrix) -> None:
    if not a.is_square:
        raise DimensionError(f"expected a square matrix, got {a.rows}x{a.cols}")


def _require_same_shape(a: IntMatrix, b: IntMatrix) -> None:
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    bcols = [b.col(j) for j in range(b.cols)]
    out = []
    for i in range(a.rows):
        r = a.row(i)
        for c in bcols:
            out.append(sum(x * y for x, y in zip(r, c) if x and y))
    return IntMatrix._raw(a.rows, b.cols, tuple(out))


def mat_pow(a: IntMatrix, n: int) -> IntMatrix:
    """A**n by repeated squaring; A**0 is the identity."""
    _require_square(a)
    if n < 0:
        raise ValueError("negative exponent")
    result = IntMatrix.identity(a.rows)
    base = a
    while n:
        if n & 1:
            result = result @ base
        n >>= 1
        if n:
            base = base @ base
    return result


def mat_vec(a: IntMatrix, v: Sequence[int]) -> tuple[int, ...]:
    if len(v) != a.cols:
        raise DimensionError(f"vector of length {len(v)} against {a.cols} columns")
    return tuple(sum(x * y for x, y in zip(r, v) if x and y) for r in a.iter_rows())


def as_matrix(data) -> IntMatrix:
    return data if isinstance(data, IntMatrix) else IntMatrix(data)
