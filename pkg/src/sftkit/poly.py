"""Integer polynomials and characteristic polynomials."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .matrix import DimensionError, IntMatrix


@dataclass(frozen=True)
class IntPolynomial:
    """Coefficients lowest degree first; no trailing zeros (zero poly is ``()``)."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Sequence[int]):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not self.coeffs or not other.coeffs:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(out)

    def strip_x(self) -> "IntPolynomial":
        """Divide out the largest power of x."""
        c = list(self.coeffs)
        while c and c[0] == 0:
            c.pop(0)
        return IntPolynomial(c)

    def x_valuation(self) -> int:
        return next((i for i, c in enumerate(self.coeffs) if c), 0)

    def evaluate_matrix(self, a: IntMatrix) -> IntMatrix:
        """p(a) by Horner's rule."""
        n = a.rows
        acc = IntMatrix.zeros(n, n)
        for c in reversed(self.coeffs):
            acc = acc @ a + IntMatrix.identity(n) * c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' if mono else ''}{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def char_poly(a: IntMatrix) -> IntPolynomial:
    """det(xI - a) via Faddeev-LeVerrier; every division there is exact over Z."""
    if not a.is_square:
        raise DimensionError("characteristic polynomial of a non-square matrix")
    n = a.rows
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    eye = IntMatrix.identity(n)
    m = IntMatrix.zeros(n, n)
    for k in range(1, n + 1):
        m = a @ m + eye * coeffs[n - k + 1]
        tr = (a @ m).trace()
        assert tr % k == 0
        coeffs[n - k] = -tr // k
    return IntPolynomial(coeffs)
