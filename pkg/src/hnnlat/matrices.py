"""Exact square matrices over the rationals.

Entries are `fractions.Fraction`; nothing in here ever touches floats.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PreconditionError

Vector = tuple[int, ...]


def _as_fraction_rows(rows):
    return tuple(tuple(Fraction(e) for e in row) for row in rows)


class RationalMatrix:
    """Immutable n-by-n matrix with Fraction entries."""

    __slots__ = ("n", "rows")

    def __init__(self, rows):
        rows = _as_fraction_rows(rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise PreconditionError("matrix must be square")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols) -> "RationalMatrix":
        cols = _as_fraction_rows(cols)
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(len(cols))])

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.rows)

    def mul_vec(self, v) -> tuple[Fraction, ...]:
        if len(v) != self.n:
            raise PreconditionError("dimension mismatch")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.rows)

    def mul_int_vec_exact(self, v: Vector) -> Vector:
        """Apply to an integer vector, insisting the image is integral."""
        image = self.mul_vec(v)
        if any(e.denominator != 1 for e in image):
            raise PreconditionError(f"image of {v} is not integral: {image}")
        return tuple(int(e) for e in image)

    def matmul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.n != other.n:
            raise PreconditionError("dimension mismatch")
        cols = list(zip(*other.rows))
        return RationalMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows]
        )

    def det(self) -> Fraction:
        # Fraction-valued Gaussian elimination; n is desk scale.
        n = self.n
        m = [list(row) for row in self.rows]
        det = Fraction(1)
        for c in range(n):
            pivot = next((r for r in range(c, n) if m[r][c] != 0), None)
            if pivot is None:
                return Fraction(0)
            if pivot != c:
                m[c], m[pivot] = m[pivot], m[c]
                det = -det
            det *= m[c][c]
            inv = 1 / m[c][c]
            for r in range(c + 1, n):
                if m[r][c] != 0:
                    factor = m[r][c] * inv
                    m[r] = [a - factor * b for a, b in zip(m[r], m[c])]
        return det

    def inverse(self) -> "RationalMatrix":
        n = self.n
        m = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(self.rows)]
        for c in range(n):
            pivot = next((r for r in range(c, n) if m[r][c] != 0), None)
            if pivot is None:
                raise PreconditionError("matrix is singular")
            m[c], m[pivot] = m[pivot], m[c]
            inv = 1 / m[c][c]
            m[c] = [a * inv for a in m[c]]
            for r in range(n):
                if r != c and m[r][c] != 0:
                    factor = m[r][c]
                    m[r] = [a - factor * b for a, b in zip(m[r], m[c])]
        return RationalMatrix([row[n:] for row in m])

    def is_integral(self) -> bool:
        return all(e.denominator == 1 for row in self.rows for e in row)

    def denominator_lcm(self) -> int:
        from math import lcm

        return lcm(*(e.denominator for row in self.rows for e in row)) if self.n else 1

    def scaled_integer_rows(self, scale: int) -> tuple[Vector, ...]:
        """Rows of scale*self as plain ints; scale must clear denominators."""
        out = []
        for row in self.rows:
            scaled = [e * scale for e in row]
            if any(e.denominator != 1 for e in scaled):
                raise PreconditionError("scale does not clear denominators")
            out.append(tuple(int(e) for e in scaled))
        return tuple(out)

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"RationalMatrix({[[str(e) for e in row] for row in self.rows]})"
