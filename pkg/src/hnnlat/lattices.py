"""Integer lattices in canonical column Hermite form.

Convention, fixed once for the whole package: a lattice basis is a list of
columns, lower triangular, pivots positive, and every entry sitting in a
pivot row reduced into [0, pivot).  The form is unique, so two lattices are
equal iff their bases compare equal entry for entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import PreconditionError
from .matrices import RationalMatrix, Vector

INFINITE = "infinite"


class NotSublatticeError(PreconditionError):
    """Raised when a claimed sublattice has a generator outside the superlattice."""


def xgcd(a: int, b: int):
    # returns (g, x, y) with g = x*a + y*b, g = gcd(a, b) >= 0
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


@dataclass(frozen=True)
class Lattice:
    """Sublattice of Z^ambient_dim; ``basis`` holds Hermite-form columns."""

    ambient_dim: int
    basis: tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def is_full_rank(self) -> bool:
        return self.rank == self.ambient_dim

    @property
    def pivots(self) -> tuple[int, ...]:
        """Pivot value of each basis column, in column order."""
        return tuple(col[_pivot_row(col)] for col in self.basis)

    def det(self) -> int:
        """Product of pivots; for full rank this is [Z^n : self]."""
        if not self.is_full_rank:
            raise PreconditionError("det defined for full-rank lattices only")
        p = 1
        for v in self.pivots:
            p *= v
        return p

    def scale(self, m: int) -> "Lattice":
        return Lattice(self.ambient_dim, tuple(tuple(m * e for e in col) for col in self.basis))

    def __repr__(self):
        return f"Lattice(dim={self.ambient_dim}, basis={list(self.basis)})"


def standard_lattice(n: int) -> Lattice:
    return Lattice(n, tuple(tuple(int(i == j) for i in range(n)) for j in range(n)))


def _pivot_row(col: Vector) -> int:
    for i, e in enumerate(col):
        if e:
            return i
    raise ValueError("zero column has no pivot")


def _echelon_columns(cols: list[list[int]], n: int, transform: list[list[int]] | None = None):
    """In-place column echelon reduction; returns pivot column positions.

    After the call, for each processed row at most one column is nonzero
    there, columns are ordered by pivot row, and trailing columns are zero.
    ``transform``, when given, receives the same column operations, so the
    input matrix times the final transform equals the reduced matrix.
    """

    def combine(j0, j1, r):
        a, b = cols[j0][r], cols[j1][r]
        g, x, y = xgcd(a, b)
        u, v = -(b // g), a // g
        for mat in (cols, transform) if transform is not None else (cols,):
            c0, c1 = mat[j0], mat[j1]
            mat[j0] = [x * p + y * q for p, q in zip(c0, c1)]
            mat[j1] = [u * p + v * q for p, q in zip(c0, c1)]

    def swap(j0, j1):
        for mat in (cols, transform) if transform is not None else (cols,):
            mat[j0], mat[j1] = mat[j1], mat[j0]

    pivot_cols = []
    next_col = 0
    for r in range(n):
        nz = [j for j in range(next_col, len(cols)) if cols[j][r] != 0]
        if not nz:
            continue
        j0 = nz[0]
        for j in nz[1:]:
            combine(j0, j, r)
        swap(next_col, j0)
        if cols[next_col][r] < 0:
            for mat in (cols, transform) if transform is not None else (cols,):
                mat[next_col] = [-e for e in mat[next_col]]
        pivot_cols.append((r, next_col))
        next_col += 1
    return pivot_cols


def hnf(generators, ambient_dim: int) -> Lattice:
    """Canonical Hermite-form lattice spanned by integer generator vectors.

    Zero generators are permitted and ignored; the result is idempotent and
    independent of the generating set (unique canonical form).
    """
    cols = [list(map(int, g)) for g in generators]
    if any(len(c) != ambient_dim for c in cols):
        raise PreconditionError("generator dimension mismatch")
    pivot_cols = _echelon_columns(cols, ambient_dim)
    # Reduce pivot-row entries of earlier columns into [0, pivot).
    for r, j in pivot_cols:
        pivot = cols[j][r]
        for j2 in range(j):
            q = cols[j2][r] // pivot
            if q:
                cols[j2] = [a - q * b for a, b in zip(cols[j2], cols[j])]
    return Lattice(ambient_dim, tuple(tuple(cols[j]) for _, j in pivot_cols))


def integer_kernel(rows: list[Vector]) -> list[Vector]:
    """Basis of the integer kernel {x : M x = 0} of an integer matrix.

    ``rows`` lists the rows of M; kernel vectors come back as plain tuples.
    """
    n_rows = len(rows)
    n_cols = len(rows[0]) if n_rows else 0
    cols = [[rows[i][j] for i in range(n_rows)] for j in range(n_cols)]
    transform = [[int(i == j) for i in range(n_cols)] for j in range(n_cols)]
    _echelon_columns(cols, n_rows, transform)
    return [tuple(transform[j]) for j in range(n_cols) if not any(cols[j])]


def lattice_member(x, lat: Lattice) -> bool:
    """Exact membership via back-substitution on the Hermite basis."""
    if len(x) != lat.ambient_dim:
        raise PreconditionError("dimension mismatch")
    residual = list(map(int, x))
    for col in lat.basis:
        r = _pivot_row(col)
        if residual[r] % col[r] != 0:
            return False
        q = residual[r] // col[r]
        if q:
            residual = [a - q * b for a, b in zip(residual, col)]
    return not any(residual)

def _coefficients_of(x, lat: Lattice):
    # Rational coordinates of x in lat's basis, or None if x is outside the span.
    residual = [Fraction(int(e)) for e in x]
    coeffs = []
    for col in lat.basis:
        r = _pivot_row(col)
        q = residual[r] / col[r]
        coeffs.append(q)
        if q:
            residual = [a - q * b for a, b in zip(residual, col)]
    if any(residual):
        return None
    return coeffs


def coset_residue(x, lat: Lattice) -> Vector:
    """Canonical representative of x + lat, coordinates reduced into [0, pivot).

    Requires full rank.  residue(x) == residue(y) iff x - y is in lat, and
    residue(x) == 0 iff x is in lat.
    """
    if not lat.is_full_rank:
        raise PreconditionError("coset residues need a full-rank lattice")
    if len(x) != lat.ambient_dim:
        raise PreconditionError("dimension mismatch")
    residual = list(map(int, x))
    for col in lat.basis:
        r = _pivot_row(col)
        q = residual[r] // col[r]  # floor, so the entry lands in [0, pivot)
        if q:
            residual = [a - q * b for a, b in zip(residual, col)]
    return tuple(residual)


def coset_residues(lat: Lattice) -> list[Vector]:
    """All canonical residues of Z^n mod lat, in lexicographic order.

    Full-rank Hermite bases are lower triangular with the column-j pivot on
    the diagonal, so the residues are exactly the integer box vectors with
    coordinate i in [0, basis[i][i]).
    """
    from itertools import product

    if not lat.is_full_rank:
        raise PreconditionError("residue enumeration needs a full-rank lattice")
    pivots = [lat.basis[i][i] for i in range(lat.ambient_dim)]
    return [digits for digits in product(*(range(p) for p in pivots))]


def lattice_index(sub: Lattice, sup: Lattice):
    """[sup : sub] as an exact integer; INFINITE on rank defect.

    Raises NotSublatticeError when some sub generator is outside sup.
    """
    if sub.ambient_dim != sup.ambient_dim:
        raise PreconditionError("ambient dimension mismatch")
    coeff_cols = []
    for col in sub.basis:
        coeffs = _coefficients_of(col, sup)
        if coeffs is None or any(c.denominator != 1 for c in coeffs):
            raise NotSublatticeError(f"generator {col} is not in the superlattice")
        coeff_cols.append([int(c) for c in coeffs])
    if sub.rank < sup.rank:
        return INFINITE
    index = RationalMatrix(coeff_cols).det()
    return abs(int(index))


def lattice_intersect(a: Lattice, b: Lattice) -> Lattice:
    """Set-theoretic intersection of two full-rank lattices, in Hermite form."""
    if a.ambient_dim != b.ambient_dim:
        raise PreconditionError("ambient dimension mismatch")
    if not (a.is_full_rank and b.is_full_rank):
        raise PreconditionError("intersection implemented for full-rank lattices")
    n = a.ambient_dim
    # x in both lattices iff (u, v) with A u = B v; kernel of [A | -B].
    rows = [tuple(a.basis[j][i] for j in range(n)) + tuple(-b.basis[j][i] for j in range(n)) for i in range(n)]
    kernel = integer_kernel(rows)
    gens = []
    for vec in kernel:
        u = vec[:n]
        gens.append(tuple(sum(a.basis[j][i] * u[j] for j in range(n)) for i in range(n)))
    return hnf(gens, n)


def rational_lattice_intersect_with_Zn(a: RationalMatrix) -> Lattice:
    """The lattice {x in Z^n : a x in Z^n}, in Hermite form."""
    n = a.n
    if a.det() == 0:
        raise PreconditionError("matrix is singular")
    scale = a.denominator_lcm()
    if scale == 1:
        return standard_lattice(n)
    num = a.scaled_integer_rows(scale)  # a = num / scale
    # x qualifies iff num x is 0 mod scale: kernel of [num | -scale I].
    rows = [num[i] + tuple(-scale * int(i == j) for j in range(n)) for i in range(n)]
    kernel = integer_kernel(rows)
    return hnf([vec[:n] for vec in kernel], n)


def apply_matrix_to_lattice(a: RationalMatrix, lat: Lattice) -> Lattice:
    """Image lattice a(lat); every image generator must be integral."""
    cols = [a.mul_int_vec_exact(col) for col in lat.basis]
    return hnf(cols, lat.ambient_dim)


def minimal_multiplier(x, lat: Lattice) -> int:
    """Least n >= 1 with n*x in lat (full-rank lat), via exact coordinates."""
    coeffs = _coefficients_of(x, lat)
    if coeffs is None:
        raise PreconditionError("vector outside the lattice span")
    result = 1
    for c in coeffs:
        result = result * c.denominator // gcd(result, c.denominator)
    return result
