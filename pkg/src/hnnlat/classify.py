"""Decide whether a rational matrix is conjugate to an orthogonal matrix,
and whether it has finite order, by exact polynomial arithmetic.

The criterion: conjugacy into the orthogonal group holds iff the minimal
polynomial is squarefree and every irreducible factor has all complex
roots on the unit circle.  The unit-circle test per factor strips the
roots +-1, requires the factor to be self-reciprocal, substitutes
y = x + 1/x, and then demands that the degree-halved image have all its
roots real inside (-2, 2), counted by Sturm sequences.  Finite order is
the special case where every factor is cyclotomic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import polynomials as pp
from .errors import PreconditionError
from .matrices import RationalMatrix


@dataclass(frozen=True)
class FactorVerdict:
    factor: pp.Poly
    multiplicity: int
    on_unit_circle: bool
    cyclotomic_index: int | None


@dataclass(frozen=True)
class MatrixClassification:
    orthogonal_conjugate: bool
    order: int | None  # None encodes infinite order
    minimal_polynomial: pp.Poly
    squarefree: bool
    factors: tuple[FactorVerdict, ...]

    @property
    def finite_order(self) -> bool:
        return self.order is not None


def _self_reciprocal(f: pp.Poly) -> bool:
    # reversed coefficient vector equals a nonzero rational multiple of f
    rev = pp.poly(list(reversed(f)))
    if pp.degree(rev) != pp.degree(f):
        return False
    lam = rev[-1] / f[-1]
    return lam != 0 and all(r == lam * c for r, c in zip(rev, f))


def _halved_by_x_plus_inverse(f: pp.Poly) -> pp.Poly:
    """For palindromic f of degree 2m, the g with f(x) = x^m * g(x + 1/x)."""
    m = pp.degree(f) // 2
    # p_i(y) = x^i + x^-i satisfies p_0 = 2, p_1 = y, p_i = y*p_{i-1} - p_{i-2}
    p_prev, p_cur = pp.poly([2]), pp.X
    g = pp.poly([f[m]])
    for i in range(1, m + 1):
        g = pp.add(g, pp.scale(p_cur, f[m + i]))
        p_prev, p_cur = p_cur, pp.sub(pp.mul(pp.X, p_cur), p_prev)
    return g


def _roots_on_unit_circle(f: pp.Poly) -> bool:
    """All complex roots of the irreducible monic factor f on |z| = 1."""
    linear_one = pp.poly([-1, 1])
    linear_minus_one = pp.poly([1, 1])
    if f in (linear_one, linear_minus_one):
        return True
    if pp.degree(f) % 2 == 1 or not _self_reciprocal(f):
        return False
    if f[0] != 1:
        # monic self-reciprocal forces f(0) = +-1, and -1 would put a root
        # at x = 1, impossible for an irreducible factor of degree >= 2
        return False
    g = _halved_by_x_plus_inverse(f)
    # A root of g at y = +-2 would mean x = +-1 divides f; f is irreducible
    # of degree >= 2, so the open-interval Sturm count is the whole story.
    if pp.evaluate(g, 2) == 0 or pp.evaluate(g, -2) == 0:
        return False
    return pp.sturm_count(g, Fraction(-2), Fraction(2)) == pp.degree(g)


def classify_matrix(a: RationalMatrix) -> MatrixClassification:
    """Full classification of an invertible rational matrix."""
    if a.det() == 0:
        raise PreconditionError("matrix is singular")
    minpoly = pp.minimal_polynomial(a)
    squarefree = pp.is_squarefree(minpoly)
    verdicts = []
    for factor, mult in pp.factor_rational(minpoly):
        on_circle = _roots_on_unit_circle(factor)
        cyc = pp.cyclotomic_index(factor) if on_circle else None
        verdicts.append(FactorVerdict(factor, mult, on_circle, cyc))
    orthogonal = squarefree and all(v.on_unit_circle for v in verdicts)
    if squarefree and all(v.cyclotomic_index is not None for v in verdicts):
        order = pp.integer_lcm(v.cyclotomic_index for v in verdicts)
    else:
        order = None
    return MatrixClassification(
        orthogonal_conjugate=orthogonal,
        order=order,
        minimal_polynomial=minpoly,
        squarefree=squarefree,
        factors=tuple(verdicts),
    )


def solve_conjugator(primed_gens, doubleprimed_gens) -> RationalMatrix:
    """The unique rational matrix sending each primed generator to its
    double-primed partner (generators given as equal-shape column lists)."""
    if len(primed_gens) != len(doubleprimed_gens):
        raise PreconditionError("generator lists must have equal shapes")
    p = RationalMatrix.from_columns(primed_gens)
    d = RationalMatrix.from_columns(doubleprimed_gens)
    if p.det() == 0:
        raise PreconditionError("primed generators are singular")
    return d.matmul(p.inverse())
