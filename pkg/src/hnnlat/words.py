"""The word problem for HNN extensions of Z^n along a rational matrix.

The group is  < Z^n, t | t c t^-1 = A c  for c in a full-rank sublattice D >,
where A is rational and A(D) =: I is again a sublattice of Z^n.  Words are
alternating sequences  c0 t^e1 c1 ... t^ek ck.  Every element has a unique
left-pushed reduced form:

  * no pinch:  t c t^-1 with c in D, or t^-1 c t with c in I, never occurs;
  * every abelian entry followed by t^+1 is the canonical residue mod I, and
    every entry followed by t^-1 is the canonical residue mod D (this applies
    to the head as well); the final entry is unconstrained.

Uniqueness is Britton's lemma plus the choice of Hermite residues as coset
transversals.  Dropping the final abelian entry of the reduced form yields a
canonical name for the coset g Z^n, which the tree module uses as vertex key.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classify import MatrixClassification, classify_matrix
from .errors import PreconditionError
from .lattices import (
    Lattice,
    apply_matrix_to_lattice,
    coset_residue,
    hnf,
    lattice_member,
)
from .matrices import RationalMatrix, Vector


def _vec_add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def _vec_sub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def _vec_neg(a: Vector) -> Vector:
    return tuple(-x for x in a)


class _ExactAction:
    """Integer-only application of a rational matrix, with exactness checks."""

    __slots__ = ("rows", "den")

    def __init__(self, matrix: RationalMatrix):
        self.den = matrix.denominator_lcm()
        self.rows = matrix.scaled_integer_rows(self.den)

    def __call__(self, v: Vector) -> Vector:
        out = []
        for row in self.rows:
            s = sum(r * c for r, c in zip(row, v))
            q, rem = divmod(s, self.den)
            if rem:
                raise PreconditionError(f"conjugation left the lattice: {v}")
            out.append(q)
        return tuple(out)


@dataclass(frozen=True)
class GroupData:
    """Validated presentation data, with derived lattices and classification."""

    dim: int
    matrix: RationalMatrix
    domain: Lattice  # the sublattice conjugated by t (L' in the presentation)
    image: Lattice  # its image under the matrix (L'')
    index_domain: int
    index_image: int
    classification: MatrixClassification

    def __post_init__(self):
        object.__setattr__(self, "_fwd", _ExactAction(self.matrix))
        object.__setattr__(self, "_bwd", _ExactAction(self.matrix.inverse()))

    def conj_fwd(self, v: Vector) -> Vector:
        """t c t^-1 = A c, defined for c in the domain lattice."""
        return self._fwd(v)

    def conj_bwd(self, v: Vector) -> Vector:
        """t^-1 c t = A^-1 c, defined for c in the image lattice."""
        return self._bwd(v)

    def __eq__(self, other):
        return (
            isinstance(other, GroupData)
            and self.dim == other.dim
            and self.matrix == other.matrix
            and self.domain == other.domain
        )

    def __hash__(self):
        return hash((self.dim, self.matrix, self.domain))


def validate_group(n: int, matrix: RationalMatrix, domain_generators) -> GroupData:
    """Check presentation data and derive the dependent pieces.

    Rejects a singular matrix, a domain lattice of less than full rank
    (the presentation needs finite index), and a domain whose image under
    the matrix is not integral.
    """
    if matrix.n != n:
        raise PreconditionError("matrix dimension does not match n")
    if matrix.det() == 0:
        raise PreconditionError("matrix is singular")
    domain = hnf(domain_generators, n)
    if not domain.is_full_rank:
        raise PreconditionError("domain lattice is not full rank (infinite index)")
    try:
        image = apply_matrix_to_lattice(matrix, domain)
    except PreconditionError as exc:
        raise PreconditionError(f"matrix does not map the domain into Z^n: {exc}") from exc
    return GroupData(
        dim=n,
        matrix=matrix,
        domain=domain,
        image=image,
        index_domain=domain.det(),
        index_image=image.det(),
        classification=classify_matrix(matrix),
    )


@dataclass(frozen=True)
class GroupWord:
    """c0 t^e1 c1 ... t^ek ck; head is c0, tail lists (e_i, c_i) pairs."""

    head: Vector
    tail: tuple[tuple[int, Vector], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "head", tuple(int(x) for x in self.head))
        object.__setattr__(
            self, "tail", tuple((int(e), tuple(int(x) for x in c)) for e, c in self.tail)
        )


class NormalForm(GroupWord):
    """A GroupWord in left-pushed reduced form; only ``normalize`` builds these."""


def _check_dimensions(g: GroupData, w: GroupWord):
    if len(w.head) != g.dim or any(len(c) != g.dim for _, c in w.tail):
        raise PreconditionError("word dimension does not match the group")


def normalize(g: GroupData, w: GroupWord) -> NormalForm:
    """Unique left-pushed reduced form of w, in one left-to-right pass.

    Maintaining a reduced prefix whose final abelian entry is still open,
    each incoming t-letter either cancels against the previous one (a pinch,
    conjugating the enclosed entry across) or freezes the open entry to its
    canonical residue and carries the lattice part to the right.
    """
    _check_dimensions(g, w)
    head = w.head
    stack: list[tuple[int, Vector]] = []

    def open_slot() -> Vector:
        return stack[-1][1] if stack else head

    def set_open_slot(v: Vector):
        nonlocal head
        if stack:
            stack[-1] = (stack[-1][0], v)
        else:
            head = v

    for eps, after in w.tail:
        c = open_slot()
        if stack and stack[-1][0] == 1 and eps == -1 and lattice_member(c, g.domain):
            stack.pop()
            set_open_slot(_vec_add(open_slot(), _vec_add(g.conj_fwd(c), after)))
        elif stack and stack[-1][0] == -1 and eps == 1 and lattice_member(c, g.image):
            stack.pop()
            set_open_slot(_vec_add(open_slot(), _vec_add(g.conj_bwd(c), after)))
        else:
            if eps == 1:
                r = coset_residue(c, g.image)
                carry = g.conj_bwd(_vec_sub(c, r))
            else:
                r = coset_residue(c, g.domain)
                carry = g.conj_fwd(_vec_sub(c, r))
            set_open_slot(r)
            stack.append((eps, _vec_add(carry, after)))
    return NormalForm(head, tuple(stack))


def concat(a: GroupWord, b: GroupWord) -> GroupWord:
    """The unreduced concatenation a*b."""
    if not a.tail:
        return GroupWord(_vec_add(a.head, b.head), b.tail)
    last_eps, last_c = a.tail[-1]
    return GroupWord(a.head, a.tail[:-1] + ((last_eps, _vec_add(last_c, b.head)),) + b.tail)


def multiply(g: GroupData, a: NormalForm, b: NormalForm) -> NormalForm:
    _check_dimensions(g, a)
    _check_dimensions(g, b)
    return normalize(g, concat(a, b))


def invert(g: GroupData, w: NormalForm) -> NormalForm:
    parts = [w.head] + [c for _, c in w.tail]
    eps = [e for e, _ in w.tail]
    head = _vec_neg(parts[-1])
    tail = tuple(
        (-eps[k], _vec_neg(parts[k])) for k in range(len(eps) - 1, -1, -1)
    )
    return normalize(g, GroupWord(head, tail))


def t_length(w: GroupWord) -> int:
    return len(w.tail)


def identity_form(g: GroupData) -> NormalForm:
    return NormalForm(tuple([0] * g.dim), ())


def is_identity(w: GroupWord) -> bool:
    return not w.tail and not any(w.head)


def abelian_form(g: GroupData, v) -> NormalForm:
    """The element v of the vertex group Z^n, as a normal form."""
    v = tuple(int(x) for x in v)
    if len(v) != g.dim:
        raise PreconditionError("vector dimension mismatch")
    return NormalForm(v, ())


def stable_letter(g: GroupData, eps: int = 1) -> NormalForm:
    zero = tuple([0] * g.dim)
    return NormalForm(zero, ((1 if eps >= 0 else -1, zero),))
