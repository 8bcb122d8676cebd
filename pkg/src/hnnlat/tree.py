"""Balls in the Bass-Serre tree of the HNN extension, with the group action.

Vertices are cosets g Z^n, named by the left-pushed normal form of g with
its final abelian entry dropped (the entry only moves inside the coset).
The base vertex Z^n has the empty key ().  A vertex key of t-length k is
the tuple (head, (e1, c1), ..., (e_{k-1}, c_{k-1}), e_k) with a bare sign
as its last element.

Children of a vertex [h]: one vertex [h c t] per canonical residue c of
Z^n mod the image lattice, and one [h c t^-1] per residue mod the domain
lattice; exactly one child computation returns the BFS parent (the pinch),
so interior vertices have index_domain + index_image neighbours.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import PreconditionError
from .lattices import (
    Lattice,
    apply_matrix_to_lattice,
    coset_residues,
    lattice_intersect,
    minimal_multiplier,
    standard_lattice,
)
from .matrices import Vector
from .words import GroupData, GroupWord, NormalForm, concat, normalize, t_length

Key = tuple
BASE_KEY: Key = ()


def vertex_key(nf: NormalForm) -> Key:
    """Canonical name of the coset (word) * Z^n."""
    if not nf.tail:
        return BASE_KEY
    return (nf.head,) + nf.tail[:-1] + (nf.tail[-1][0],)


def key_word(key: Key, last: Vector | None = None, dim: int | None = None) -> GroupWord:
    """A coset representative for the key, with a chosen final abelian entry."""
    if key == BASE_KEY:
        if dim is None:
            raise PreconditionError("base key needs the ambient dimension")
        zero = tuple([0] * dim)
        return GroupWord(zero if last is None else tuple(last), ())
    head = key[0]
    zero = tuple([0] * len(head))
    tail = key[1:-1] + ((key[-1], zero if last is None else tuple(last)),)
    return GroupWord(head, tail)


def key_depth(key: Key) -> int:
    return 0 if key == BASE_KEY else len(key) - 1


@lru_cache(maxsize=None)
def _transversal(lat: Lattice) -> tuple[Vector, ...]:
    return tuple(coset_residues(lat))


def _child_key(g: GroupData, key: Key, eps: int, digit: Vector) -> Key:
    word = key_word(key, last=digit, dim=g.dim)
    zero = tuple([0] * g.dim)
    child = GroupWord(word.head, word.tail + ((eps, zero),))
    return vertex_key(normalize(g, child))


@dataclass(frozen=True)
class TreeBall:
    """BFS ball around the base vertex; immutable once built."""

    group: GroupData
    radius: int
    vertices: tuple[Key, ...]  # BFS discovery order
    depth: dict[Key, int]
    parent: dict[Key, Key | None]
    path: dict[Key, tuple[tuple[int, Vector], ...]]  # edge labels base -> vertex
    adjacency: dict[Key, tuple[tuple[Key, int, Vector], ...]]  # interior vertices
    stabilizers: dict[Key, Lattice]  # Stab(h Z^n) intersected with Z^n

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def sphere(self, i: int) -> tuple[Key, ...]:
        return tuple(k for k in self.vertices if self.depth[k] == i)

    @property
    def degree(self) -> int:
        return self.group.index_domain + self.group.index_image


def estimated_ball_size(g: GroupData, radius: int) -> int:
    d = g.index_domain + g.index_image
    if radius <= 0:
        return 1
    if d <= 2:
        return 1 + d * radius
    return 1 + d * ((d - 1) ** radius - 1) // (d - 2)


def expand_ball(g: GroupData, radius: int) -> TreeBall:
    """BFS expansion; verifies on the fly that no cross-edges appear."""
    if radius < 0:
        raise PreconditionError("radius must be >= 0")
    depth = {BASE_KEY: 0}
    parent: dict[Key, Key | None] = {BASE_KEY: None}
    path = {BASE_KEY: ()}
    adjacency: dict[Key, tuple] = {}
    order = [BASE_KEY]
    frontier = [BASE_KEY]
    for level in range(radius):
        next_frontier = []
        for key in frontier:
            neighbours = []
            for eps, lat in ((1, g.image), (-1, g.domain)):
                for digit in _transversal(lat):
                    child = _child_key(g, key, eps, digit)
                    neighbours.append((child, eps, digit))
                    if child in depth:
                        if child != parent[key] and child != key:
                            raise PreconditionError(
                                f"cross-edge {key} -> {child}: ball is not a tree"
                            )
                        continue
                    depth[child] = level + 1
                    parent[child] = key
                    path[child] = path[key] + ((eps, digit),)
                    order.append(child)
                    next_frontier.append(child)
            adjacency[key] = tuple(neighbours)
        frontier = next_frontier
    stabilizers = {k: _stabilizer_by_signs(g, tuple(e for e, _ in path[k])) for k in order}
    return TreeBall(
        group=g,
        radius=radius,
        vertices=tuple(order),
        depth=depth,
        parent=parent,
        path=path,
        adjacency=adjacency,
        stabilizers=stabilizers,
    )


def axis_keys(ball: TreeBall) -> tuple[Key, ...]:
    """The geodesic through the base traced by powers of the stable letter:
    vertices t^-r, ..., t^-1, base, t, ..., t^r (zero digits throughout)."""
    zero = tuple([0] * ball.group.dim)
    out = []
    for sign in (-1, 1):
        side = []
        for i in range(1, ball.radius + 1):
            key = (zero,) + ((sign, zero),) * (i - 1) + (sign,)
            side.append(key)
        out.append(side)
    minus, plus = out
    return tuple(reversed(minus)) + (BASE_KEY,) + tuple(plus)


def act_on_ball(ball: TreeBall, w: NormalForm) -> dict[Key, Key]:
    """Vertex map h Z^n -> (w h) Z^n over all ball vertices.

    Images live in the ball of radius ``ball.radius + t_length(w)``; when w
    lies in the vertex group the map permutes each sphere in place.
    """
    g = ball.group
    out = {}
    for key in ball.vertices:
        image = normalize(g, concat(w, key_word(key, dim=g.dim)))
        out[key] = vertex_key(image)
    return out


@lru_cache(maxsize=None)
def _stabilizer_by_signs(g: GroupData, signs: tuple[int, ...]) -> Lattice:
    # Stab(h Z^n) cap Z^n depends only on the sign sequence of the path:
    # conjugation by the abelian digits is trivial on subgroups of Z^n.
    if not signs:
        return standard_lattice(g.dim)
    rest = _stabilizer_by_signs(g, signs[1:])
    if signs[0] == 1:
        pulled = apply_matrix_to_lattice(g.matrix, lattice_intersect(rest, g.domain))
        return lattice_intersect(g.image, pulled)
    pulled = apply_matrix_to_lattice(g.matrix.inverse(), lattice_intersect(rest, g.image))
    return lattice_intersect(g.domain, pulled)


def stabilizer_lattice(g: GroupData, path) -> Lattice:
    """Stab(v) cap Z^n for the vertex reached by the labelled path from base.

    Computed by the backward recursion S(()) = Z^n and
    S((e, d) :: rest) = image cap A(S(rest) cap domain)      for e = +1,
    S((e, d) :: rest) = domain cap A^-1(S(rest) cap image)   for e = -1.
    """
    return _stabilizer_by_signs(g, tuple(int(e) for e, _ in path))


def _realizable_sign_sequences(g: GroupData, length: int):
    """Sign sequences of vertex paths that actually occur in the tree.

    A +1 step directly after a -1 step needs a non-pinching digit mod the
    image lattice (index_image > 1), and symmetrically for -1 after +1.
    """
    seqs = [()]
    for _ in range(length):
        extended = []
        for s in seqs:
            if not s or s[-1] == 1 or g.index_image > 1:
                extended.append(s + (1,))
            if not s or s[-1] == -1 or g.index_domain > 1:
                extended.append(s + (-1,))
        seqs = extended
        yield seqs


@dataclass(frozen=True)
class StabilizationReport:
    """Ball stabilization data for one vertex-group element.

    kernels[i] is the intersection of all vertex stabilizers in the ball of
    radius i+1; multipliers[i] is the least n >= 1 with n*element inside it,
    so <n_i * element> fixes that ball pointwise.
    """

    element: Vector
    depth: int
    kernels: tuple[Lattice, ...]
    multipliers: tuple[int, ...]


def stabilization_sequence(g: GroupData, element, depth: int) -> StabilizationReport:
    element = tuple(int(x) for x in element)
    if len(element) != g.dim:
        raise PreconditionError("element dimension mismatch")
    kernels = []
    multipliers = []
    current = standard_lattice(g.dim)
    for seqs in _realizable_sign_sequences(g, depth):
        for s in seqs:
            current = lattice_intersect(current, _stabilizer_by_signs(g, s))
        kernels.append(current)
        multipliers.append(minimal_multiplier(element, current))
    return StabilizationReport(element, depth, tuple(kernels), tuple(multipliers))


@dataclass(frozen=True)
class ElementSearchResult:
    element: Vector
    report: StabilizationReport
    no_growth: bool  # multipliers never increase: obstruction machinery is vacuous


def candidate_elements(n: int, sup_norm: int = 2) -> list[Vector]:
    """Nonzero integer vectors of bounded sup-norm, one per +-v pair."""
    from itertools import product

    out = []
    for v in product(range(-sup_norm, sup_norm + 1), repeat=n):
        nonzero = next((x for x in v if x), None)
        if nonzero is None or nonzero < 0:
            continue
        out.append(v)
    return sorted(out)


def find_generic_element(g: GroupData, depth: int) -> ElementSearchResult:
    """Search the small-norm candidates for the fastest-growing multiplier
    sequence; the guarantee behind the search applies when the matrix is
    orthogonal-conjugate of infinite order, but a best effort (plus a
    no-growth flag) is returned for every group."""
    best = None
    for v in candidate_elements(g.dim):
        report = stabilization_sequence(g, v, depth)
        if best is None or report.multipliers[-1] > best.multipliers[-1]:
            best = report
    assert best is not None
    return ElementSearchResult(
        element=best.element,
        report=best,
        no_growth=best.multipliers[-1] == best.multipliers[0],
    )
