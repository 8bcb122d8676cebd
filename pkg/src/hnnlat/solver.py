"""Search for total cyclic orders invariant under given permutations.

The search assigns an orientation to every 3-subset of the ground set.
Totality, cyclicity and asymmetry are built into the representation; a full
assignment is a cyclic order iff every 4-subset of points carries one of the
six cyclic orders of four elements, which is exactly how propagation prunes:
deciding a 3-subset filters the feasible arrangements of each 4-subset it
sits in, forcing orientations or exposing a conflict.  Permutation
constraints propagate decided orientations along generator images, with a
preserve/reverse sign per generator.

The underlying decision problem is NP-complete in general; instances here
are desk scale, so chronological backtracking without clause learning is
deliberate.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product

from .cyclic import CyclicOrder, check_axioms, order_from_arrangement
from .errors import PreconditionError

Subset = tuple[int, int, int]  # sorted


def _orient(x: int, y: int, z: int) -> tuple[Subset, bool]:
    """Canonical (sorted subset, orientation) of an ordered triple."""
    rotations = ((x, y, z), (y, z, x), (z, x, y))
    rot = min(rotations)  # starts with the smallest element
    key = tuple(sorted(rot))
    return key, rot == key


_FOUR_ARRANGEMENTS = [(0,) + p for p in permutations((1, 2, 3))]


@dataclass(frozen=True)
class SolverResult:
    satisfiable: bool
    witness: CyclicOrder | None
    signs: tuple[int, ...] | None  # +1 preserve / -1 reverse, per generator
    nodes_explored: int


class _Conflict(Exception):
    pass


class _Search:
    def __init__(self, m: int, generators, signs):
        self.m = m
        self.generators = generators
        self.signs = signs
        self.subsets = list(combinations(range(m), 3))
        self.assignment: dict[Subset, bool] = {}
        self.trail: list[Subset] = []
        self.nodes = 0

    # -- assignment with propagation ------------------------------------

    def _set(self, key: Subset, value: bool, queue: list):
        old = self.assignment.get(key)
        if old is not None:
            if old != value:
                raise _Conflict
            return
        self.assignment[key] = value
        self.trail.append(key)
        queue.append(key)

    def _propagate(self, queue: list):
        while queue:
            key = queue.pop()
            value = self.assignment[key]
            a, b, c = key
            ordered = (a, b, c) if value else (a, c, b)
            for g, sign in zip(self.generators, self.signs):
                if sign == 1:
                    image = (g[ordered[0]], g[ordered[1]], g[ordered[2]])
                else:
                    image = (g[ordered[2]], g[ordered[1]], g[ordered[0]])
                ikey, ival = _orient(*image)
                self._set(ikey, ival, queue)
            for d in range(self.m):
                if d in key:
                    continue
                self._filter_quad(tuple(sorted((a, b, c, d))), queue)

    def _filter_quad(self, quad: tuple[int, int, int, int], queue: list):
        triples = list(combinations(quad, 3))
        decided = [(t, self.assignment.get(t)) for t in triples]
        feasible = []
        for arrangement in _FOUR_ARRANGEMENTS:
            points = tuple(quad[i] for i in arrangement)
            pos = {p: i for i, p in enumerate(points)}
            ok = True
            orientations = {}
            for t in triples:
                i, j, k = (pos[v] for v in t)
                # t sorted; orientation true iff walking the circle from the
                # smallest element meets the middle one before the largest
                orientations[t] = (j - i) % 4 < (k - i) % 4
            for t, val in decided:
                if val is not None and orientations[t] != val:
                    ok = False
                    break
            if ok:
                feasible.append(orientations)
        if not feasible:
            raise _Conflict
        for t, val in decided:
            if val is None:
                forced = {o[t] for o in feasible}
                if len(forced) == 1:
                    self._set(t, forced.pop(), queue)

    # -- branching -------------------------------------------------------

    def _pick(self) -> Subset | None:
        best = None
        best_score = -1
        for key in self.subsets:
            if key in self.assignment:
                continue
            score = 0
            for other in self.assignment:
                if len(set(key) & set(other)) == 2:
                    score += 1
            if score > best_score:
                best, best_score = key, score
        return best

    def run(self) -> dict[Subset, bool] | None:
        key = self._pick()
        if key is None:
            return dict(self.assignment)
        self.nodes += 1
        for value in (True, False):
            mark = len(self.trail)
            try:
                queue: list = []
                self._set(key, value, queue)
                self._propagate(queue)
                result = self.run()
                if result is not None:
                    return result
            except _Conflict:
                pass
            while len(self.trail) > mark:
                del self.assignment[self.trail.pop()]
        return None


def _as_permutation(p, m: int) -> dict[int, int]:
    if isinstance(p, dict):
        mapping = {int(k): int(v) for k, v in p.items()}
    else:
        mapping = {i: int(v) for i, v in enumerate(p)}
    if sorted(mapping) != list(range(m)) or sorted(mapping.values()) != list(range(m)):
        raise PreconditionError("generator is not a permutation of the ground set")
    return mapping


def _assignment_to_order(m: int, assignment: dict[Subset, bool]) -> CyclicOrder:
    triples = set()
    for (a, b, c), value in assignment.items():
        ordered = (a, b, c) if value else (a, c, b)
        triples.update({ordered, (ordered[1], ordered[2], ordered[0]), (ordered[2], ordered[0], ordered[1])})
    return CyclicOrder(tuple(range(m)), frozenset(triples))


def search_invariant_order(m: int, generators, mode: str = "preserve-only") -> SolverResult:
    """Decide whether a total cyclic order on 0..m-1 is compatible with all
    generators: every generator preserving it ('preserve-only'), or each one
    preserving or reversing per a consistent sign vector ('respect').

    Satisfiable results carry a witness order (validated against the axioms)
    and the sign vector; unsatisfiable results carry the explored node count.
    """
    if m < 3:
        raise PreconditionError("ground set needs at least three points")
    if mode not in ("preserve-only", "respect"):
        raise PreconditionError(f"unknown mode {mode!r}")
    perms = [_as_permutation(p, m) for p in generators]
    identity = {i: i for i in range(m)}
    if mode == "preserve-only":
        sign_vectors = [tuple([1] * len(perms))]
    else:
        sign_vectors = []
        for signs in product((1, -1), repeat=len(perms)):
            # identical generators must carry identical signs; the identity
            # cannot reverse
            ok = all(
                not (perms[i] == perms[j] and signs[i] != signs[j])
                for i in range(len(perms))
                for j in range(i + 1, len(perms))
            ) and all(not (p == identity and s == -1) for p, s in zip(perms, signs))
            if ok:
                sign_vectors.append(signs)
    total_nodes = 0
    for signs in sign_vectors:
        search = _Search(m, perms, signs)
        try:
            assignment = search.run()
        except _Conflict:
            assignment = None
        total_nodes += search.nodes
        if assignment is not None:
            witness = _assignment_to_order(m, assignment)
            violation = check_axioms(witness.ground, witness.triples)
            if violation is not None:  # pragma: no cover - propagation is sound
                raise AssertionError(f"solver produced an invalid witness: {violation}")
            return SolverResult(True, witness, signs, total_nodes)
    return SolverResult(False, None, None, total_nodes)


def all_cyclic_orders(m: int):
    """Every total cyclic order on 0..m-1, one per circular arrangement."""
    for rest in permutations(range(1, m)):
        yield order_from_arrangement((0,) + rest)
