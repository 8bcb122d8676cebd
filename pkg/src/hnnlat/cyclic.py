"""Cyclic orders on finite sets: axioms, intervals, closure with traces.

A cyclic order is a ternary relation [a, b, c] ("after a, one reaches b
before c") satisfying cyclicity, asymmetry, transitivity, and connectedness.
Partial constraint sets are closed under the two production rules

    [a,b,c]            |-  [b,c,a]          (cyclicity)
    [a,b,c], [a,c,d]   |-  [a,b,d]          (transitivity)

and an asymmetry clash between a derived pair [a,b,c] / [c,b,a] is reported
with a replayable derivation trace.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError

Triple = tuple[int, int, int]


def _check_triple(t, ground: frozenset) -> Triple:
    a, b, c = (int(v) for v in t)
    if len({a, b, c}) != 3:
        raise PreconditionError(f"triple {t} has repeated entries")
    if not {a, b, c} <= ground:
        raise PreconditionError(f"triple {t} leaves the ground set")
    return (a, b, c)


@dataclass(frozen=True)
class CyclicOrder:
    """A total cyclic order; construct via ``standard_order`` or the solver,
    or call ``check_axioms`` yourself when building one by hand."""

    ground: tuple[int, ...]
    triples: frozenset[Triple]

    def __contains__(self, t) -> bool:
        return tuple(t) in self.triples

    def size(self) -> int:
        return len(self.ground)


@dataclass(frozen=True)
class AxiomViolation:
    axiom: str
    witness: tuple[Triple, ...]


def check_axioms(ground, triples) -> AxiomViolation | None:
    """Exhaustive check of all four axioms; None means the relation passes.

    Cyclicity, asymmetry and connectedness cost O(m^3); transitivity joins
    every related pair sharing a pivot, O(m^4) worst case.
    """
    ground_set = frozenset(int(g) for g in ground)
    rel = {_check_triple(t, ground_set) for t in triples}
    for a, b, c in rel:
        if (b, c, a) not in rel:
            return AxiomViolation("cyclicity", ((a, b, c),))
        if (c, b, a) in rel:
            return AxiomViolation("asymmetry", ((a, b, c), (c, b, a)))
    by_pivot: dict[int, list[Triple]] = {}
    for t in rel:
        by_pivot.setdefault(t[0], []).append(t)
    for a, group in by_pivot.items():
        present = {(b, c) for _, b, c in group}
        for _, b, c in group:
            for _, c2, d in group:
                if c2 == c and d != b and (b, d) not in present:
                    return AxiomViolation("transitivity", ((a, b, c), (a, c, d)))
    members = sorted(ground_set)
    for i, a in enumerate(members):
        for b in members[i + 1 :]:
            for c in members:
                if c == a or c == b:
                    continue
                if (a, b, c) not in rel and (a, c, b) not in rel:
                    return AxiomViolation("connectedness", ((a, b, c), (a, c, b)))
    return None


def order_from_arrangement(arrangement) -> CyclicOrder:
    """Total cyclic order of a circular arrangement (clockwise reading)."""
    seq = [int(v) for v in arrangement]
    m = len(seq)
    if m < 3:
        raise PreconditionError("need at least three points")
    if len(set(seq)) != m:
        raise PreconditionError("arrangement repeats a point")
    pos = {v: i for i, v in enumerate(seq)}
    triples = set()
    for a in seq:
        for b in seq:
            for c in seq:
                if len({a, b, c}) != 3:
                    continue
                if (pos[b] - pos[a]) % m < (pos[c] - pos[a]) % m:
                    triples.add((a, b, c))
    return CyclicOrder(tuple(sorted(seq)), frozenset(triples))


def standard_order(m: int) -> CyclicOrder:
    """Clockwise order of m points on a circle: [i,j,k] iff j comes before k
    when walking from i."""
    if m < 3:
        raise PreconditionError("standard order needs m >= 3")
    return order_from_arrangement(range(m))


def interval(order: CyclicOrder, a: int, b: int) -> frozenset:
    """The open arc (a, b): points x with [a, x, b]."""
    if a == b:
        raise PreconditionError("interval endpoints must differ")
    return frozenset(x for x in order.ground if (a, x, b) in order.triples)


def respect_type(order: CyclicOrder, f: dict[int, int]) -> str:
    """'preserves', 'reverses', or 'neither', for a bijection f of the ground."""
    ground = set(order.ground)
    if set(f.keys()) != ground or set(f.values()) != ground:
        raise PreconditionError("f is not a bijection of the ground set")
    preserves = all((f[a], f[b], f[c]) in order.triples for a, b, c in order.triples)
    if preserves:
        return "preserves"
    reverses = all((f[c], f[b], f[a]) in order.triples for a, b, c in order.triples)
    return "reverses" if reverses else "neither"


# -- deduction closure ------------------------------------------------------


@dataclass(frozen=True)
class CyclicConstraintSet:
    ground: tuple[int, ...]
    triples: frozenset[Triple]

    @classmethod
    def build(cls, ground, triples) -> "CyclicConstraintSet":
        ground_set = frozenset(int(g) for g in ground)
        return cls(tuple(sorted(ground_set)), frozenset(_check_triple(t, ground_set) for t in triples))


@dataclass(frozen=True)
class DerivationStep:
    triple: Triple
    rule: str  # "given" | "cyclicity" | "transitivity"
    premises: tuple[Triple, ...]


@dataclass(frozen=True)
class ClosureResult:
    consistent: bool
    triples: frozenset[Triple]
    steps: dict[Triple, DerivationStep]
    clash: tuple[Triple, Triple] | None = None

    def trace(self, triple: Triple) -> list[DerivationStep]:
        """Linear derivation of one triple: premises always appear earlier."""
        seen: list[DerivationStep] = []
        emitted = set()

        def visit(t: Triple):
            if t in emitted:
                return
            step = self.steps[t]
            for p in step.premises:
                visit(p)
            emitted.add(t)
            seen.append(step)

        visit(tuple(triple))
        return seen


def closure(cs: CyclicConstraintSet) -> ClosureResult:
    """Least fixpoint of the production rules, or the first asymmetry clash.

    The worklist indexes triples by (pivot, second) and (pivot, third) so
    each transitivity join is found once from either premise.
    """
    steps: dict[Triple, DerivationStep] = {}
    known: set[Triple] = set()
    after: dict[tuple[int, int], set[int]] = {}  # (a, b) -> {c : [a,b,c]}
    before: dict[tuple[int, int], set[int]] = {}  # (a, c) -> {b : [a,b,c]}
    queue: list[Triple] = []

    def push(t: Triple, rule: str, premises: tuple[Triple, ...]):
        if t in known:
            return
        known.add(t)
        steps[t] = DerivationStep(t, rule, premises)
        queue.append(t)

    for t in sorted(cs.triples):
        push(t, "given", ())

    while queue:
        t = queue.pop()
        a, b, c = t
        rev = (c, b, a)
        if rev in known:
            return ClosureResult(False, frozenset(known), steps, clash=(t, rev))
        push((b, c, a), "cyclicity", (t,))
        after.setdefault((a, b), set()).add(c)
        before.setdefault((a, c), set()).add(b)
        # new triple as the left premise: [a,b,c] + [a,c,d] |- [a,b,d]
        for d in after.get((a, c), ()):
            if d not in (a, b, c):
                push((a, b, d), "transitivity", (t, (a, c, d)))
        # new triple as the right premise: [a,e,b] + [a,b,c] |- [a,e,c]
        for e in before.get((a, b), ()):
            if e not in (a, b, c):
                push((a, e, c), "transitivity", ((a, e, b), t))
    return ClosureResult(True, frozenset(known), steps)


def verify_derivation(steps: list[DerivationStep], given: frozenset[Triple]) -> bool:
    """Replay a trace: every step must be a given constraint or follow from
    earlier steps by one rule application."""
    derived: set[Triple] = set()
    for step in steps:
        if step.rule == "given":
            if step.triple not in given:
                return False
        elif step.rule == "cyclicity":
            (p,) = step.premises
            if p not in derived or step.triple != (p[1], p[2], p[0]):
                return False
        elif step.rule == "transitivity":
            p, q = step.premises
            if p not in derived or q not in derived:
                return False
            if p[0] != q[0] or p[2] != q[1] or step.triple != (p[0], p[1], q[2]):
                return False
        else:
            return False
        derived.add(step.triple)
    return True


def chain_constraints(length: int) -> CyclicConstraintSet:
    """The fixture [x_i, x_{i+1}, z] for 0 <= i < length, with z = length + 1
    and x_i = i; transitive closure pushes every x_i behind x_1 seen from z."""
    if length < 2:
        raise PreconditionError("chain needs length >= 2")
    z = length + 1
    ground = list(range(length + 1)) + [z]
    triples = [(i, i + 1, z) for i in range(length)]
    return CyclicConstraintSet.build(ground, triples)


# -- bridge to tree spheres -------------------------------------------------


def sphere_permutation(ball, w, depth: int):
    """Permutation induced on the depth sphere by a vertex-group element.

    Returns (points, mapping, cycle_type): sphere keys in ball order, the
    induced permutation as an index map, and its sorted cycle lengths.
    """
    from .tree import act_on_ball
    from .words import t_length

    if t_length(w) != 0:
        raise PreconditionError("element does not fix the base vertex")
    if depth > ball.radius:
        raise PreconditionError("depth exceeds the ball radius")
    sphere = ball.sphere(depth)
    index = {k: i for i, k in enumerate(sphere)}
    action = act_on_ball(ball, w)
    mapping = {}
    for k in sphere:
        image = action[k]
        if image not in index:
            raise PreconditionError("action does not permute the sphere")
        mapping[index[k]] = index[image]
    return sphere, mapping, cycle_type(mapping)


def cycle_type(mapping: dict[int, int]) -> tuple[int, ...]:
    """Sorted cycle lengths of a permutation given as an index map."""
    seen = set()
    lengths = []
    for start in mapping:
        if start in seen:
            continue
        length = 0
        x = start
        while x not in seen:
            seen.add(x)
            x = mapping[x]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths))
