"""JSON encodings for every value the CLI reads or writes.

Integers are serialized as decimal strings and rationals as "num/den"
strings, so nothing is ever squeezed through a 64-bit hole.  Encoders are
deterministic: canonical orders everywhere, `dumps_canonical` sorts keys.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .classify import FactorVerdict, MatrixClassification
from .coarse import FiniteCoarseSpace, SeparationAnalysis
from .cyclic import ClosureResult, CyclicOrder, DerivationStep
from .errors import InputParseError
from .lattices import Lattice
from .matrices import RationalMatrix
from .polynomials import Poly, poly
from .solver import SolverResult
from .tree import BASE_KEY, Key, StabilizationReport, TreeBall
from .words import GroupData, GroupWord, validate_group


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputParseError(f"invalid JSON: {exc}") from exc


# -- scalars ----------------------------------------------------------------


def encode_int(v: int) -> str:
    return str(int(v))


def decode_int(v) -> int:
    try:
        return int(v)
    except (TypeError, ValueError) as exc:
        raise InputParseError(f"expected an integer, got {v!r}") from exc


def encode_rational(v) -> str:
    f = Fraction(v)
    return f"{f.numerator}/{f.denominator}"


def decode_rational(v) -> Fraction:
    try:
        if isinstance(v, str):
            if "/" in v:
                num, den = v.split("/")
                return Fraction(int(num), int(den))
            return Fraction(int(v))
        if isinstance(v, int):
            return Fraction(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputParseError(f"bad rational {v!r}") from exc
    raise InputParseError(f"bad rational {v!r}")


def encode_vector(v) -> list[str]:
    return [encode_int(x) for x in v]


def decode_vector(v) -> tuple[int, ...]:
    if not isinstance(v, list):
        raise InputParseError(f"expected a vector, got {v!r}")
    return tuple(decode_int(x) for x in v)


# -- matrices, lattices, classification --------------------------------------


def encode_matrix(m: RationalMatrix) -> list[list[str]]:
    return [[encode_rational(e) for e in row] for row in m.rows]


def decode_matrix(rows) -> RationalMatrix:
    if not isinstance(rows, list) or not rows:
        raise InputParseError("matrix must be a non-empty row-major array")
    return RationalMatrix([[decode_rational(e) for e in row] for row in rows])


def encode_lattice(lat: Lattice) -> dict:
    return {
        "ambient_dim": lat.ambient_dim,
        "basis": [encode_vector(col) for col in lat.basis],
    }


def decode_lattice(obj) -> Lattice:
    from .lattices import hnf

    try:
        n = int(obj["ambient_dim"])
        cols = [decode_vector(c) for c in obj["basis"]]
    except (KeyError, TypeError) as exc:
        raise InputParseError(f"bad lattice object: {exc}") from exc
    return hnf(cols, n)


def encode_poly(p: Poly) -> list[str]:
    return [encode_rational(c) for c in p]


def decode_poly(coeffs) -> Poly:
    return poly([decode_rational(c) for c in coeffs])


def encode_classification(c: MatrixClassification) -> dict:
    return {
        "orthogonal_conjugate": c.orthogonal_conjugate,
        "order": "infinite" if c.order is None else {"finite": encode_int(c.order)},
        "evidence": {
            "minimal_polynomial": encode_poly(c.minimal_polynomial),
            "squarefree": c.squarefree,
            "factors": [
                {
                    "coefficients": encode_poly(v.factor),
                    "multiplicity": v.multiplicity,
                    "on_unit_circle": v.on_unit_circle,
                    "cyclotomic_index": None
                    if v.cyclotomic_index is None
                    else encode_int(v.cyclotomic_index),
                }
                for v in c.factors
            ],
        },
    }


def decode_classification(obj) -> MatrixClassification:
    try:
        order = obj["order"]
        order_val = None if order == "infinite" else decode_int(order["finite"])
        ev = obj["evidence"]
        factors = tuple(
            FactorVerdict(
                factor=decode_poly(f["coefficients"]),
                multiplicity=int(f["multiplicity"]),
                on_unit_circle=bool(f["on_unit_circle"]),
                cyclotomic_index=None
                if f["cyclotomic_index"] is None
                else decode_int(f["cyclotomic_index"]),
            )
            for f in ev["factors"]
        )
        return MatrixClassification(
            orthogonal_conjugate=bool(obj["orthogonal_conjugate"]),
            order=order_val,
            minimal_polynomial=decode_poly(ev["minimal_polynomial"]),
            squarefree=bool(ev["squarefree"]),
            factors=factors,
        )
    except (KeyError, TypeError) as exc:
        raise InputParseError(f"bad classification object: {exc}") from exc


# -- groups and words ---------------------------------------------------------


def encode_group(g: GroupData) -> dict:
    return {
        "n": g.dim,
        "A": encode_matrix(g.matrix),
        "L_prime": [encode_vector(col) for col in g.domain.basis],
    }


def decode_group(obj) -> GroupData:
    try:
        n = int(obj["n"])
        matrix = decode_matrix(obj["A"])
        gens = [decode_vector(c) for c in obj["L_prime"]]
    except (KeyError, TypeError) as exc:
        raise InputParseError(f"bad group object: {exc}") from exc
    return validate_group(n, matrix, gens)


def encode_word(w: GroupWord) -> dict:
    return {
        "head": encode_vector(w.head),
        "tail": [{"eps": e, "c": encode_vector(c)} for e, c in w.tail],
    }


def decode_word(obj) -> GroupWord:
    try:
        head = decode_vector(obj["head"])
        tail = []
        for entry in obj["tail"]:
            eps = int(entry["eps"])
            if eps not in (1, -1):
                raise InputParseError(f"eps must be +-1, got {eps}")
            tail.append((eps, decode_vector(entry["c"])))
    except (KeyError, TypeError) as exc:
        raise InputParseError(f"bad word object: {exc}") from exc
    return GroupWord(head, tuple(tail))


# -- tree keys and balls -------------------------------------------------------


def _vector_str(v) -> str:
    return "(" + ",".join(str(int(x)) for x in v) + ")"


def key_str(key: Key) -> str:
    """Vertex key as a readable coset word: '(1,0) t (0,3) t-' or 'e'."""
    if key == BASE_KEY:
        return "e"
    parts = [_vector_str(key[0])]
    for eps, c in key[1:-1]:
        parts.append("t" if eps == 1 else "t-")
        parts.append(_vector_str(c))
    parts.append("t" if key[-1] == 1 else "t-")
    return " ".join(parts)


def normal_form_str(w: GroupWord) -> str:
    parts = [_vector_str(w.head)]
    for eps, c in w.tail:
        parts.append("t" if eps == 1 else "t-")
        parts.append(_vector_str(c))
    return " ".join(parts)


def _parse_tokens(text: str):
    tokens = text.split()
    out = []
    for tok in tokens:
        if tok == "t":
            out.append(1)
        elif tok == "t-":
            out.append(-1)
        elif tok.startswith("(") and tok.endswith(")"):
            inner = tok[1:-1]
            out.append(tuple(int(x) for x in inner.split(",")) if inner else ())
        else:
            raise InputParseError(f"bad word token {tok!r}")
    return out

def parse_key(text: str) -> Key:
    if text == "e":
        return BASE_KEY
    toks = _parse_tokens(text)
    if len(toks) < 2 or not isinstance(toks[0], tuple) or not isinstance(toks[-1], int):
        raise InputParseError(f"bad vertex key {text!r}")
    pairs = []
    i = 1
    while i < len(toks) - 1:
        eps, vec = toks[i], toks[i + 1]
        if not isinstance(eps, int) or not isinstance(vec, tuple):
            raise InputParseError(f"bad vertex key {text!r}")
        pairs.append((eps, vec))
        i += 2
    return (toks[0],) + tuple(pairs) + (toks[-1],)


def encode_ball(ball: TreeBall) -> dict:
    edges = []
    for key in ball.vertices:
        if key == BASE_KEY:
            continue
        eps, digit = ball.path[key][-1]
        edges.append(
            {
                "from": key_str(ball.parent[key]),
                "to": key_str(key),
                "eps": eps,
                "digit": encode_vector(digit),
            }
        )
    return {
        "group": encode_group(ball.group),
        "radius": ball.radius,
        "vertex_count": ball.vertex_count,
        "vertices": [{"key": key_str(k), "depth": ball.depth[k]} for k in ball.vertices],
        "edges": edges,
        "stabilizers": [
            {"vertex": key_str(k), "lattice": encode_lattice(ball.stabilizers[k])}
            for k in ball.vertices
        ],
    }


def decode_ball_structure(obj) -> dict:
    """Re-parse an exported ball into comparable structure (keys, depths,
    edges, stabilizers); the group is revalidated from its own encoding."""
    try:
        group = decode_group(obj["group"])
        vertices = [(parse_key(v["key"]), int(v["depth"])) for v in obj["vertices"]]
        edges = [
            (parse_key(e["from"]), parse_key(e["to"]), int(e["eps"]), decode_vector(e["digit"]))
            for e in obj["edges"]
        ]
        stabilizers = {
            parse_key(s["vertex"]): decode_lattice(s["lattice"]) for s in obj["stabilizers"]
        }
    except (KeyError, TypeError) as exc:
        raise InputParseError(f"bad ball object: {exc}") from exc
    return {
        "group": group,
        "radius": int(obj["radius"]),
        "vertices": vertices,
        "edges": edges,
        "stabilizers": stabilizers,
    }


def encode_stabilization(report: StabilizationReport) -> dict:
    return {
        "element": encode_vector(report.element),
        "n": [encode_int(n) for n in report.multipliers],
        "K": [encode_lattice(k) for k in report.kernels],
    }


def decode_stabilization(obj) -> StabilizationReport:
    try:
        return StabilizationReport(
            element=decode_vector(obj["element"]),
            depth=len(obj["n"]),
            kernels=tuple(decode_lattice(k) for k in obj["K"]),
            multipliers=tuple(decode_int(n) for n in obj["n"]),
        )
    except (KeyError, TypeError) as exc:
        raise InputParseError(f"bad stabilization object: {exc}") from exc


# -- coarse spaces -------------------------------------------------------------


def encode_space(space: FiniteCoarseSpace) -> dict:
    if space._adj is None:
        raise InputParseError("only graph-backed spaces have a JSON encoding")
    edges = []
    for i, nbrs in enumerate(space._adj):
        for j, w in nbrs:
            if j > i:
                edges.append([i, j, encode_rational(Fraction(w, space._scale))])
    return {"points": space.points, "edges": edges}


def decode_space(obj) -> FiniteCoarseSpace:
    try:
        points = int(obj["points"])
        edges = [(int(i), int(j), decode_rational(w)) for i, j, w in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputParseError(f"bad space object: {exc}") from exc
    return FiniteCoarseSpace.from_graph(points, edges)


def encode_subset(subset) -> list[int]:
    return sorted(int(p) for p in subset)


def decode_subset(obj) -> frozenset:
    if not isinstance(obj, list):
        raise InputParseError("subset must be a sorted id array")
    return frozenset(int(p) for p in obj)


def encode_separation_analysis(analysis: SeparationAnalysis) -> dict:
    classes = analysis.classes
    return {
        "subset": encode_subset(analysis.subset),
        "r": encode_rational(analysis.r),
        "s": encode_rational(analysis.s),
        "r_deep": encode_rational(analysis.r_deep),
        "x_s_connected": analysis.x_s_connected,
        "deep_count": analysis.deep_count,
        "class_dimension": classes.dimension,
        "components": [
            {"points": encode_subset(comp), "deep": deep}
            for comp, deep in zip(analysis.components, analysis.deep_flags)
        ],
    }


def encode_profile(profile: list[int | None]) -> list:
    return [None if x is None else encode_int(x) for x in profile]


# -- cyclic orders --------------------------------------------------------------


def encode_order(order: CyclicOrder) -> dict:
    if tuple(order.ground) != tuple(range(len(order.ground))):
        raise InputParseError("only 0..m-1 ground sets have a JSON encoding")
    return {"ground": len(order.ground), "triples": sorted(list(t) for t in order.triples)}


def decode_order(obj) -> CyclicOrder:
    try:
        m = int(obj["ground"])
        triples = frozenset(tuple(int(x) for x in t) for t in obj["triples"])
    except (KeyError, TypeError) as exc:
        raise InputParseError(f"bad order object: {exc}") from exc
    return CyclicOrder(tuple(range(m)), triples)


def decode_permutations(obj) -> list[list[int]]:
    if not isinstance(obj, list) or not all(isinstance(p, list) for p in obj):
        raise InputParseError("permutations must be a list of image arrays")
    return [[int(v) for v in p] for p in obj]


def encode_solver_result(result: SolverResult) -> dict:
    return {
        "satisfiable": result.satisfiable,
        "witness": None if result.witness is None else encode_order(result.witness),
        "signs": None if result.signs is None else list(result.signs),
        "nodes_explored": result.nodes_explored,
    }


def encode_closure(result: ClosureResult, trace_targets=()) -> dict:
    out = {
        "consistent": result.consistent,
        "size": len(result.triples),
        "triples": sorted(list(t) for t in result.triples),
        "clash": None if result.clash is None else [list(result.clash[0]), list(result.clash[1])],
    }
    traces = {}
    targets = list(trace_targets)
    if result.clash is not None:
        targets.extend(result.clash)
    for target in targets:
        traces[str(tuple(target))] = [
            {
                "triple": list(step.triple),
                "rule": step.rule,
                "premises": [list(p) for p in step.premises],
            }
            for step in result.trace(tuple(target))
        ]
    out["traces"] = traces
    return out


def decode_derivation_steps(obj) -> list[DerivationStep]:
    return [
        DerivationStep(
            triple=tuple(int(x) for x in step["triple"]),
            rule=str(step["rule"]),
            premises=tuple(tuple(int(x) for x in p) for p in step["premises"]),
        )
        for step in obj
    ]
