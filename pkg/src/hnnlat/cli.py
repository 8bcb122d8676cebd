"""Command-line interface.

Exit codes: 0 success, 2 parse failure, 3 precondition violation,
4 pipeline stage or selftest failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import jsonio, selftest
from .classify import classify_matrix
from .coarse import separation_analysis
from .cyclic import CyclicConstraintSet, chain_constraints, check_axioms, closure
from .demo import RunConfig, render_text, run_demo
from .errors import HnnlatError, InputParseError, PreconditionError, StageFailure
from .solver import search_invariant_order
from .tree import act_on_ball, expand_ball, estimated_ball_size, stabilization_sequence
from .words import normalize, t_length

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_STAGE = 4


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputParseError(f"cannot read {path}: {exc}") from exc
    return jsonio.loads(text)


def _emit(args, payload: dict, filename: str):
    text = (
        jsonio.dumps_canonical(payload)
        if args.format == "json"
        else render_text(payload)
    )
    if getattr(args, "out", None):
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        suffix = ".json" if args.format == "json" else ".txt"
        (out_dir / (filename + suffix)).write_text(text)
    sys.stdout.write(text)


def _parse_element(text: str):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise InputParseError(f"bad element {text!r}; expected e.g. '1,0'") from exc


# -- subcommand handlers -----------------------------------------------------


def _cmd_classify(args):
    matrix = jsonio.decode_matrix(_read_json(args.matrix))
    _emit(args, jsonio.encode_classification(classify_matrix(matrix)), "classification")
    return EXIT_OK


def _cmd_group_validate(args):
    group = jsonio.decode_group(_read_json(args.group))
    payload = {
        "group": jsonio.encode_group(group),
        "index_domain": jsonio.encode_int(group.index_domain),
        "index_image": jsonio.encode_int(group.index_image),
        "image_lattice": jsonio.encode_lattice(group.image),
        "classification": jsonio.encode_classification(group.classification),
    }
    _emit(args, payload, "group_validation")
    return EXIT_OK


def _cmd_word(args):
    group = jsonio.decode_group(_read_json(args.group))
    word = jsonio.decode_word(_read_json(args.word))
    nf = normalize(group, word)
    payload = {
        "normal_form": jsonio.encode_word(nf),
        "normal_form_str": jsonio.normal_form_str(nf),
        "t_length": t_length(nf),
    }
    _emit(args, payload, "word")
    return EXIT_OK


def _cmd_tree_expand(args):
    group = jsonio.decode_group(_read_json(args.group))
    estimate = estimated_ball_size(group, args.radius)
    if args.radius > args.max_radius:
        raise PreconditionError(
            f"radius {args.radius} exceeds the cap {args.max_radius} "
            f"(estimated {estimate} vertices); raise --max-radius explicitly"
        )
    ball = expand_ball(group, args.radius)
    payload = jsonio.encode_ball(ball)
    payload["estimated_vertex_count"] = estimate
    _emit(args, payload, "tree_ball")
    return EXIT_OK


def _cmd_tree_act(args):
    group = jsonio.decode_group(_read_json(args.group))
    word = normalize(group, jsonio.decode_word(_read_json(args.word)))
    ball = expand_ball(group, args.radius)
    mapping = act_on_ball(ball, word)
    payload = {
        "word": jsonio.encode_word(word),
        "radius": args.radius,
        "map": [
            {"from": jsonio.key_str(k), "to": jsonio.key_str(v)}
            for k, v in mapping.items()
        ],
    }
    _emit(args, payload, "tree_action")
    return EXIT_OK


def _cmd_tree_stabilize(args):
    group = jsonio.decode_group(_read_json(args.group))
    element = _parse_element(args.element)
    report = stabilization_sequence(group, element, args.depth)
    _emit(args, jsonio.encode_stabilization(report), "stabilization")
    return EXIT_OK


def _cmd_coarse_analyze(args):
    space = jsonio.decode_space(_read_json(args.space))
    subset = jsonio.decode_subset(_read_json(args.subset))
    r_deep = (
        jsonio.decode_rational(args.r_deep)
        if args.r_deep is not None
        else _default_r_deep(space)
    )
    analysis = separation_analysis(
        space, subset, jsonio.decode_rational(args.r), jsonio.decode_rational(args.s), r_deep
    )
    _emit(args, jsonio.encode_separation_analysis(analysis), "coarse_analysis")
    return EXIT_OK


def _default_r_deep(space):
    if space.points > 4000:
        raise PreconditionError(
            "space too large to compute the default deep threshold; pass --r-deep"
        )
    diameter = space.diameter()
    if diameter == float("inf"):
        raise PreconditionError("disconnected space; pass --r-deep explicitly")
    return int(diameter) // 4


def _cmd_order_check(args):
    obj = _read_json(args.order)
    order = jsonio.decode_order(obj)
    violation = check_axioms(order.ground, order.triples)
    payload = {
        "ok": violation is None,
        "violation": None
        if violation is None
        else {"axiom": violation.axiom, "witness": [list(t) for t in violation.witness]},
    }
    _emit(args, payload, "order_check")
    return EXIT_OK


def _cmd_order_solve(args):
    perms = jsonio.decode_permutations(_read_json(args.perms))
    if args.ground is not None:
        m = args.ground
    elif perms:
        m = len(perms[0])
    else:
        raise PreconditionError("--ground is required when no permutations are given")
    result = search_invariant_order(m, perms, args.mode)
    _emit(args, jsonio.encode_solver_result(result), "order_solution")
    return EXIT_OK


def _cmd_order_replay_chain(args):
    cs = chain_constraints(args.length)
    z = args.length + 1
    if args.contradict:
        cs = CyclicConstraintSet.build(
            cs.ground, set(cs.triples) | {(z, max(2, args.length // 2), 1)}
        )
    result = closure(cs)
    targets = [] if not result.consistent else [(1, i, z) for i in range(2, args.length + 1)]
    payload = jsonio.encode_closure(result, trace_targets=targets)
    payload["chain_length"] = args.length
    payload["derived_targets"] = [list(t) for t in targets]
    _emit(args, payload, "chain_replay")
    return EXIT_OK


def _cmd_demo(args):
    config_obj = _read_json(args.config)
    if args.radius is not None:
        config_obj = dict(config_obj, radius=args.radius)
    config = RunConfig.from_json(config_obj, base_dir=Path(args.config).resolve().parent)
    report = run_demo(config)
    _emit(args, report, "demo_report")
    return EXIT_OK


def _cmd_selftest(args):
    results = selftest.run_all()
    failed = 0
    for suite, name, ok, detail in results:
        line = f"{'PASS' if ok else 'FAIL'}  {suite}.{name}"
        if detail and not ok:
            line += f"  ({detail})"
        print(line)
        failed += 0 if ok else 1
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_STAGE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hnnlat",
        description="Exact toolkit for HNN extensions of integer lattices",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--out", help="directory to also write the output file into")

    p = sub.add_parser("classify", help="classify a rational matrix")
    p.add_argument("matrix", help="matrix JSON file (row-major 'num/den' strings)")
    add_common(p)
    p.set_defaults(handler=_cmd_classify)

    group = sub.add_parser("group", help="group presentation commands")
    gsub = group.add_subparsers(dest="subcommand", required=True)
    p = gsub.add_parser("validate", help="validate presentation data")
    p.add_argument("group", help="group JSON file")
    add_common(p)
    p.set_defaults(handler=_cmd_group_validate)

    p = sub.add_parser("word", help="normalize a word and print its t-length")
    p.add_argument("--group", required=True)
    p.add_argument("--word", required=True)
    add_common(p)
    p.set_defaults(handler=_cmd_word)

    tree = sub.add_parser("tree", help="Bass-Serre tree commands")
    tsub = tree.add_subparsers(dest="subcommand", required=True)
    p = tsub.add_parser("expand", help="BFS-expand a ball")
    p.add_argument("--group", required=True)
    p.add_argument("--radius", type=int, default=2)
    p.add_argument("--max-radius", type=int, default=6)
    add_common(p)
    p.set_defaults(handler=_cmd_tree_expand)
    p = tsub.add_parser("act", help="act on a ball by a word")
    p.add_argument("--group", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--radius", type=int, default=2)
    add_common(p)
    p.set_defaults(handler=_cmd_tree_act)
    p = tsub.add_parser("stabilize", help="ball stabilization sequence of an element")
    p.add_argument("--group", required=True)
    p.add_argument("--element", required=True, help="comma-separated integers, e.g. '1,0'")
    p.add_argument("--depth", type=int, default=4)
    add_common(p)
    p.set_defaults(handler=_cmd_tree_stabilize)

    coarse = sub.add_parser("coarse", help="finite coarse-geometry commands")
    csub = coarse.add_subparsers(dest="subcommand", required=True)
    p = csub.add_parser("analyze", help="separation analysis of a subset")
    p.add_argument("--space", required=True)
    p.add_argument("--subset", required=True)
    p.add_argument("--r", default="1")
    p.add_argument("--s", default="1")
    p.add_argument("--r-deep", dest="r_deep", default=None)
    add_common(p)
    p.set_defaults(handler=_cmd_coarse_analyze)

    order = sub.add_parser("order", help="cyclic-order commands")
    osub = order.add_subparsers(dest="subcommand", required=True)
    p = osub.add_parser("check", help="check the four cyclic-order axioms")
    p.add_argument("order", help="order JSON file")
    add_common(p)
    p.set_defaults(handler=_cmd_order_check)
    p = osub.add_parser("solve", help="search for an invariant total order")
    p.add_argument("--perms", required=True, help="JSON list of image arrays")
    p.add_argument("--ground", type=int, default=None)
    p.add_argument("--mode", choices=("preserve-only", "respect"), default="preserve-only")
    add_common(p)
    p.set_defaults(handler=_cmd_order_solve)
    p = osub.add_parser("replay-chain", help="close the transitivity chain fixture")
    p.add_argument("--length", type=int, default=10)
    p.add_argument("--contradict", action="store_true")
    add_common(p)
    p.set_defaults(handler=_cmd_order_replay_chain)

    p = sub.add_parser("demo", help="run the full pipeline from a config")
    p.add_argument("--config", required=True)
    p.add_argument("--radius", type=int, default=None)
    add_common(p)
    p.set_defaults(handler=_cmd_demo)

    p = sub.add_parser("selftest", help="run every module's invariant suite")
    p.set_defaults(handler=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except InputParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except StageFailure as exc:
        print(f"stage failure: {exc}", file=sys.stderr)
        return EXIT_STAGE
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except HnnlatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
