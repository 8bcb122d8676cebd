"""End-to-end pipeline: classify, validate, expand, stabilize, permute
spheres, solve for invariant orders, and run the coarse separation model.

Everything is deterministic: no randomness anywhere, canonical iteration
orders throughout, so a config produces byte-identical reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import jsonio
from .coarse import (
    build_grid,
    build_tree_product,
    coarse_complement_profile,
    separation_analysis,
)
from .errors import InputParseError, PreconditionError, StageFailure
from .solver import search_invariant_order
from .cyclic import sphere_permutation
from .tree import (
    axis_keys,
    estimated_ball_size,
    expand_ball,
    find_generic_element,
    stabilization_sequence,
)
from .words import abelian_form

MAX_RADIUS = 6  # degree-10 trees hit ~1e5 vertices here; beyond is thrash


@dataclass(frozen=True)
class RunConfig:
    group: dict
    radius: int = 4
    stabilization_depth: int = 4
    element: tuple[int, ...] | None = None
    solver_ground_cap: int = 12
    solver_modes: tuple[str, ...] = ("preserve-only", "respect")
    coarse_point_cap: int = 5000
    coarse_tree_radius: int = 2
    coarse_box_length: int = 5
    coarse_r: Fraction = Fraction(1)
    coarse_s: Fraction = Fraction(1)
    coarse_r_deep: Fraction | None = None
    coarse_profile_r_max: int = 3

    @classmethod
    def from_json(cls, obj, base_dir: Path | None = None) -> "RunConfig":
        if not isinstance(obj, dict):
            raise InputParseError("config must be a JSON object")
        group = obj.get("group")
        if group is None and "group_file" in obj:
            path = Path(obj["group_file"])
            if base_dir is not None and not path.is_absolute():
                path = base_dir / path
            group = jsonio.loads(path.read_text())
        if group is None:
            raise InputParseError("config needs 'group' or 'group_file'")
        coarse = obj.get("coarse", {})
        cfg = cls(
            group=group,
            radius=int(obj.get("radius", 4)),
            stabilization_depth=int(obj.get("stabilization_depth", obj.get("radius", 4))),
            element=None
            if obj.get("element") is None
            else jsonio.decode_vector(obj["element"]),
            solver_ground_cap=int(obj.get("solver_ground_cap", 12)),
            solver_modes=tuple(obj.get("solver_modes", ("preserve-only", "respect"))),
            coarse_point_cap=int(coarse.get("point_cap", 5000)),
            coarse_tree_radius=int(coarse.get("tree_radius", 2)),
            coarse_box_length=int(coarse.get("box_length", 5)),
            coarse_r=jsonio.decode_rational(coarse.get("r", 1)),
            coarse_s=jsonio.decode_rational(coarse.get("s", 1)),
            coarse_r_deep=None
            if coarse.get("r_deep") is None
            else jsonio.decode_rational(coarse["r_deep"]),
            coarse_profile_r_max=int(coarse.get("profile_r_max", 3)),
        )
        if cfg.radius < 0 or cfg.stabilization_depth < 1:
            raise PreconditionError("radius must be >= 0 and depth >= 1")
        if cfg.radius > MAX_RADIUS:
            raise PreconditionError(f"radius capped at {MAX_RADIUS}")
        if cfg.solver_ground_cap < 3 or cfg.coarse_box_length < 1 or cfg.coarse_point_cap < 1:
            raise PreconditionError("caps must be positive")
        return cfg


def _stage(name: str, fn):
    try:
        return fn()
    except StageFailure:
        raise
    except Exception as exc:
        raise StageFailure(name, str(exc)) from exc


def run_demo(config: RunConfig) -> dict:
    """Execute the pipeline and return the (JSON-ready) report dict."""
    group = _stage("validate", lambda: jsonio.decode_group(config.group))

    classification = group.classification

    ball = _stage("expand", lambda: expand_ball(group, config.radius))
    ball_sizes = [len(ball.sphere(i)) for i in range(config.radius + 1)]

    def pick_element():
        if config.element is not None:
            report = stabilization_sequence(group, config.element, config.stabilization_depth)
            return config.element, report, report.multipliers[-1] == report.multipliers[0]
        found = find_generic_element(group, config.stabilization_depth)
        return found.element, found.report, found.no_growth

    element, stab_report, no_growth = _stage("stabilize", pick_element)

    def sphere_stage():
        acting = abelian_form(group, element)
        out = []
        for depth in range(1, config.radius + 1):
            _, mapping, ctype = sphere_permutation(ball, acting, depth)
            out.append({"depth": depth, "cycle_type": list(ctype)})
        return out

    sphere_cycles = _stage("spheres", sphere_stage)

    def solver_stage():
        acting = abelian_form(group, element)
        out = []
        for depth in range(1, config.radius + 1):
            sphere, mapping, _ = sphere_permutation(ball, acting, depth)
            m = len(sphere)
            for mode in config.solver_modes:
                entry = {"depth": depth, "mode": mode, "sphere_size": m}
                if m < 3 or m > config.solver_ground_cap:
                    entry["verdict"] = "skipped"
                    entry["reason"] = (
                        "sphere smaller than 3" if m < 3 else "sphere exceeds solver cap"
                    )
                else:
                    result = search_invariant_order(
                        m, [[mapping[i] for i in range(m)]], mode
                    )
                    entry["verdict"] = "satisfiable" if result.satisfiable else "unsatisfiable"
                    entry["nodes_explored"] = result.nodes_explored
                    if result.signs is not None:
                        entry["signs"] = list(result.signs)
                out.append(entry)
        return out

    solver_verdicts = _stage("solve", solver_stage)

    def coarse_stage():
        estimate = estimated_ball_size(group, config.coarse_tree_radius) * config.coarse_box_length
        if estimate > config.coarse_point_cap:
            raise PreconditionError(
                f"coarse model would have ~{estimate} points, over the "
                f"{config.coarse_point_cap}-point cap"
            )
        small_ball = expand_ball(group, config.coarse_tree_radius)
        box = build_grid((config.coarse_box_length,))
        product = build_tree_product(small_ball, box)
        axis = axis_keys(small_ball)
        subset = frozenset(
            product.pair_index(key, p)
            for key in axis
            for p in range(config.coarse_box_length)
        )
        r_deep = config.coarse_r_deep
        if r_deep is None:
            r_deep = Fraction(int(product.diameter()) // 4)
        analysis = separation_analysis(
            product, subset, config.coarse_r, config.coarse_s, r_deep
        )
        profiles = []
        for comp, deep in zip(analysis.components, analysis.deep_flags):
            if deep:
                profiles.append(
                    jsonio.encode_profile(
                        coarse_complement_profile(
                            product, comp, subset, config.coarse_profile_r_max
                        )
                    )
                )
        return {
            "model": {
                "tree_radius": config.coarse_tree_radius,
                "tree_vertices": small_ball.vertex_count,
                "box_length": config.coarse_box_length,
                "points": product.points,
                "separating_set": "stable-letter axis times box",
            },
            "analysis": jsonio.encode_separation_analysis(analysis),
            "deep_component_profiles": profiles,
        }

    coarse_summary = _stage("coarse", coarse_stage)

    growth = {
        "observed": not no_growth,
        "note": "multiplier sequence grows"
        if not no_growth
        else "no growth; obstruction machinery vacuous",
    }
    if classification.finite_order:
        growth["note"] = "no growth; obstruction machinery vacuous (finite order)"

    return {
        "classification": jsonio.encode_classification(classification),
        "group": {
            "n": group.dim,
            "index_domain": jsonio.encode_int(group.index_domain),
            "index_image": jsonio.encode_int(group.index_image),
            "tree_degree": jsonio.encode_int(ball.degree),
        },
        "tree": {
            "radius": config.radius,
            "sphere_sizes": ball_sizes,
            "vertex_count": ball.vertex_count,
            "estimated_vertex_count": estimated_ball_size(group, config.radius),
        },
        "stabilization": jsonio.encode_stabilization(stab_report),
        "sphere_cycle_types": sphere_cycles,
        "solver_verdicts": solver_verdicts,
        "coarse_separation": coarse_summary,
        "growth": growth,
    }


def render_text(report: dict, indent: int = 0) -> str:
    """Plain-text view of the same report data (never more than the JSON)."""
    lines: list[str] = []

    def walk(value, prefix: str, depth: int):
        pad = "  " * depth
        if isinstance(value, dict):
            lines.append(f"{pad}{prefix}:" if prefix else f"{pad}")
            for k in sorted(value):
                walk(value[k], k, depth + 1)
        elif isinstance(value, list):
            lines.append(f"{pad}{prefix}:")
            for i, item in enumerate(value):
                walk(item, f"[{i}]", depth + 1)
        else:
            lines.append(f"{pad}{prefix}: {value}")

    walk(report, "report", indent)
    return "\n".join(lines) + "\n"
