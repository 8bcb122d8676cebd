"""Acceptance criteria, one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines; every stated tolerance and runtime bound is asserted here.
"""

import random
import time
from fractions import Fraction
from itertools import permutations, product

import pytest

from hnnlat.classify import classify_matrix
from hnnlat.cli import main
from hnnlat.coarse import (
    build_grid,
    build_tree_product,
    coarse_complement_profile,
    neighborhood,
    one_sided_containment_check,
    s_components,
    separation_analysis,
)
from hnnlat.cyclic import (
    CyclicConstraintSet,
    chain_constraints,
    check_axioms,
    closure,
    cycle_type,
    respect_type,
    standard_order,
    verify_derivation,
)
from hnnlat.matrices import RationalMatrix
from hnnlat.oracles import normalize_all_pinch_orders
from hnnlat.selftest import run_all
from hnnlat.solver import all_cyclic_orders, search_invariant_order
from hnnlat.tree import expand_ball, key_word, stabilization_sequence, vertex_key
from hnnlat.words import (
    GroupWord,
    abelian_form,
    concat,
    identity_form,
    invert,
    multiply,
    normalize,
)


def _report(n, detail):
    print(f"\nACCEPTANCE {n}: PASS - {detail}")


def _act_one(g, w, key):
    return vertex_key(normalize(g, concat(w, key_word(key, dim=g.dim))))


def test_criterion_1_flagship_classification(flagship_matrix):
    start = time.monotonic()
    c = classify_matrix(flagship_matrix)
    elapsed = time.monotonic() - start
    assert c.orthogonal_conjugate is True and c.order is None
    assert elapsed < 1.0, f"flagship classification took {elapsed:.3f}s"

    quarter = classify_matrix(RationalMatrix([[0, -1], [1, 0]]))
    assert quarter.orthogonal_conjugate is True and quarter.order == 4

    for p in range(1, 11):
        for q in range(1, 11):
            verdict = classify_matrix(RationalMatrix([[Fraction(q, p)]]))
            assert verdict.orthogonal_conjugate == (abs(p) == abs(q)), (p, q)
    _report(1, f"flagship in {elapsed * 1000:.0f}ms; 100 scalar ratios match |p| == |q|")


def test_criterion_2_word_problem(bs12, flagship):
    start = time.monotonic()
    rng = random.Random(2024)
    groups = ((bs12, 1, 5000), (flagship, 2, 5000))
    checked = 0
    for g, dim, count in groups:
        pool = []
        for _ in range(count):
            w = GroupWord(
                tuple(rng.randint(-50, 50) for _ in range(dim)),
                tuple(
                    (rng.choice((1, -1)), tuple(rng.randint(-50, 50) for _ in range(dim)))
                    for _ in range(rng.randint(0, 8))
                ),
            )
            nf = normalize(g, w)
            assert normalize(g, nf) == nf
            assert multiply(g, nf, invert(g, nf)) == identity_form(g)
            pool.append(nf)
            checked += 1
        for _ in range(count // 2):
            u, v = rng.choice(pool), rng.choice(pool)
            assert normalize(g, concat(u, v)) == multiply(g, u, v)

    exhaustive = 0
    for k in range(1, 5):
        for head in range(-3, 4):
            for signs in product((1, -1), repeat=k):
                for digits in product(range(-3, 4), repeat=k):
                    w = GroupWord((head,), tuple((s, (d,)) for s, d in zip(signs, digits)))
                    outcomes = normalize_all_pinch_orders(bs12, w)
                    assert len(outcomes) == 1
                    nf = normalize(bs12, w)
                    assert next(iter(outcomes)) == (nf.head,) + nf.tail
                    exhaustive += 1
    elapsed = time.monotonic() - start
    assert elapsed < 60.0, f"word-problem criterion took {elapsed:.1f}s"
    _report(2, f"{checked} random words, {exhaustive} exhaustive oracle words in {elapsed:.1f}s")


def test_criterion_3_tree_structure(bs12, flagship):
    for r in range(5):
        ball = expand_ball(flagship, r)
        assert ball.vertex_count == 1 + 10 * (9**r - 1) // 8, f"radius {r}"
    ball = expand_ball(bs12, 5)
    for key in ball.vertices:
        if ball.depth[key] < 5:
            assert len({n for n, _, _ in ball.adjacency[key]}) == 3
    _report(3, "flagship counts match 1 + 10(9^r - 1)/8 for r <= 4; BS(1,2) ball 3-regular")


def test_criterion_4_stabilization(bs12, flagship, finite_order):
    start = time.monotonic()

    report17 = stabilization_sequence(flagship, (1, 0), 4)
    assert report17.kernels[0].basis == ((5, 0), (0, 5)), "K_1 differs from 5 Z^2"
    assert report17.multipliers[0] == 5
    for i in range(3):
        assert report17.multipliers[i + 1] % report17.multipliers[i] == 0
        assert report17.multipliers[i + 1] > report17.multipliers[i]
    assert report17.multipliers[3] > report17.multipliers[0]

    report_bs = stabilization_sequence(bs12, (1,), 6)
    assert report_bs.multipliers == (2, 4, 8, 16, 32, 64)

    report_fin = stabilization_sequence(finite_order, (1, 0), 5)
    assert len(set(report_fin.multipliers)) == 1, "finite order chain must be constant"

    def primes(n):
        out, d = set(), 2
        while d * d <= n:
            while n % d == 0:
                out.add(d)
                n //= d
            d += 1
        if n > 1:
            out.add(n)
        return out

    for g, element, report, max_depth in (
        (flagship, (1, 0), report17, 4),
        (bs12, (1,), report_bs, 6),
    ):
        for i in range(1, max_depth + 1):
            ball = expand_ball(g, i)
            n_i = report.multipliers[i - 1]
            fixing = abelian_form(g, tuple(n_i * x for x in element))
            assert all(_act_one(g, fixing, k) == k for k in ball.vertices)
            for p in primes(n_i):
                partial = abelian_form(g, tuple((n_i // p) * x for x in element))
                assert any(_act_one(g, partial, k) != k for k in ball.vertices)

    elapsed = time.monotonic() - start
    assert elapsed < 120.0, f"stabilization criterion took {elapsed:.1f}s"
    _report(
        4,
        f"K_1 = 5Z^2, n = {report17.multipliers}; BS n_i = 2^i; "
        f"ball fixing cross-validated in {elapsed:.1f}s",
    )


def test_criterion_5_cyclic_engine():
    start = time.monotonic()
    for m in range(3, 13):
        order = standard_order(m)
        assert check_axioms(order.ground, order.triples) is None
        rotation = {i: (i + 1) % m for i in range(m)}
        reflection = {i: (-i) % m for i in range(m)}
        assert respect_type(order, rotation) == "preserves"
        assert respect_type(order, reflection) == "reverses"

    rng = random.Random(555)
    disagreements = 0
    for _ in range(200):
        m = rng.randint(3, 6)
        gens = [list(rng.sample(range(m), m)) for _ in range(rng.randint(1, 2))]
        mode = rng.choice(("preserve-only", "respect"))
        result = search_invariant_order(m, gens, mode)
        brute = False
        for order in all_cyclic_orders(m):
            types = [respect_type(order, {i: p[i] for i in range(m)}) for p in gens]
            ok = (
                all(t == "preserves" for t in types)
                if mode == "preserve-only"
                else all(t != "neither" for t in types)
            )
            if ok:
                brute = True
                break
        if result.satisfiable != brute:
            disagreements += 1
    assert disagreements == 0

    law_checked = 0
    for m in range(3, 8):
        for perm in permutations(range(m)):
            result = search_invariant_order(m, [list(perm)], "preserve-only")
            lengths = set(cycle_type({i: v for i, v in enumerate(perm)}))
            assert result.satisfiable == (len(lengths) == 1), (m, perm)
            law_checked += 1
    elapsed = time.monotonic() - start
    _report(
        5,
        f"200 solver-vs-enumeration sets, {law_checked} permutations for the "
        f"equal-cycle-length law in {elapsed:.1f}s",
    )


def test_criterion_6_chain_replay():
    start = time.monotonic()
    for m in (10, 50):
        cs = chain_constraints(m)
        result = closure(cs)
        assert result.consistent
        z = m + 1
        for i in range(2, m + 1):
            assert (1, i, z) in result.triples
            assert verify_derivation(result.trace((1, i, z)), cs.triples)
        bad = CyclicConstraintSet.build(cs.ground, set(cs.triples) | {(z, m // 2, 1)})
        broken = closure(bad)
        assert not broken.consistent and broken.clash is not None
        a, b, c = broken.clash[0]
        assert broken.clash[1] == (c, b, a), "clash must be an asymmetry pair"
        for t in broken.clash:
            assert verify_derivation(broken.trace(t), bad.triples)
    elapsed = time.monotonic() - start
    assert elapsed < 5.0, f"chain replay took {elapsed:.2f}s"
    _report(6, f"chains m = 10, 50 derived and refuted with verified traces in {elapsed:.2f}s")


def test_criterion_7_coarse_separations(bs12):
    start = time.monotonic()
    cube = build_grid((21, 21, 21))
    plane = frozenset(cube.index((x, y, 10)) for x in range(21) for y in range(21))
    fiber = frozenset(cube.index((10, 10, z)) for z in range(21))

    plane_analysis = separation_analysis(cube, plane, 1, 1, 5)
    assert plane_analysis.deep_count == 2 and plane_analysis.classes.dimension == 1
    fiber_analysis = separation_analysis(cube, fiber, 1, 1, 5)
    assert fiber_analysis.deep_count == 1 and fiber_analysis.classes.dimension == 0

    # uniformity on grid and tree-product fixtures
    fixtures = []
    for comp in plane_analysis.components:
        fixtures.append((cube, comp, plane))
    ball = expand_ball(bs12, 3)
    box = build_grid((5,))
    prod = build_tree_product(ball, box)
    from hnnlat.tree import axis_keys

    axis = frozenset(prod.pair_index(k, p) for k in axis_keys(ball) for p in range(5))
    for comp in s_components(prod, prod.all_points() - neighborhood(prod, axis, 1), 1):
        fixtures.append((prod, comp, axis))
    for space, comp, target in fixtures:
        profile = coarse_complement_profile(space, comp, target, 4)
        assert all(
            rho is not None and rho <= r + 2 for r, rho in enumerate(profile, start=1)
        ), profile

    # one-sided containment on 500 random precondition-satisfying instances
    from hnnlat.coarse import FiniteCoarseSpace, boundary_r

    rng = random.Random(777)
    trials = 0
    while trials < 500:
        n = rng.randint(10, 30)
        edges = {(rng.randrange(n), rng.randrange(n)) for _ in range(2 * n)}
        space = FiniteCoarseSpace.from_graph(n, [(i, j, 1) for i, j in edges if i != j])
        a = frozenset(rng.sample(range(n), rng.randint(1, 3)))
        comps = s_components(space, space.all_points() - neighborhood(space, a, 1), 1)
        if not comps:
            continue
        chosen = frozenset().union(*rng.sample(comps, rng.randint(1, len(comps))))
        dist_a = space.dist_from(a)
        edge_set = boundary_r(space, chosen, 1)
        if any(dist_a[p] == float("inf") for p in edge_set):
            continue
        s_prime = max((int(dist_a[p]) + 1 for p in edge_set), default=0)
        p_bound = s_prime + 1
        far = [x for x in range(n) if dist_a[x] >= p_bound]
        if not far:
            continue
        m_set = {rng.choice(far)}
        for _ in range(rng.randint(0, 5)):
            frontier = [
                y
                for x in m_set
                for y in range(n)
                if y not in m_set and dist_a[y] >= p_bound and space.distance(x, y) <= 1
            ]
            if not frontier:
                break
            m_set.add(rng.choice(frontier))
        verdict = one_sided_containment_check(space, frozenset(m_set), a, chosen, 1, p_bound)
        assert not verdict.precondition_failures
        assert verdict.side in ("inside", "outside"), verdict
        trials += 1

    elapsed = time.monotonic() - start
    assert elapsed < 120.0, f"coarse criterion took {elapsed:.1f}s"
    _report(
        7,
        f"plane: 2 deep / dim 1, fiber: 1 deep / dim 0, profiles <= r + 2, "
        f"500 one-sided instances in {elapsed:.1f}s",
    )


def test_criterion_8_determinism_and_selftest(configs_dir, tmp_path, capsys):
    start = time.monotonic()
    outputs = []
    for run in (1, 2):
        code = main(["demo", "--config", str(configs_dir / "rot35.json")])
        captured = capsys.readouterr().out
        assert code == 0
        outputs.append(captured)
    assert outputs[0] == outputs[1], "demo reports are not byte-identical"

    results = run_all()
    failures = [(s, n, d) for s, n, ok, d in results if not ok]
    assert not failures, failures
    elapsed = time.monotonic() - start
    assert elapsed < 600.0, f"selftest took {elapsed:.1f}s"
    _report(
        8,
        f"byte-identical demo reports; {len(results)} selftest checks green in {elapsed:.1f}s",
    )
