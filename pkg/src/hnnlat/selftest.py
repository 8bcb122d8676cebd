"""Invariant suites for every module, runnable via `hnnlat selftest`.

Each check raises AssertionError on failure; the runner reports one line
per check.  All randomness is seeded, so runs are reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, permutations, product

from . import jsonio
from . import polynomials as pp
from .classify import classify_matrix
from .coarse import (
    FiniteCoarseSpace,
    build_grid,
    build_tree_product,
    coarse_complement_profile,
    neighborhood,
    one_sided_containment_check,
    s_components,
    separation_analysis,
)
from .cyclic import (
    CyclicConstraintSet,
    chain_constraints,
    check_axioms,
    closure,
    respect_type,
    sphere_permutation,
    standard_order,
    verify_derivation,
)
from .lattices import (
    hnf,
    lattice_index,
    lattice_intersect,
    lattice_member,
    coset_residue,
)
from .matrices import RationalMatrix
from .oracles import (
    box_vectors,
    count_roots_bisection,
    member_by_cramer,
    normalize_all_pinch_orders,
)
from .solver import all_cyclic_orders, search_invariant_order
from .tree import (
    act_on_ball,
    expand_ball,
    key_word,
    stabilization_sequence,
    vertex_key,
)
from .words import (
    GroupWord,
    abelian_form,
    concat,
    identity_form,
    invert,
    multiply,
    normalize,
    stable_letter,
    validate_group,
)


def _flagship_group():
    a = RationalMatrix([[Fraction(3, 5), Fraction(-4, 5)], [Fraction(4, 5), Fraction(3, 5)]])
    return validate_group(2, a, [(2, -1), (1, 2)])


def _bs_group(p=1, q=2):
    return validate_group(1, RationalMatrix([[Fraction(q, p)]]), [(p,)])


def _finite_order_group():
    return validate_group(2, RationalMatrix([[0, -1], [1, 0]]), [(2, 0), (0, 2)])


def _random_word(rng, g, max_t=4, bound=3) -> GroupWord:
    vec = lambda: tuple(rng.randint(-bound, bound) for _ in range(g.dim))
    k = rng.randint(0, max_t)
    return GroupWord(vec(), tuple((rng.choice((1, -1)), vec()) for _ in range(k)))


def _random_unimodular(rng, n, steps=6) -> list[list[int]]:
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        c = rng.randint(-2, 2)
        for k in range(n):
            m[i][k] += c * m[j][k]
    return m


# -- exact linear algebra -----------------------------------------------------


def check_hnf_idempotent_and_basis_free():
    rng = random.Random(101)
    for _ in range(60):
        n = rng.randint(1, 3)
        gens = [tuple(rng.randint(-5, 5) for _ in range(n)) for _ in range(rng.randint(1, 4))]
        lat = hnf(gens, n)
        assert hnf(lat.basis, n) == lat, "hnf not idempotent"
        u = _random_unimodular(rng, len(gens))
        mixed = [
            tuple(sum(u[r][c] * gens[c][i] for c in range(len(gens))) for i in range(n))
            for r in range(len(gens))
        ]
        assert hnf(mixed, n) == lat, "hnf depends on the generating set"


def check_index_det_identity():
    rng = random.Random(102)
    for _ in range(40):
        n = rng.randint(1, 3)
        sup = None
        while sup is None or not sup.is_full_rank:
            sup = hnf([tuple(rng.randint(-4, 4) for _ in range(n)) for _ in range(n + 1)], n)
        mult = _random_unimodular(rng, n)
        for row in mult:
            row[rng.randrange(n)] *= rng.choice((1, 2, 3))
        det_m = RationalMatrix(mult).det()
        if det_m == 0:
            continue
        sub_gens = [
            tuple(sum(mult[j][i] * sup.basis[j][k] for j in range(n)) for k in range(n))
            for i in range(n)
        ]
        sub = hnf(sub_gens, n)
        idx = lattice_index(sub, sup)
        assert idx * sup.det() == sub.det(), "index-determinant identity fails"


def check_intersect_bruteforce_box():
    rng = random.Random(103)
    for _ in range(25):
        n = rng.randint(1, 3)
        lats = []
        for _ in range(2):
            lat = None
            while lat is None or not lat.is_full_rank:
                lat = hnf([tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(n + 1)], n)
            lats.append(lat)
        a, b = lats
        meet = lattice_intersect(a, b)
        for v in box_vectors(n, 4):
            both = lattice_member(v, a) and lattice_member(v, b)
            assert lattice_member(v, meet) == both, f"intersection wrong at {v}"


def check_membership_cramer_agreement():
    rng = random.Random(104)
    for _ in range(30):
        n = rng.randint(1, 3)
        lat = None
        while lat is None or not lat.is_full_rank:
            lat = hnf([tuple(rng.randint(-4, 4) for _ in range(n)) for _ in range(n + 1)], n)
        for _ in range(20):
            v = tuple(rng.randint(-9, 9) for _ in range(n))
            assert lattice_member(v, lat) == member_by_cramer(v, lat.basis)


def check_residue_partition_counts():
    rng = random.Random(105)
    for _ in range(20):
        n = rng.randint(1, 2)
        lat = None
        while lat is None or not lat.is_full_rank or lat.det() > 30:
            lat = hnf([tuple(rng.randint(-4, 4) for _ in range(n)) for _ in range(n + 1)], n)
        side = max(lat.pivots)
        seen = {coset_residue(v, lat) for v in box_vectors(n, side)}
        assert len(seen) == lat.det(), "residue count differs from the index"
        for v in box_vectors(n, 2):
            r = coset_residue(v, lat)
            assert lattice_member(tuple(x - y for x, y in zip(v, r)), lat)


def check_sturm_vs_bisection():
    rng = random.Random(106)
    for _ in range(150):
        deg = rng.randint(1, 6)
        p = pp.poly(
            [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(deg)]
            + [Fraction(rng.randint(1, 5))]
        )
        lo = Fraction(rng.randint(-8, -1), rng.randint(1, 3))
        hi = Fraction(rng.randint(0, 8), rng.randint(1, 3))
        assert pp.sturm_count(p, lo, hi) == count_roots_bisection(p, lo, hi)


def check_classification_invariances():
    rng = random.Random(107)
    samples = [
        RationalMatrix([[Fraction(3, 5), Fraction(-4, 5)], [Fraction(4, 5), Fraction(3, 5)]]),
        RationalMatrix([[0, -1], [1, 0]]),
        RationalMatrix([[2]]),
        RationalMatrix([[1, 1], [0, 1]]),
        RationalMatrix([[0, -1, 0], [1, 0, 0], [0, 0, 1]]),
        RationalMatrix([[Fraction(1, 2), 0], [0, 2]]),
    ]
    for a in samples:
        base = classify_matrix(a)
        inv = classify_matrix(a.inverse())
        assert base.orthogonal_conjugate == inv.orthogonal_conjugate
        assert base.order == inv.order
        for _ in range(3):
            u = RationalMatrix(_random_unimodular(rng, a.n))
            conj = classify_matrix(u.matmul(a).matmul(u.inverse()))
            assert conj.orthogonal_conjugate == base.orthogonal_conjugate
            assert conj.order == base.order


def check_finite_order_powers():
    for a in (
        RationalMatrix([[0, -1], [1, 0]]),
        RationalMatrix.identity(2),
        RationalMatrix([[-1]]),
        RationalMatrix([[0, -1], [1, -1]]),  # order 3
    ):
        c = classify_matrix(a)
        assert c.finite_order, f"{a} should have finite order"
        power = RationalMatrix.identity(a.n)
        for _ in range(c.order):
            power = power.matmul(a)
        assert power == RationalMatrix.identity(a.n), "A^order differs from identity"
        for d in range(1, c.order):
            if c.order % d:
                continue
            power = RationalMatrix.identity(a.n)
            for _ in range(d):
                power = power.matmul(a)
            assert power != RationalMatrix.identity(a.n), "order is not minimal"


# -- word problem -------------------------------------------------------------


def check_normalize_idempotent():
    rng = random.Random(201)
    for g in (_bs_group(), _flagship_group()):
        for _ in range(400):
            w = _random_word(rng, g, max_t=8, bound=100)
            nf = normalize(g, w)
            assert normalize(g, nf) == nf, "normalize is not idempotent"


def check_inverse_and_homomorphism():
    rng = random.Random(202)
    for g in (_bs_group(), _flagship_group()):
        for _ in range(500):
            u = normalize(g, _random_word(rng, g))
            v = normalize(g, _random_word(rng, g))
            assert multiply(g, u, invert(g, u)) == identity_form(g)
            assert normalize(g, concat(u, v)) == multiply(g, u, v)
        assert multiply(g, identity_form(g), u) == u


def check_britton_and_confluence():
    rng = random.Random(203)
    for g in (_bs_group(), _flagship_group()):
        for _ in range(600):
            w = _random_word(rng, g)
            outcomes = normalize_all_pinch_orders(g, w)
            assert len(outcomes) == 1, f"pinch order changes the result for {w}"
            terminal = next(iter(outcomes))
            nf = normalize(g, w)
            assert terminal == (nf.head,) + nf.tail, "oracle disagrees with normalize"


def check_defining_relations():
    for g in (_bs_group(), _flagship_group(), _finite_order_group()):
        t = stable_letter(g)
        t_inv = stable_letter(g, -1)
        for col in g.domain.basis:
            lhs = multiply(g, multiply(g, t, abelian_form(g, col)), t_inv)
            assert lhs == abelian_form(g, g.conj_fwd(col)), "t c t^-1 != A c"


# -- tree ---------------------------------------------------------------------


def _act_one(g, w, key):
    return vertex_key(normalize(g, concat(w, key_word(key, dim=g.dim))))


def check_degree_regularity_and_tree_property():
    for g, radius in ((_bs_group(), 4), (_flagship_group(), 2), (_finite_order_group(), 3)):
        ball = expand_ball(g, radius)
        degree = g.index_domain + g.index_image
        for key in ball.vertices:
            if ball.depth[key] < radius:
                neighbours = {n for n, _, _ in ball.adjacency[key]}
                assert len(neighbours) == degree, "vertex degree mismatch"
        edges = sum(1 for k in ball.vertices if ball.parent[k] is not None)
        assert edges == ball.vertex_count - 1, "edge count violates the tree property"


def check_action_consistency():
    rng = random.Random(301)
    for g in (_bs_group(), _flagship_group()):
        ball = expand_ball(g, 2)
        for _ in range(15):
            u = normalize(g, _random_word(rng, g, max_t=2))
            v = normalize(g, _random_word(rng, g, max_t=2))
            uv = multiply(g, u, v)
            act_v = act_on_ball(ball, v)
            act_uv = act_on_ball(ball, uv)
            for key in ball.vertices:
                mid = act_v[key]
                if mid in ball.depth:
                    assert _act_one(g, u, mid) == act_uv[key], "action is not functorial"


def check_stabilizers_fix_vertices():
    for g in (_bs_group(), _flagship_group()):
        ball = expand_ball(g, 3)
        for key in ball.vertices:
            for col in ball.stabilizers[key].basis:
                w = abelian_form(g, col)
                assert _act_one(g, w, key) == key, "stabilizer generator moves its vertex"


def check_stabilization_chains():
    for g, depth, finite in (
        (_bs_group(), 6, False),
        (_flagship_group(), 4, False),
        (_finite_order_group(), 4, True),
    ):
        report = stabilization_sequence(g, tuple([1] + [0] * (g.dim - 1)), depth)
        for i in range(depth - 1):
            # raises NotSublatticeError if the kernel chain is not nested
            assert lattice_index(report.kernels[i + 1], report.kernels[i]) >= 1
            assert report.multipliers[i + 1] % report.multipliers[i] == 0, "n_i divisibility"
        constant = len(set(report.multipliers)) == 1
        assert constant == finite, "growth pattern does not match the order of A"


def check_multiplier_fixes_ball():
    for g, depth in ((_bs_group(), 4), (_flagship_group(), 2)):
        element = tuple([1] + [0] * (g.dim - 1))
        report = stabilization_sequence(g, element, depth)
        for i in range(1, depth + 1):
            ball = expand_ball(g, i)
            n_i = report.multipliers[i - 1]
            w = abelian_form(g, tuple(n_i * x for x in element))
            assert all(_act_one(g, w, k) == k for k in ball.vertices), "n_i a moves the ball"
            for p in {f for f in range(2, n_i + 1) if n_i % f == 0 and _is_prime(f)}:
                smaller = abelian_form(g, tuple((n_i // p) * x for x in element))
                assert any(
                    _act_one(g, smaller, k) != k for k in ball.vertices
                ), "n_i is not minimal on the ball"


def _is_prime(k: int) -> bool:
    return k > 1 and all(k % d for d in range(2, int(k**0.5) + 1))


# -- coarse geometry ----------------------------------------------------------


def _random_space(rng, max_points=40) -> FiniteCoarseSpace:
    n = rng.randint(8, max_points)
    edges = set()
    for i in range(1, n):
        j = rng.randrange(i)
        edges.add((j, i, 1))
    for _ in range(n // 2):
        i, j = rng.sample(range(n), 2)
        if i > j:
            i, j = j, i
        edges.add((i, j, 1))
    return FiniteCoarseSpace.from_graph(n, edges)


def check_components_partition_and_certificate():
    rng = random.Random(401)
    for _ in range(30):
        space = _random_space(rng)
        subset = frozenset(p for p in range(space.points) if rng.random() < 0.6)
        s = rng.choice((1, 2))
        comps = s_components(space, subset, s)
        union = set()
        for comp in comps:
            assert not (union & comp), "components overlap"
            union |= comp
        assert union == set(subset), "components do not cover the subset"
        for c1, c2 in combinations(comps, 2):
            for x in c1:
                row = space.dist_from(frozenset([x]))
                assert all(row[y] > s for y in c2), "distinct components within reach"


def check_component_monotonicity():
    rng = random.Random(402)
    for _ in range(20):
        space = _random_space(rng)
        subset = frozenset(p for p in range(space.points) if rng.random() < 0.7)
        fine = s_components(space, subset, 1)
        coarse_parts = s_components(space, subset, 2)
        for comp in fine:
            assert sum(1 for c in coarse_parts if comp & c) == 1, "coarsening split a component"


def check_uniformity_profiles():
    grid = build_grid((9, 9, 9))
    plane = frozenset(grid.index((x, y, 4)) for x in range(9) for y in range(9))
    complement = grid.all_points() - neighborhood(grid, plane, 1)
    for comp in s_components(grid, complement, 1):
        profile = coarse_complement_profile(grid, comp, plane, 4)
        assert all(rho is not None and rho <= r + 2 for r, rho in enumerate(profile, start=1))
    ball = expand_ball(_bs_group(), 2)
    product = build_tree_product(ball, build_grid((4,)))
    from .tree import axis_keys

    axis = frozenset(
        product.pair_index(k, p) for k in axis_keys(ball) for p in range(4)
    )
    complement = product.all_points() - neighborhood(product, axis, 1)
    for comp in s_components(product, complement, 1):
        profile = coarse_complement_profile(product, comp, axis, 4)
        assert all(rho is not None and rho <= r + 2 for r, rho in enumerate(profile, start=1))


def check_one_sided_containment_random():
    rng = random.Random(403)
    trials = 0
    while trials < 500:
        space = _random_space(rng, max_points=30)
        a = frozenset(rng.sample(range(space.points), rng.randint(1, 3)))
        r, s = 1, 1
        complement = space.all_points() - neighborhood(space, a, r)
        comps = s_components(space, complement, s)
        if not comps:
            continue
        c = frozenset().union(*rng.sample(comps, rng.randint(1, len(comps))))
        boundary_dist = space.dist_from(c)
        dist_a = space.dist_from(a)
        from .coarse import boundary_r

        edge = boundary_r(space, c, s)
        if edge and any(dist_a[p] == float("inf") for p in edge):
            continue
        s_prime = max((int(dist_a[p]) + 1 for p in edge), default=0)
        p_bound = s_prime + s
        far = [x for x in range(space.points) if dist_a[x] >= p_bound]
        if not far:
            continue
        seed = rng.choice(far)
        m = {seed}
        for _ in range(rng.randint(0, 6)):
            frontier = [
                y
                for x in m
                for y in range(space.points)
                if y not in m and dist_a[y] >= p_bound and space.distance(x, y) <= s
            ]
            if not frontier:
                break
            m.add(rng.choice(frontier))
        verdict = one_sided_containment_check(space, frozenset(m), a, c, s, p_bound)
        assert not verdict.precondition_failures, verdict
        assert verdict.side in ("inside", "outside"), f"mixed verdict: {verdict}"
        trials += 1


def check_z2_class_dimensions():
    # star fixture: a hub neighborhood with k long (deep) and 2 short arms
    for deep_targets in (0, 1, 2, 3, 4):
        arms = [7] * deep_targets + [2, 2]
        edges = []
        next_id = 1
        tips = []
        for length in arms:
            prev = 0
            for _ in range(length):
                edges.append((prev, next_id, 1))
                prev = next_id
                next_id += 1
            tips.append(prev)
        space = FiniteCoarseSpace.from_graph(next_id, edges)
        analysis = separation_analysis(space, frozenset([0]), 1, 1, 4)
        assert analysis.deep_count == deep_targets, (deep_targets, analysis)
        k = analysis.deep_count
        deep_comps = [c for c, f in zip(analysis.components, analysis.deep_flags) if f]
        classes = set()
        for bits in product((0, 1), repeat=len(analysis.components)):
            chosen = [
                c for c, b in zip(analysis.components, bits) if b
            ]
            deep_in = frozenset(
                i for i, c in enumerate(deep_comps) if any(c <= u or c == u for u in chosen)
            )
            all_deep = frozenset(range(k))
            classes.add(frozenset({deep_in, all_deep - deep_in}))
        assert len(classes) == 2 ** max(k - 1, 0), "separation class count is off"
        assert analysis.classes.dimension == max(k - 1, 0)


# -- cyclic orders -------------------------------------------------------------


def check_standard_orders_and_witness_failures():
    for m in range(3, 13):
        order = standard_order(m)
        assert check_axioms(order.ground, order.triples) is None
    order = standard_order(4)
    broken = set(order.triples)
    broken.remove(next(iter(order.triples)))
    violation = check_axioms(order.ground, broken)
    assert violation is not None and violation.axiom in ("cyclicity", "connectedness")
    clash = set(order.triples)
    a, b, c = next(iter(order.triples))
    clash.update({(c, b, a), (b, a, c), (a, c, b)})  # whole rotation class
    violation = check_axioms(order.ground, clash)
    assert violation is not None and violation.axiom == "asymmetry"


def check_solver_against_enumeration():
    rng = random.Random(501)
    for trial in range(60):
        m = rng.randint(3, 6)
        gens = [list(rng.sample(range(m), m)) for _ in range(rng.randint(1, 2))]
        mode = rng.choice(("preserve-only", "respect"))
        result = search_invariant_order(m, gens, mode)
        brute = False
        for order in all_cyclic_orders(m):
            types = [respect_type(order, {i: p[i] for i in range(m)}) for p in gens]
            if mode == "preserve-only":
                ok = all(t == "preserves" for t in types)
            else:
                ok = all(t in ("preserves", "reverses") for t in types)
            if ok:
                brute = True
                break
        assert result.satisfiable == brute, (m, gens, mode)
        if result.satisfiable:
            order = result.witness
            assert check_axioms(order.ground, order.triples) is None
            for p, sign in zip(gens, result.signs):
                expected = "preserves" if sign == 1 else "reverses"
                assert respect_type(order, {i: p[i] for i in range(m)}) == expected


def check_closure_soundness():
    rng = random.Random(502)
    for _ in range(40):
        m = rng.randint(3, 6)
        base = list(range(m))
        triples = set()
        for _ in range(rng.randint(1, 4)):
            triples.add(tuple(rng.sample(base, 3)))
        cs = CyclicConstraintSet.build(base, triples)
        result = closure(cs)
        extensions = [
            order
            for order in all_cyclic_orders(m)
            if cs.triples <= order.triples
        ]
        if not result.consistent:
            assert not extensions, "inconsistent constraints admit an extension"
            continue
        for order in extensions:
            assert result.triples <= order.triples, "closure derived a non-consequence"


def check_equal_cycle_law_small():
    from .cyclic import cycle_type

    for m in range(3, 7):
        for perm in permutations(range(m)):
            result = search_invariant_order(m, [list(perm)], "preserve-only")
            lengths = set(cycle_type({i: v for i, v in enumerate(perm)}))
            assert result.satisfiable == (len(lengths) == 1), (m, perm)


def check_chain_replay():
    m = 10
    cs = chain_constraints(m)
    result = closure(cs)
    assert result.consistent
    z = m + 1
    for i in range(2, m + 1):
        assert (1, i, z) in result.triples, f"[x1, x{i}, z] not derived"
        assert (z, i, 1) not in result.triples, "x_i landed inside the interval (z, x1)"
        assert verify_derivation(result.trace((1, i, z)), cs.triples)
    contradiction = CyclicConstraintSet.build(
        cs.ground, set(cs.triples) | {(z, m // 2, 1)}
    )
    broken = closure(contradiction)
    assert not broken.consistent and broken.clash is not None
    for t in broken.clash:
        assert verify_derivation(broken.trace(t), contradiction.triples)


def check_sphere_bridge():
    g = _flagship_group()
    ball = expand_ball(g, 1)
    sphere, mapping, ctype = sphere_permutation(ball, abelian_form(g, (1, 0)), 1)
    assert len(sphere) == 10 and sorted(ctype) == [5, 5]
    identity_map = sphere_permutation(ball, identity_form(g), 1)[1]
    assert all(identity_map[i] == i for i in range(10))


# -- serialization --------------------------------------------------------------


def check_json_roundtrips():
    g = _flagship_group()
    assert jsonio.decode_group(jsonio.encode_group(g)) == g
    word = GroupWord((1, -2), ((1, (0, 3)), (-1, (4, 5))))
    assert jsonio.decode_word(jsonio.encode_word(word)) == word
    c = g.classification
    assert jsonio.decode_classification(jsonio.encode_classification(c)) == c
    lat = g.domain
    assert jsonio.decode_lattice(jsonio.encode_lattice(lat)) == lat
    ball = expand_ball(g, 2)
    parsed = jsonio.decode_ball_structure(jsonio.encode_ball(ball))
    assert parsed["group"] == g and parsed["radius"] == 2
    assert [k for k, _ in parsed["vertices"]] == list(ball.vertices)
    assert parsed["stabilizers"] == ball.stabilizers
    report = stabilization_sequence(g, (1, 0), 3)
    parsed_report = jsonio.decode_stabilization(jsonio.encode_stabilization(report))
    assert parsed_report == report
    order = standard_order(5)
    assert jsonio.decode_order(jsonio.encode_order(order)) == order
    space = FiniteCoarseSpace.from_graph(4, [(0, 1, 1), (1, 2, Fraction(1, 2)), (2, 3, 2)])
    rebuilt = jsonio.decode_space(jsonio.encode_space(space))
    assert rebuilt.points == space.points
    assert all(
        rebuilt.distance(i, j) == space.distance(i, j)
        for i in range(4)
        for j in range(4)
    )


CHECKS = [
    ("linalg", "hnf_idempotent_and_basis_free", check_hnf_idempotent_and_basis_free),
    ("linalg", "index_det_identity", check_index_det_identity),
    ("linalg", "intersect_bruteforce_box", check_intersect_bruteforce_box),
    ("linalg", "membership_cramer_agreement", check_membership_cramer_agreement),
    ("linalg", "residue_partition_counts", check_residue_partition_counts),
    ("linalg", "sturm_vs_bisection", check_sturm_vs_bisection),
    ("linalg", "classification_invariances", check_classification_invariances),
    ("linalg", "finite_order_powers", check_finite_order_powers),
    ("words", "normalize_idempotent", check_normalize_idempotent),
    ("words", "inverse_and_homomorphism", check_inverse_and_homomorphism),
    ("words", "britton_and_confluence", check_britton_and_confluence),
    ("words", "defining_relations", check_defining_relations),
    ("tree", "degree_regularity_and_tree_property", check_degree_regularity_and_tree_property),
    ("tree", "action_consistency", check_action_consistency),
    ("tree", "stabilizers_fix_vertices", check_stabilizers_fix_vertices),
    ("tree", "stabilization_chains", check_stabilization_chains),
    ("tree", "multiplier_fixes_ball", check_multiplier_fixes_ball),
    ("coarse", "components_partition_and_certificate", check_components_partition_and_certificate),
    ("coarse", "component_monotonicity", check_component_monotonicity),
    ("coarse", "uniformity_profiles", check_uniformity_profiles),
    ("coarse", "one_sided_containment_random", check_one_sided_containment_random),
    ("coarse", "z2_class_dimensions", check_z2_class_dimensions),
    ("cyclic", "standard_orders_and_witness_failures", check_standard_orders_and_witness_failures),
    ("cyclic", "solver_against_enumeration", check_solver_against_enumeration),
    ("cyclic", "closure_soundness", check_closure_soundness),
    ("cyclic", "equal_cycle_law_small", check_equal_cycle_law_small),
    ("cyclic", "chain_replay", check_chain_replay),
    ("cyclic", "sphere_bridge", check_sphere_bridge),
    ("io", "json_roundtrips", check_json_roundtrips),
]


def run_all():
    """Run every suite; returns (suite, name, passed, detail) tuples."""
    results = []
    for suite, name, fn in CHECKS:
        try:
            fn()
            results.append((suite, name, True, ""))
        except AssertionError as exc:
            results.append((suite, name, False, str(exc)))
        except Exception as exc:  # noqa: BLE001 - report, do not crash the runner
            results.append((suite, name, False, f"{type(exc).__name__}: {exc}"))
    return results
