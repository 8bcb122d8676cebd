import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hnnlat.errors import PreconditionError
from hnnlat.matrices import RationalMatrix
from hnnlat.oracles import normalize_all_pinch_orders
from hnnlat.words import (
    GroupWord,
    abelian_form,
    concat,
    identity_form,
    invert,
    is_identity,
    multiply,
    normalize,
    stable_letter,
    t_length,
    validate_group,
)


class TestValidate:
    def test_bs12(self, bs12):
        assert bs12.domain.basis == ((1,),)
        assert bs12.image.basis == ((2,),)
        assert (bs12.index_domain, bs12.index_image) == (1, 2)

    def test_flagship(self, flagship):
        assert (flagship.index_domain, flagship.index_image) == (5, 5)
        assert flagship.domain.basis == ((1, 2), (0, 5))
        assert flagship.image.basis == ((1, 3), (0, 5))

    def test_non_integral_image_rejected(self):
        with pytest.raises(PreconditionError):
            validate_group(1, RationalMatrix([[Fraction(1, 2)]]), [(1,)])

    def test_rank_defect_rejected(self):
        with pytest.raises(PreconditionError):
            validate_group(2, RationalMatrix.identity(2), [(1, 0)])

    def test_singular_matrix_rejected(self):
        with pytest.raises(PreconditionError):
            validate_group(2, RationalMatrix([[1, 1], [1, 1]]), [(1, 0), (0, 1)])

    def test_halving_with_even_domain_is_fine(self):
        g = validate_group(1, RationalMatrix([[Fraction(1, 2)]]), [(2,)])
        assert (g.index_domain, g.index_image) == (2, 1)


class TestNormalize:
    def test_bs_defining_relation(self, bs12):
        # t a t^-1 a^-2 is the identity
        w = GroupWord((0,), ((1, (1,)), (-1, (-2,))))
        assert is_identity(normalize(bs12, w))

    def test_flagship_pinch(self, flagship):
        w = GroupWord((0, 0), ((1, (2, -1)), (-1, (0, 0))))
        nf = normalize(flagship, w)
        assert nf.head == (2, 1) and nf.tail == ()

    def test_flagship_no_pinch(self, flagship):
        w = GroupWord((0, 0), ((1, (1, 0)), (-1, (0, 0))))
        nf = normalize(flagship, w)
        assert t_length(nf) == 2
        assert nf.head == (0, 0)
        assert nf.tail == ((1, (0, 3)), (-1, (3, -1)))

    def test_residues_are_canonical(self, flagship):
        rng = random.Random(21)
        from hnnlat.lattices import coset_residue, lattice_member

        for _ in range(200):
            w = GroupWord(
                tuple(rng.randint(-9, 9) for _ in range(2)),
                tuple(
                    (rng.choice((1, -1)), tuple(rng.randint(-9, 9) for _ in range(2)))
                    for _ in range(rng.randint(0, 5))
                ),
            )
            nf = normalize(flagship, w)
            entries = [nf.head] + [c for _, c in nf.tail]
            signs = [e for e, _ in nf.tail]
            for i, eps in enumerate(signs):
                lat = flagship.image if eps == 1 else flagship.domain
                assert entries[i] == coset_residue(entries[i], lat)
            for i in range(len(signs) - 1):
                if signs[i] == 1 and signs[i + 1] == -1:
                    assert not lattice_member(entries[i + 1], flagship.domain)
                if signs[i] == -1 and signs[i + 1] == 1:
                    assert not lattice_member(entries[i + 1], flagship.image)

    def test_dimension_mismatch(self, flagship):
        with pytest.raises(PreconditionError):
            normalize(flagship, GroupWord((1,), ()))

    @given(st.data())
    @settings(max_examples=120, deadline=None)
    def test_idempotent_random(self, bs12, data):
        k = data.draw(st.integers(0, 8))
        head = (data.draw(st.integers(-100, 100)),)
        tail = tuple(
            (data.draw(st.sampled_from((1, -1))), (data.draw(st.integers(-100, 100)),))
            for _ in range(k)
        )
        nf = normalize(bs12, GroupWord(head, tail))
        assert normalize(bs12, nf) == nf


class TestGroupOps:
    def test_inverse_cancels(self, flagship):
        rng = random.Random(22)
        for _ in range(300):
            w = GroupWord(
                tuple(rng.randint(-5, 5) for _ in range(2)),
                tuple(
                    (rng.choice((1, -1)), tuple(rng.randint(-5, 5) for _ in range(2)))
                    for _ in range(rng.randint(0, 6))
                ),
            )
            nf = normalize(flagship, w)
            assert multiply(flagship, nf, invert(flagship, nf)) == identity_form(flagship)

    def test_bs_pinch_product(self, bs12):
        t = stable_letter(bs12)
        rest = normalize(bs12, GroupWord((1,), ((-1, (0,)),)))
        assert multiply(bs12, t, rest) == abelian_form(bs12, (2,))

    def test_identity_neutral(self, flagship):
        w = normalize(flagship, GroupWord((3, 1), ((1, (2, 2)),)))
        e = identity_form(flagship)
        assert multiply(flagship, e, w) == w
        assert multiply(flagship, w, e) == w

    def test_homomorphism_random(self, bs12, flagship):
        rng = random.Random(23)
        for g, dim in ((bs12, 1), (flagship, 2)):
            for _ in range(200):
                mk = lambda: GroupWord(
                    tuple(rng.randint(-4, 4) for _ in range(dim)),
                    tuple(
                        (rng.choice((1, -1)), tuple(rng.randint(-4, 4) for _ in range(dim)))
                        for _ in range(rng.randint(0, 4))
                    ),
                )
                u, v = normalize(g, mk()), normalize(g, mk())
                assert normalize(g, concat(u, v)) == multiply(g, u, v)

    def test_associativity_random(self, flagship):
        rng = random.Random(25)
        mk = lambda: normalize(
            flagship,
            GroupWord(
                tuple(rng.randint(-4, 4) for _ in range(2)),
                tuple(
                    (rng.choice((1, -1)), tuple(rng.randint(-4, 4) for _ in range(2)))
                    for _ in range(rng.randint(0, 3))
                ),
            ),
        )
        for _ in range(100):
            u, v, w = mk(), mk(), mk()
            assert multiply(flagship, multiply(flagship, u, v), w) == multiply(
                flagship, u, multiply(flagship, v, w)
            )

    def test_invert_examples(self, flagship):
        assert invert(flagship, identity_form(flagship)) == identity_form(flagship)
        assert invert(flagship, abelian_form(flagship, (2, -1))) == abelian_form(flagship, (-2, 1))
        assert invert(flagship, stable_letter(flagship)) == stable_letter(flagship, -1)

    def test_defining_relation_on_generators(self, flagship):
        t = stable_letter(flagship)
        t_inv = stable_letter(flagship, -1)
        for col in flagship.domain.basis:
            product = multiply(flagship, multiply(flagship, t, abelian_form(flagship, col)), t_inv)
            assert product == abelian_form(flagship, flagship.conj_fwd(col))

    def test_t_length(self, flagship):
        assert t_length(identity_form(flagship)) == 0
        assert t_length(normalize(flagship, GroupWord((0, 0), ((1, (1, 0)), (-1, (0, 0)))))) == 2
        assert t_length(normalize(flagship, GroupWord((0, 0), ((1, (2, -1)), (-1, (0, 0)))))) == 0


class TestBrittonOracle:
    def test_pinch_order_confluence_random(self, bs12, flagship):
        rng = random.Random(24)
        for g, dim in ((bs12, 1), (flagship, 2)):
            for _ in range(400):
                w = GroupWord(
                    tuple(rng.randint(-3, 3) for _ in range(dim)),
                    tuple(
                        (rng.choice((1, -1)), tuple(rng.randint(-3, 3) for _ in range(dim)))
                        for _ in range(rng.randint(0, 4))
                    ),
                )
                outcomes = normalize_all_pinch_orders(g, w)
                assert len(outcomes) == 1
                nf = normalize(g, w)
                assert next(iter(outcomes)) == (nf.head,) + nf.tail

    def test_britton_nontriviality(self, flagship):
        # a reduced word with t-letters is never the identity; cross-checked
        # by the oracle never reaching a t-free word
        w = GroupWord((0, 0), ((1, (1, 0)), (-1, (0, 0))))
        outcomes = normalize_all_pinch_orders(flagship, w)
        (terminal,) = outcomes
        assert len(terminal) > 1
