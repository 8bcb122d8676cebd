import random
from fractions import Fraction

import pytest

from hnnlat import polynomials as pp
from hnnlat.classify import classify_matrix, solve_conjugator
from hnnlat.errors import PreconditionError
from hnnlat.matrices import RationalMatrix
from hnnlat.oracles import count_roots_bisection


class TestSturm:
    def test_sqrt_two(self):
        assert pp.sturm_count(pp.poly([-2, 0, 1]), 0, 2) == 1

    def test_flagship_charpoly_has_no_real_roots(self):
        # discriminant 36/25 - 4 < 0
        p = pp.poly([1, Fraction(-6, 5), 1])
        assert pp.sturm_count(p, -10, 10) == 0

    def test_linear(self):
        assert pp.sturm_count(pp.poly([Fraction(-6, 5), 1]), -2, 2) == 1

    def test_endpoint_roots_divided_out(self):
        p = pp.poly([0, 1])  # x, root exactly at 0
        assert pp.sturm_count(p, 0, 1) == 0
        assert pp.sturm_count(p, -1, 1) == 1

    def test_zero_polynomial_rejected(self):
        with pytest.raises(PreconditionError):
            pp.sturm_count(pp.ZERO, 0, 1)

    def test_against_bisection_oracle(self):
        rng = random.Random(99)
        for _ in range(120):
            deg = rng.randint(1, 6)
            p = pp.poly(
                [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(deg)]
                + [Fraction(rng.randint(1, 5))]
            )
            lo = Fraction(rng.randint(-9, -1), rng.randint(1, 3))
            hi = Fraction(rng.randint(0, 9), rng.randint(1, 3))
            assert pp.sturm_count(p, lo, hi) == count_roots_bisection(p, lo, hi)

    def test_repeated_roots_counted_once(self):
        p = pp.mul(pp.poly([-1, 1]), pp.poly([-1, 1]))  # (x-1)^2
        assert pp.sturm_count(p, 0, 2) == 1


class TestMinimalPolynomial:
    def test_flagship(self, flagship_matrix):
        assert pp.minimal_polynomial(flagship_matrix) == pp.poly([1, Fraction(-6, 5), 1])

    def test_identity(self):
        assert pp.minimal_polynomial(RationalMatrix.identity(3)) == pp.poly([-1, 1])

    def test_non_scalar_diagonal(self):
        m = RationalMatrix([[2, 0], [0, 3]])
        assert pp.minimal_polynomial(m) == pp.poly([6, -5, 1])

    def test_nilpotent_plus_identity(self):
        m = RationalMatrix([[1, 1], [0, 1]])
        assert pp.minimal_polynomial(m) == pp.poly([1, -2, 1])


class TestCyclotomic:
    def test_first_few(self):
        assert pp.cyclotomic(1) == pp.poly([-1, 1])
        assert pp.cyclotomic(2) == pp.poly([1, 1])
        assert pp.cyclotomic(4) == pp.poly([1, 0, 1])
        assert pp.cyclotomic(6) == pp.poly([1, -1, 1])

    def test_round_trip_indices(self):
        for d in range(1, 30):
            assert pp.cyclotomic_index(pp.cyclotomic(d)) == d

    def test_non_cyclotomic(self):
        assert pp.cyclotomic_index(pp.poly([1, Fraction(-6, 5), 1])) is None
        assert pp.cyclotomic_index(pp.poly([-2, 1])) is None


class TestClassify:
    def test_flagship_rotation(self, flagship_matrix):
        c = classify_matrix(flagship_matrix)
        assert c.orthogonal_conjugate is True
        assert c.order is None  # infinite

    def test_quarter_turn(self):
        c = classify_matrix(RationalMatrix([[0, -1], [1, 0]]))
        assert c.orthogonal_conjugate is True
        assert c.order == 4

    def test_doubling(self):
        c = classify_matrix(RationalMatrix([[2]]))
        assert c.orthogonal_conjugate is False
        assert c.order is None

    def test_identity(self):
        for n in (1, 2, 4):
            c = classify_matrix(RationalMatrix.identity(n))
            assert c.orthogonal_conjugate is True and c.order == 1

    def test_singular_rejected(self):
        with pytest.raises(PreconditionError):
            classify_matrix(RationalMatrix([[1, 1], [1, 1]]))

    def test_shear_not_orthogonal(self):
        c = classify_matrix(RationalMatrix([[1, 1], [0, 1]]))
        assert c.orthogonal_conjugate is False  # minimal polynomial not squarefree
        assert not c.squarefree

    def test_scalar_ratio_grid(self):
        # one-dimensional groups: orthogonal-conjugacy iff |p| == |q|
        for p in range(1, 11):
            for q in range(1, 11):
                c = classify_matrix(RationalMatrix([[Fraction(q, p)]]))
                assert c.orthogonal_conjugate == (abs(p) == abs(q)), (p, q)

    def test_order_three(self):
        c = classify_matrix(RationalMatrix([[0, -1], [1, -1]]))
        assert c.order == 3 and c.orthogonal_conjugate

    def test_mixed_block_order_lcm(self):
        m = RationalMatrix([[-1, 0, 0], [0, 0, -1], [0, 1, 0]])
        assert classify_matrix(m).order == 4  # lcm of 2 and 4

    def test_finite_order_implies_orthogonal(self):
        rng = random.Random(5)
        mats = [
            RationalMatrix([[0, -1], [1, 0]]),
            RationalMatrix([[0, -1], [1, -1]]),
            RationalMatrix.identity(2),
            RationalMatrix([[-1]]),
        ]
        for a in mats:
            c = classify_matrix(a)
            assert c.finite_order
            assert c.orthogonal_conjugate, "finite order must imply orthogonal conjugacy"

    def test_conjugation_invariance(self, flagship_matrix):
        u = RationalMatrix([[1, 2], [1, 3]])  # det 1
        conj = u.matmul(flagship_matrix).matmul(u.inverse())
        c1, c2 = classify_matrix(flagship_matrix), classify_matrix(conj)
        assert c1.orthogonal_conjugate == c2.orthogonal_conjugate
        assert c1.order == c2.order

    def test_inverse_invariance(self, flagship_matrix):
        for a in (flagship_matrix, RationalMatrix([[2]]), RationalMatrix([[0, -1], [1, 0]])):
            assert (
                classify_matrix(a).orthogonal_conjugate
                == classify_matrix(a.inverse()).orthogonal_conjugate
            )

    def test_degree_four_cyclotomic_block(self):
        # companion matrix of x^4 + 1 (a primitive 8th root of unity)
        m = RationalMatrix(
            [[0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]
        )
        c = classify_matrix(m)
        assert c.orthogonal_conjugate and c.order == 8

    def test_salem_like_reciprocal_but_off_circle(self):
        # companion of x^2 - 3x + 1: self-reciprocal, real roots off the circle
        m = RationalMatrix([[0, -1], [1, 3]])
        c = classify_matrix(m)
        assert c.orthogonal_conjugate is False


class TestConjugator:
    def test_flagship_generators(self, flagship_matrix):
        a = solve_conjugator([(2, -1), (1, 2)], [(2, 1), (-1, 2)])
        assert a == flagship_matrix
        # multiply back through as a cross-check
        for src, dst in zip([(2, -1), (1, 2)], [(2, 1), (-1, 2)]):
            assert a.mul_int_vec_exact(src) == dst

    def test_identity(self):
        assert solve_conjugator([(1, 0), (0, 1)], [(1, 0), (0, 1)]) == RationalMatrix.identity(2)

    def test_scalar_ratio(self):
        assert solve_conjugator([(3,)], [(2,)]) == RationalMatrix([[Fraction(2, 3)]])

    def test_singular_rejected(self):
        with pytest.raises(PreconditionError):
            solve_conjugator([(1, 0), (2, 0)], [(1, 0), (0, 1)])
