"""Exact univariate polynomial arithmetic over the rationals.

A polynomial is a tuple of Fractions, little endian (index i holds the
coefficient of x^i), with a nonzero leading coefficient; the zero
polynomial is the empty tuple.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

from .errors import PreconditionError
from .matrices import RationalMatrix

Poly = tuple[Fraction, ...]

ZERO: Poly = ()
ONE: Poly = (Fraction(1),)
X: Poly = (Fraction(0), Fraction(1))


def poly(coeffs) -> Poly:
    """Normalize a little-endian coefficient list (strip leading zeros)."""
    c = [Fraction(e) for e in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(p: Poly) -> int:
    return len(p) - 1


def evaluate(p: Poly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return poly([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ZERO
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly(out)


def scale(p: Poly, c) -> Poly:
    return poly([a * c for a in p])


def divmod_poly(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quo = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    inv_lead = 1 / q[-1]
    for k in range(len(rem) - len(q), -1, -1):
        coeff = rem[k + len(q) - 1] * inv_lead
        quo[k] = coeff
        if coeff:
            for i, b in enumerate(q):
                rem[k + i] -= coeff * b
    return poly(quo), poly(rem)


def monic(p: Poly) -> Poly:
    if not p:
        return ZERO
    return scale(p, 1 / p[-1])


def derivative(p: Poly) -> Poly:
    return poly([i * c for i, c in enumerate(p)][1:])


def poly_gcd(p: Poly, q: Poly) -> Poly:
    while q:
        p, q = q, divmod_poly(p, q)[1]
    return monic(p)


def lcm_poly(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ZERO
    g = poly_gcd(p, q)
    return monic(divmod_poly(mul(p, q), g)[0])


def is_squarefree(p: Poly) -> bool:
    return degree(poly_gcd(p, derivative(p))) == 0


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _sturm_chain(p: Poly) -> list[Poly]:
    chain = [p, derivative(p)]
    while chain[-1]:
        rem = divmod_poly(chain[-2], chain[-1])[1]
        if not rem:
            break
        chain.append(neg(rem))
    return chain


def _sign_variations(chain: list[Poly], x) -> int:
    signs = [s for s in (_sign(evaluate(q, x)) for q in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(p: Poly, lo, hi) -> int:
    """Number of distinct real roots of p in the open interval (lo, hi).

    Roots sitting exactly on an endpoint are divided out first, so counts
    are always for the open interval; multiplicities never inflate the
    count (the Sturm chain cancels square factors).
    """
    if not p:
        raise PreconditionError("zero polynomial")
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise PreconditionError("need lo < hi")
    for endpoint in (lo, hi):
        while degree(p) > 0 and evaluate(p, endpoint) == 0:
            p = divmod_poly(p, poly([-endpoint, 1]))[0]
    if degree(p) <= 0:
        return 0
    chain = _sturm_chain(p)
    return _sign_variations(chain, lo) - _sign_variations(chain, hi)


def minimal_polynomial(a: RationalMatrix) -> Poly:
    """Monic minimal polynomial via Krylov iteration on the standard basis.

    For each basis vector e, the cycle e, Ae, A^2 e, ... is reduced against
    a growing echelon span; the first dependence yields the local monic
    annihilator, and the answer is the lcm over all basis vectors.
    """
    n = a.n
    result = ONE
    for start in range(n):
        echelon: list[tuple[int, list[Fraction], list[Fraction]]] = []
        v = [Fraction(int(i == start)) for i in range(n)]
        power = 0
        while True:
            # expresses the current Krylov vector in terms of earlier ones
            vec = list(v)
            combo = [Fraction(0)] * (power + 1)
            combo[power] = Fraction(1)
            for pivot_idx, basis_vec, basis_combo in echelon:
                c = vec[pivot_idx]
                if c:
                    vec = [x - c * y for x, y in zip(vec, basis_vec)]
                    for i, y in enumerate(basis_combo):
                        combo[i] -= c * y
            pivot_idx = next((i for i, x in enumerate(vec) if x), None)
            if pivot_idx is None:
                local = poly(combo)
                break
            inv = 1 / vec[pivot_idx]
            echelon.append(
                (pivot_idx, [x * inv for x in vec], [x * inv for x in combo] + [Fraction(0)])
            )
            v = list(a.mul_vec(tuple(v)))
            power += 1
        result = lcm_poly(result, local)
        if degree(result) == n:
            break
    return monic(result)


def factor_rational(p: Poly) -> list[tuple[Poly, int]]:
    """Irreducible monic factors of p over Q, with multiplicities.

    Exact factorization is delegated to sympy; factors come back sorted by
    (degree, coefficients) so downstream reports are deterministic.
    """
    import sympy

    if not p:
        raise PreconditionError("zero polynomial")
    x = sympy.Symbol("x")
    sp = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p)], x, domain="QQ")
    _, factors = sp.factor_list()
    out = []
    for f, mult in factors:
        coeffs = [Fraction(int(c.numerator), int(c.denominator)) for c in reversed(f.all_coeffs())]
        out.append((monic(poly(coeffs)), int(mult)))
    out.sort(key=lambda fm: (degree(fm[0]), fm[0]))
    return out


def cyclotomic(d: int) -> Poly:
    """The d-th cyclotomic polynomial, by iterated exact division."""
    if d < 1:
        raise PreconditionError("cyclotomic index must be >= 1")
    cache = _CYCLOTOMIC_CACHE
    if d in cache:
        return cache[d]
    num = poly([-1] + [0] * (d - 1) + [1])  # x^d - 1
    for e in range(1, d):
        if d % e == 0:
            num = divmod_poly(num, cyclotomic(e))[0]
    cache[d] = num
    return num


_CYCLOTOMIC_CACHE: dict[int, Poly] = {}


def _euler_phi(d: int) -> int:
    out = 1
    n = d
    p = 2
    while p * p <= n:
        if n % p == 0:
            out *= p - 1
            n //= p
            while n % p == 0:
                out *= p
                n //= p
        p += 1
    if n > 1:
        out *= n - 1
    return out


def cyclotomic_index(p: Poly) -> int | None:
    """d with p == cyclotomic(d), or None.

    Candidates are bounded by 2*deg^2 + 2, which is safe because
    phi(d) >= sqrt(d/2).
    """
    m = degree(p)
    if m < 1:
        return None
    for d in range(1, 2 * m * m + 3):
        if _euler_phi(d) == m and cyclotomic(d) == p:
            return d
    return None


def integer_lcm(values) -> int:
    out = 1
    for v in values:
        out = out * v // int_gcd(out, v)
    return out
