"""Independent reference implementations used to cross-check the fast paths.

Each oracle here deliberately avoids the machinery it checks: lattice
membership goes through Cramer determinants or raw combination enumeration
instead of Hermite forms, root counting uses Descartes/bisection instead of
Sturm chains, and word reduction explores every pinch order instead of the
single left-to-right pass.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from . import polynomials as pp
from .errors import PreconditionError
from .matrices import RationalMatrix
from .words import GroupData, GroupWord


def box_vectors(n: int, radius: int):
    return product(range(-radius, radius + 1), repeat=n)


def lattice_points_by_enumeration(generators, n: int, coeff_bound: int, box: int) -> frozenset:
    """All lattice points inside the box, by raw combination enumeration."""
    out = set()
    gens = [tuple(g) for g in generators]
    for coeffs in product(range(-coeff_bound, coeff_bound + 1), repeat=len(gens)):
        v = tuple(sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(n))
        if all(abs(x) <= box for x in v):
            out.add(v)
    return frozenset(out)


def member_by_cramer(x, generators) -> bool:
    """Membership in a full-rank lattice via determinant ratios only."""
    m = RationalMatrix.from_columns(generators)
    det = m.det()
    if det == 0:
        raise PreconditionError("Cramer oracle needs independent generators")
    n = m.n
    cols = [list(m.column(j)) for j in range(n)]
    for j in range(n):
        replaced = cols[:j] + [[Fraction(e) for e in x]] + cols[j + 1 :]
        if (RationalMatrix.from_columns(replaced).det() / det).denominator != 1:
            return False
    return True


# -- root counting by Descartes bisection ------------------------------------


def _taylor_shift(p: pp.Poly, a: Fraction) -> pp.Poly:
    """p(x + a), by the in-place Ruffini shift."""
    c = list(p)
    for i in range(len(c)):
        for j in range(len(c) - 2, i - 1, -1):
            c[j] += a * c[j + 1]
    return pp.poly(c)


def _descartes_variations(p: pp.Poly) -> int:
    signs = [(c > 0) - (c < 0) for c in p if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations_on_interval(p: pp.Poly, lo: Fraction, hi: Fraction) -> int:
    """Descartes bound for the number of roots in (lo, hi)."""
    shifted = _taylor_shift(p, lo)  # roots now in (0, hi - lo)
    width = hi - lo
    scaled = pp.poly([c * width**i for i, c in enumerate(shifted)])  # roots in (0, 1)
    reversed_p = pp.poly(list(reversed(scaled)))
    mapped = _taylor_shift(reversed_p, Fraction(1))
    return _descartes_variations(mapped)


def count_roots_bisection(p: pp.Poly, lo, hi) -> int:
    """Distinct real roots of p in (lo, hi): squarefree reduction, then
    recursive bisection with the Descartes 0/1 termination test."""
    if not p:
        raise PreconditionError("zero polynomial")
    lo, hi = Fraction(lo), Fraction(hi)
    p = pp.monic(pp.divmod_poly(p, pp.poly_gcd(p, pp.derivative(p)))[0])
    for endpoint in (lo, hi):
        while pp.degree(p) > 0 and pp.evaluate(p, endpoint) == 0:
            p = pp.divmod_poly(p, pp.poly([-endpoint, 1]))[0]
    if pp.degree(p) <= 0:
        return 0

    def rec(a: Fraction, b: Fraction) -> int:
        v = _variations_on_interval(p, a, b)
        if v == 0:
            return 0
        if v == 1:
            return 1
        mid = (a + b) / 2
        at_mid = 1 if pp.evaluate(p, mid) == 0 else 0
        return rec(a, mid) + at_mid + rec(mid, b)

    return rec(lo, hi)


# -- all-pinch-orders word reduction ------------------------------------------


def _word_tuple(w: GroupWord):
    return (w.head,) + w.tail


def _pinch_positions(g: GroupData, word):
    from .lattices import lattice_member

    # word is (c0, (e1, c1), ..., (ek, ck)); a pinch sits at tail index i
    # when t^{e_i} c_i t^{e_{i+1}} collapses
    out = []
    for i in range(1, len(word) - 1):
        eps_i, c_i = word[i]
        eps_next, _ = word[i + 1]
        if eps_i == 1 and eps_next == -1 and lattice_member(c_i, g.domain):
            out.append(i)
        elif eps_i == -1 and eps_next == 1 and lattice_member(c_i, g.image):
            out.append(i)
    return out


def _apply_pinch(g: GroupData, word, i):
    eps_i, c_i = word[i]
    _, c_next = word[i + 1]
    conj = g.conj_fwd(c_i) if eps_i == 1 else g.conj_bwd(c_i)
    if i == 1:
        prev = word[0]
        merged = tuple(a + b + c for a, b, c in zip(prev, conj, c_next))
        return (merged,) + word[3:]
    eps_prev, c_prev = word[i - 1]
    merged = (eps_prev, tuple(a + b + c for a, b, c in zip(c_prev, conj, c_next)))
    return word[: i - 1] + (merged,) + word[i + 2 :]


def _left_push(g: GroupData, word):
    from .lattices import coset_residue

    # canonical residues, computed right here rather than via normalize()
    parts = list(word)
    for i in range(len(parts) - 1):
        eps_next = parts[i + 1][0]
        value = parts[i] if i == 0 else parts[i][1]
        if eps_next == 1:
            r = coset_residue(value, g.image)
            carry = g.conj_bwd(tuple(a - b for a, b in zip(value, r)))
        else:
            r = coset_residue(value, g.domain)
            carry = g.conj_fwd(tuple(a - b for a, b in zip(value, r)))
        parts[i] = r if i == 0 else (parts[i][0], r)
        nxt_eps, nxt_c = parts[i + 1]
        parts[i + 1] = (nxt_eps, tuple(a + b for a, b in zip(carry, nxt_c)))
    return tuple(parts)


def normalize_all_pinch_orders(g: GroupData, w: GroupWord) -> frozenset:
    """Set of fully reduced forms reachable by applying pinches in every
    possible order, then left-pushing residues.  A singleton certifies
    confluence on this input."""
    results = set()
    seen = set()
    stack = [_word_tuple(w)]
    while stack:
        word = stack.pop()
        if word in seen:
            continue
        seen.add(word)
        pinches = _pinch_positions(g, word)
        if not pinches:
            results.add(_left_push(g, word))
            continue
        for i in pinches:
            stack.append(_apply_pinch(g, word, i))
    return frozenset(results)
