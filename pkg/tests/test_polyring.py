from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import SYMBOLS, homogeneous_polys, polys, to_sympy
from planesyz.polyring import (
    ArityError,
    DegreeError,
    NotHomogeneousError,
    Poly,
    dehomogenize,
    euler_check,
    eta,
    gcd,
    grevlex_key,
    homogenize,
    monomials_of_degree,
    monomials_up_to_degree,
    squarefree_check,
)

x, y = Poly.gens(2)
X, Y, Z = Poly.gens(3)


@given(polys(2), polys(2), polys(2))
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Poly.zero(2)
    assert a * 1 == a


@given(polys(3), polys(3))
def test_product_matches_sympy(a, b):
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0


@given(polys(3), st.integers(0, 2))
def test_partial_matches_sympy(p, var):
    assert sympy.expand(to_sympy(p.partial(var)) - sympy.diff(to_sympy(p), SYMBOLS[var])) == 0


@given(polys(2), st.integers(0, 3))
def test_power_is_repeated_product(p, n):
    expected = Poly.constant(1, 2)
    for _ in range(n):
        expected = expected * p
    assert p ** n == expected


@given(polys(2), polys(2))
def test_division_identity(a, b):
    if b.is_zero():
        return
    q, r = a.divmod_single(b)
    assert q * b + r == a
    # no remainder term is divisible by the leading monomial of b
    lm = b.leading_monomial
    assert all(any(e < f for e, f in zip(m, lm)) for m in r.monomials())


def test_terms_in_grevlex_order():
    p = x ** 2 + x * y + y ** 2 + x + y + 1
    assert p.monomials() == [(2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0)]
    # grevlex ties on degree are broken by the smallest power of the last variable
    q = X * Z ** 2 + Y ** 3 + X * Y * Z
    assert q.monomials() == [(0, 3, 0), (1, 1, 1), (1, 0, 2)]
    assert grevlex_key((1, 1, 1)) > grevlex_key((1, 0, 2))


def test_zero_polynomial():
    zero = Poly.zero(2)
    assert zero.is_zero() and zero.degree == -1
    assert (x - x) == zero
    assert zero * x == zero


def test_monomial_counts():
    for s in range(6):
        assert len(monomials_of_degree(s, 3)) == (s + 1) * (s + 2) // 2
        assert len(monomials_up_to_degree(s, 2)) == (s + 1) * (s + 2) // 2


def test_mixed_arity_rejected():
    with pytest.raises(ArityError):
        _ = x + X
    with pytest.raises(ArityError):
        Poly({(1, 0, 0): 1}, 2)


@given(polys(2, max_degree=4), st.integers(0, 3))
def test_homogenize_roundtrip(g, extra):
    d = max(g.degree, 0) + extra
    f = homogenize(g, d)
    assert f.is_zero() or (f.is_homogeneous() and f.degree == d)
    assert dehomogenize(f) == g


@given(polys(2, max_degree=3), polys(2, max_degree=3), st.integers(0, 2), st.integers(0, 2))
def test_eta_multiplicative(u, v, a, b):
    e1, e2 = max(u.degree, 0) + a, max(v.degree, 0) + b
    assert eta(u * v, e1 + e2) == eta(u, e1) * eta(v, e2)


@given(polys(2, max_degree=3), polys(2, max_degree=3), st.integers(0, 2))
def test_eta_linear(u, v, a):
    e = max(u.degree, v.degree, 0) + a
    assert eta(u + v, e) == eta(u, e) + eta(v, e)


def test_eta_degree_too_small():
    with pytest.raises(DegreeError):
        eta(x ** 3, 2)


@given(st.integers(1, 4).flatmap(homogeneous_polys))
def test_euler_identity(f):
    if f.is_zero():
        return
    ok, residual = euler_check(f)
    assert ok and residual.is_zero()


def test_euler_rejects_inhomogeneous():
    with pytest.raises(NotHomogeneousError):
        euler_check(X ** 2 + Y)


@given(polys(2, max_degree=2, max_terms=3), polys(2, max_degree=2, max_terms=3),
       polys(2, max_degree=2, max_terms=3))
def test_gcd_matches_sympy(a, b, c):
    p, q = a * c, b * c
    g = gcd(p, q)
    if p.is_zero() and q.is_zero():
        assert g.is_zero()
        return
    expected = sympy.Poly(sympy.gcd(to_sympy(p), to_sympy(q)), *SYMBOLS[:2])
    ours = sympy.Poly(to_sympy(g), *SYMBOLS[:2])
    assert sympy.div(ours, expected)[1].is_zero and sympy.div(expected, ours)[1].is_zero
    assert g.leading_coefficient == 1


def test_gcd_three_variables():
    common = X * Y - Z ** 2
    assert gcd(common * (X + Z), common * (Y - 2 * Z)) == common


@given(polys(2, max_degree=3, max_terms=4))
def test_squarefree_matches_sympy(g):
    if g.is_constant():
        return
    factors = sympy.factor_list(to_sympy(g))[1]
    expected = all(mult == 1 for _, mult in factors)
    assert squarefree_check(g) == expected


def test_squarefree_examples():
    assert squarefree_check(x * y * (x - y))
    assert not squarefree_check((y - x ** 2) ** 2)
    assert not squarefree_check(X * Y ** 2 * Z)


def test_evaluate_and_compose():
    p = x ** 2 * y - Fraction(1, 2) * y + 3
    assert p.evaluate((2, 4)) == 16 - 2 + 3
    shifted = p.compose([x + 1, y])
    assert shifted.evaluate((1, 4)) == p.evaluate((2, 4))


def test_exquo_rejects_inexact():
    with pytest.raises(ValueError):
        (x ** 2 + 1).exquo(x)
    assert ((x + y) * (x - y)).exquo(x - y) == x + y
