"""Exact scalar arithmetic: rationals, rational functions, quadratic fields."""

import random
from fractions import Fraction

import pytest

from ncproj.fields import (QQ, QQ_Q, FieldMismatchError, QuadExt, RatFunc,
                           UPoly, field_by_name, quad_field, squarefree_part)

rng = random.Random(20240817)


def rand_fraction():
    return Fraction(rng.randint(-20, 20), rng.randint(1, 12))


def rand_ratfunc():
    num = UPoly([rand_fraction() for _ in range(rng.randint(1, 3))])
    den = UPoly([rand_fraction() for _ in range(rng.randint(1, 3))])
    if den.is_zero():
        den = UPoly((Fraction(1),))
    return RatFunc(num, den)


def rand_quad(D=5):
    return QuadExt(rng.randint(-15, 15), rng.randint(-15, 15),
                   rng.randint(1, 10), D)


@pytest.mark.parametrize("make", [rand_fraction, rand_ratfunc, rand_quad])
def test_field_axioms(make):
    """Commutativity, associativity, distributivity, inverses; 1000 cases."""
    for _ in range(1000 // 3):
        a, b, c = make(), make(), make()
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == a - a
        if b:
            inv = 1 / b if isinstance(b, Fraction) else b.inverse()
            assert b * inv == b / b


def test_upoly_divmod_and_gcd():
    f = UPoly([Fraction(x) for x in (2, 0, -3, 1)])   # x^3 - 3x^2 + 2
    g = UPoly([Fraction(x) for x in (-1, 1)])         # x - 1
    q, r = f.divmod(g)
    assert q * g + r == f
    assert r.degree() < g.degree()
    d = f.gcd(g)
    assert f.divmod(d)[1].is_zero() and g.divmod(d)[1].is_zero()


def test_upoly_eval_and_pow():
    f = UPoly([Fraction(1), Fraction(2), Fraction(1)])   # (x+1)^2
    assert f(Fraction(3)) == 16
    assert f ** 2 == f * f
    assert (f ** 0) == UPoly((Fraction(1),))


def test_ratfunc_normalization():
    # (x^2 - 1)/(x - 1) reduces to x + 1
    num = UPoly([Fraction(-1), Fraction(0), Fraction(1)])
    den = UPoly([Fraction(-1), Fraction(1)])
    r = RatFunc(num, den)
    assert r == RatFunc(UPoly([Fraction(1), Fraction(1)]))
    # denominator kept monic: 1/(2x) == (1/2)/x
    assert RatFunc(UPoly((Fraction(1),)), UPoly([Fraction(0), Fraction(2)])) == \
        RatFunc(UPoly((Fraction(1, 2),)), UPoly([Fraction(0), Fraction(1)]))


def test_ratfunc_q_renders():
    q = RatFunc.q()
    assert str(q) == "q"
    assert str(q * q - 1) in ("q^2 - 1", "-1 + q^2")


def test_squarefree_part():
    assert squarefree_part(12) == (3, 2)
    assert squarefree_part(5) == (5, 1)
    assert squarefree_part(49) == (1, 7)


def test_quadext_normalization():
    # (2 + 2*sqrt(5))/4 == (1 + sqrt(5))/2
    assert QuadExt(2, 2, 4, 5) == QuadExt(1, 1, 2, 5)
    # D = 12 is rewritten over sqrt(3)
    x = QuadExt(0, 1, 1, 12)
    assert x.D == 3 and x.s == 2


def test_quadext_exact_comparisons():
    phi = QuadExt(1, 1, 2, 5)       # golden ratio, ~1.618
    assert QuadExt.from_rational(Fraction(8, 5), 5) < phi
    assert phi < QuadExt.from_rational(Fraction(13, 8), 5)
    # conjugate comparisons must not use floats: near-tie case
    a = QuadExt(0, 1, 1, 2)         # sqrt(2)
    b = QuadExt(1414213562, 0, 10 ** 9, 2)
    assert b < a


def test_quadext_floor():
    for _ in range(300):
        x = rand_quad(rng.choice([2, 3, 5, 7]))
        n = x.floor()
        assert QuadExt.from_rational(n, x.D) <= x
        assert x < QuadExt.from_rational(n + 1, x.D)


def test_quadext_sign_and_inverse():
    x = QuadExt(-1, 1, 2, 5)        # ~0.618
    assert x.sign() == 1
    assert (x * x.inverse()) == QuadExt.from_rational(1, 5)
    assert (-x).sign() == -1
    assert QuadExt(0, 0, 1, 5).sign() == 0


def test_quadext_rational_detection():
    assert QuadExt(3, 0, 2, 5).is_rational()
    assert QuadExt(3, 0, 2, 5).to_fraction() == Fraction(3, 2)
    assert not QuadExt(0, 1, 1, 2).is_rational()


def test_field_tags():
    assert field_by_name("Q") is QQ
    assert field_by_name("Q(q)") is QQ_Q
    with pytest.raises(ValueError):
        field_by_name("GF(7)")
    k = quad_field(8)
    assert k.name == "Q(sqrt(2))"
    assert k.coerce(Fraction(1, 2)) == QuadExt(1, 0, 2, 2)


def test_mixed_radicand_rejected():
    with pytest.raises(FieldMismatchError):
        QuadExt(0, 1, 1, 2) + QuadExt(0, 1, 1, 3)
