from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zlab.polyalg import (
    RatPoly,
    integrate01,
    p_basis,
    poly_derive,
    poly_eval,
    q_basis,
    reflect,
    to_rat,
)

rats = st.fractions(min_value=-10, max_value=10, max_denominator=50)
polys = st.lists(rats, max_size=11).map(RatPoly)


def test_to_rat_reads_decimals_exactly():
    assert to_rat("1.023") == Fraction(1023, 1000)
    assert to_rat(0.1) == Fraction(1, 10)
    assert to_rat(3) == 3
    with pytest.raises(TypeError):
        to_rat(True)


def test_eval_identity_and_published_polys():
    assert poly_eval(RatPoly.x(), 1) == 1
    P1 = p_basis("section2-P1", ["-0.064", "0.112"])
    P2 = p_basis("section2-P2", ["1.305", "-0.276", "-0.025"])
    assert P1(1) == 1
    assert P2(1) == Fraction(1004, 1000)
    assert P2 == RatPoly(["0", "1.305", "-0.276", "-0.025"])


def test_derive():
    assert poly_derive(RatPoly([0, 0, 1])) == RatPoly([0, 2])
    assert poly_derive(RatPoly.const(1)).is_zero()
    P = p_basis("section3-P", ["-0.274"])
    assert poly_derive(P) == RatPoly(["0.726", "0.548"])


def test_integrate01():
    assert integrate01(RatPoly.const(1)) == 1
    assert integrate01(RatPoly.x()) == Fraction(1, 2)
    assert integrate01(RatPoly([0, 1, -1])) == Fraction(1, 6)


def test_p_basis_published_section3():
    P = p_basis("section3-P", ["-0.274", "-0.334", "0.005"])
    x = RatPoly.x()
    one = RatPoly.const(1)
    ref = (x - RatPoly.const("0.274") * x * (one - x) - RatPoly.const("0.334") * x * x * (one - x)
           + RatPoly.const("0.005") * x ** 3 * (one - x))
    assert P == ref
    assert p_basis("section2-P1", []) == x


def test_q_basis_published():
    Q = q_basis(["-0.609", "-0.572", "-4.895"])
    x = RatPoly.x()
    ref = (RatPoly.const(1) - RatPoly.const("0.609") * x
           - RatPoly.const("0.572") * RatPoly([0, 0, Fraction(1, 2), Fraction(-1, 3)])
           - RatPoly.const("4.895") * RatPoly([0, 0, 0, Fraction(1, 3), Fraction(-1, 2), Fraction(1, 5)]))
    assert Q == ref
    assert q_basis([0]) == RatPoly.const(1)
    dQ = poly_derive(Q)
    for h in (Fraction(1, 10), Fraction(1, 4)):
        assert dQ(Fraction(1, 2) + h) - dQ(Fraction(1, 2) - h) == 0


@given(st.lists(rats, max_size=5))
def test_p_basis_endpoints(c):
    for kind in ("section2-P1", "section3-P"):
        P = p_basis(kind, c)
        assert P(0) == 0 and P(1) == 1
    assert p_basis("section2-P2", c)(0) == 0


@given(st.lists(rats, min_size=1, max_size=4))
def test_q_basis_symmetry(d):
    Q = q_basis(d)
    assert Q(0) == 1
    dQ = poly_derive(Q)
    assert dQ == reflect(dQ)


@given(polys)
def test_fundamental_theorem(p):
    assert integrate01(poly_derive(p)) == p(1) - p(0)


@settings(max_examples=50)
@given(polys, polys, rats)
def test_ring_ops_commute_with_evaluation(p, q, x):
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)
    assert (p - q)(x) == p(x) - q(x)
    assert p.compose(q)(x) == p(q(x))


def test_float_evaluation_vectorizes():
    import numpy as np

    P = RatPoly([1, 2, 3])
    np.testing.assert_allclose(P(np.array([0.0, 0.5, 1.0])), [1, 2.75, 6])
