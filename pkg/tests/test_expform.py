import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from zlab.checks import random_expratform, random_point, sigma_quadrature
from zlab.exceptions import PoleProximity
from zlab.expform import (
    BiPoly,
    EvalConfig,
    ExpRatForm,
    OperatorSpec,
    apply_operator,
    d_a,
    d_b,
    eval_at,
    lemma2_form,
    sigma_bipoly,
)
from zlab.meanvalue import PUBLISHED_SECTION2, PUBLISHED_SECTION3, section2_forms
from zlab.polyalg import RatPoly, q_basis

X = RatPoly.x()
A, B = BiPoly.a(), BiPoly.b()
ONE = BiPoly.const(Fraction(1))


def test_sigma_identity_poly():
    s = sigma_bipoly(X, X, 1)
    assert s == ONE + A * Fraction(1, 2) + B * Fraction(1, 2) + A * B * Fraction(1, 3)


def test_sigma_constant_poly():
    th = Fraction(3, 5)
    assert sigma_bipoly(RatPoly.const(1), RatPoly.const(1), th) == A * B * th**2


def test_sigma_swap_symmetry():
    P1, P2 = PUBLISHED_SECTION2.P1, PUBLISHED_SECTION2.P2
    th = Fraction(4, 7)
    assert sigma_bipoly(P1, P2, th).swap() == sigma_bipoly(P2, P1, th)


@pytest.mark.parametrize("a,b", [(-1.3, 0.4), (0.7, 1.9), (-2.0, -0.1)])
def test_sigma_matches_quadrature(a, b):
    P, Q = PUBLISHED_SECTION3.P, PUBLISHED_SECTION2.P2
    sym = float(sigma_bipoly(P, Q, Fraction(4, 7))(Fraction(a), Fraction(b)))
    assert abs(sym - sigma_quadrature(P, Q, Fraction(4, 7), a, b)) < 1e-10


def test_eval_simple_form():
    f = ExpRatForm({1: (ONE, ONE)})
    assert eval_at(f, -1, -1) == pytest.approx((1 + math.e**2) / -2, abs=1e-12)
    assert eval_at(f, -1, -1) == pytest.approx(-4.194528, abs=1e-6)


def test_eval_quotient_identity_poly():
    th, R = Fraction(4, 7), 1.023
    f = lemma2_form(X, X, th)
    t = float(th)

    def sig(a, b):
        return 1 + (a + b) * t / 2 + a * b * t * t / 3

    hand = (sig(-R, -R) - math.exp(2 * R) * sig(R, R)) / (-2 * R * t)
    assert eval_at(f, -R, -R) == pytest.approx(hand, rel=1e-13)
    assert round(eval_at(f, -R, -R), 3) == 10.787


def test_eval_zero_form():
    assert eval_at(ExpRatForm(), 0.3, 0.4) == 0


def test_pole_guard():
    f = lemma2_form(X, X, 1)
    with pytest.raises(PoleProximity):
        eval_at(f, 0.5, -0.5)
    # a pure polynomial has no pole
    assert eval_at(ExpRatForm.polynomial(A * B), 0.5, -0.5) == -0.25


def test_quotient_symmetric_for_equal_polys():
    f = lemma2_form(PUBLISHED_SECTION3.P, PUBLISHED_SECTION3.P, Fraction(4, 7))
    assert f.swap() == f


@pytest.mark.parametrize("t", [0.3, 1.0])
def test_quotient_numerator_vanishes_on_antidiagonal(t):
    f = lemma2_form(PUBLISHED_SECTION2.P1, PUBLISHED_SECTION2.P1, Fraction(4, 7))
    numerator = f.times_apb(1)
    assert set(numerator.terms) == {0}
    assert abs(eval_at(numerator, t, -t)) < 1e-12


def test_derivative_rules():
    f = ExpRatForm({1: (BiPoly(), ONE)})
    expected = ExpRatForm({1: (BiPoly(), -ONE), 2: (BiPoly(), -ONE)})
    assert d_a(f) == expected
    assert d_a(ExpRatForm.polynomial(A * B)) == ExpRatForm.polynomial(B)


def test_mixed_partials_commute_on_section2_forms():
    for _, f in section2_forms(PUBLISHED_SECTION2):
        assert d_a(d_b(f)) == d_b(d_a(f))


def test_finite_differences_random_forms():
    rng = np.random.default_rng(7)
    hp = EvalConfig(digits=30)
    h = 1e-6
    for _ in range(20):
        f = random_expratform(rng)
        a, b = random_point(rng)
        for deriv, shift in ((d_a, (h, 0)), (d_b, (0, h))):
            exact = float(eval_at(deriv(f), a, b, hp))
            with mpmath.workdps(30):
                fd = float((eval_at(f, Fraction(a) + Fraction(shift[0]), Fraction(b) + Fraction(shift[1]), hp)
                            - eval_at(f, Fraction(a) - Fraction(shift[0]), Fraction(b) - Fraction(shift[1]), hp))
                           / (2 * h))
            assert abs(fd - exact) <= 1e-6 * max(abs(exact), 1e-300)


def test_operator_identity_and_simple_cases():
    f = lemma2_form(PUBLISHED_SECTION3.P, PUBLISHED_SECTION3.P, Fraction(4, 7))
    Q = q_basis(["-0.609", "-0.572", "-4.895"])
    assert apply_operator(f, OperatorSpec(0, Q, "a")) == f
    g = apply_operator(f, OperatorSpec(1, RatPoly.const(1), "b"))
    assert g == f + d_b(f) * 2


def test_operator_factors_commute():
    f = lemma2_form(X, X, Fraction(1, 2))
    Q = q_basis([Fraction(1, 3), Fraction(-2)])
    op_a = OperatorSpec(Fraction(1, 2), Q, "a")
    op_b = OperatorSpec(Fraction(1, 2), Q, "b")
    assert apply_operator(apply_operator(f, op_a), op_b) == apply_operator(apply_operator(f, op_b), op_a)


def test_high_precision_path_agrees_with_double():
    f = lemma2_form(PUBLISHED_SECTION2.P2, PUBLISHED_SECTION2.P1, Fraction(4, 7))
    g = d_a(d_b(f))
    lo = eval_at(g, -1.023, -1.023)
    hi = eval_at(g, -1.023, -1.023, EvalConfig(digits=40))
    assert lo == pytest.approx(float(hi), rel=1e-14)


def test_float_coefficients_close_to_exact():
    f = d_a(lemma2_form(PUBLISHED_SECTION2.P1, PUBLISHED_SECTION2.P2, Fraction(4, 7)))
    exact = eval_at(f, -1.1, -0.9)
    fast = eval_at(f.to_float(), -1.1, -0.9, EvalConfig(exact=False))
    assert fast == pytest.approx(exact, rel=1e-11)
