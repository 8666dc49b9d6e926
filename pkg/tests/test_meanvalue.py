import math
from fractions import Fraction

import pytest

from zlab.expform import EvalConfig, d_a, d_b, eval_at, lemma2_form
from zlab.meanvalue import (
    PUBLISHED_SECTION2,
    PUBLISHED_SECTION3,
    EtaSpec,
    MollifierPair,
    section2_mean,
    section3_mean,
)
from zlab.polyalg import RatPoly, q_basis

X = RatPoly.x()
TH = Fraction(4, 7)


def test_validation():
    with pytest.raises(ValueError):
        MollifierPair(TH, 1, RatPoly([0, 2]), RatPoly()).validate()
    with pytest.raises(ValueError):
        MollifierPair(Fraction(5, 7), 1, X, RatPoly()).validate()
    with pytest.raises(ValueError):
        EtaSpec(TH, 1, 1, X, RatPoly.const(1)).validate()
    with pytest.raises(ValueError):
        EtaSpec(TH, 1, "0.5", X, RatPoly([1, 1, 1])).validate()
    PUBLISHED_SECTION2.validate()
    PUBLISHED_SECTION3.validate()


def test_zero_p2_reduces_to_single_term():
    m = MollifierPair(TH, "1.023", X, RatPoly())
    mv = section2_mean(m)
    names = dict(mv.breakdown)
    assert names["d_b g(P1,P2)"] == 0
    assert names["d_a g(P2,P1)"] == 0
    assert names["d_a d_b g(P2,P2)"] == 0
    assert mv.c == pytest.approx(eval_at(lemma2_form(X, X, TH), -1.023, -1.023), rel=1e-15)


def test_small_theta_scaling():
    R = 1.023
    limit = (math.exp(2 * R) - 1) / (2 * R)
    ctheta = []
    for th in (Fraction(1, 100), Fraction(1, 1000)):
        c = section2_mean(MollifierPair(th, "1.023", X, RatPoly())).c
        ctheta.append(c * float(th))
    assert ctheta[1] == pytest.approx(limit, rel=2e-3)
    assert abs(ctheta[1] - limit) < abs(ctheta[0] - limit)


def test_cross_term_bilinear():
    m = PUBLISHED_SECTION2
    doubled = MollifierPair(m.theta, m.R, m.P1, m.P2 * RatPoly.const(2))
    t1 = dict(section2_mean(m).breakdown)
    t2 = dict(section2_mean(doubled, check=False).breakdown)
    assert t2["d_b g(P1,P2)"] == pytest.approx(2 * t1["d_b g(P1,P2)"], rel=1e-13)
    assert t2["d_a d_b g(P2,P2)"] == pytest.approx(4 * t1["d_a d_b g(P2,P2)"], rel=1e-13)


def test_cross_terms_symmetric_at_diagonal():
    # g(P2,P1)(a,b) = g(P1,P2)(b,a), so at a=b the two printed cross terms agree
    m = PUBLISHED_SECTION2
    r = -m.R
    g12, g21 = lemma2_form(m.P1, m.P2, TH), lemma2_form(m.P2, m.P1, TH)
    assert g21 == g12.swap()
    db12 = eval_at(d_b(g12), r, r)
    da21 = eval_at(d_a(g21), r, r)
    assert db12 == pytest.approx(da21, abs=1e-12)
    # the other assignment gives a different number, so a mix-up is visible
    assert abs(eval_at(d_a(g12), r, r) - db12) > 0.1


@pytest.mark.parametrize("which", ["section2", "section3"])
def test_continuity_in_R(which):
    base = PUBLISHED_SECTION2 if which == "section2" else PUBLISHED_SECTION3
    fn = section2_mean if which == "section2" else section3_mean
    bumped = type(base)(**{**base.__dict__, "R": base.R + Fraction(1, 10**6)})
    assert abs(fn(bumped).c - fn(base).c) <= 1e-3


def test_section3_delta_zero_is_section2_single_term():
    e = EtaSpec(TH, "1.104", 0, PUBLISHED_SECTION3.P, PUBLISHED_SECTION3.Q)
    c3 = section3_mean(e, check=False).c
    c2 = section2_mean(MollifierPair(TH, "1.104", PUBLISHED_SECTION3.P, RatPoly())).c
    assert c3 == pytest.approx(c2, rel=1e-14)


def test_operator_order_irrelevant():
    ca = section3_mean(PUBLISHED_SECTION3, first="a").c
    cb = section3_mean(PUBLISHED_SECTION3, first="b").c
    assert abs(ca - cb) < 1e-12


def test_published_values_close_to_inverted_bounds():
    assert section2_mean(PUBLISHED_SECTION2).c == pytest.approx(math.exp(2 * 1.023 * 0.27442), abs=2e-4)
    assert section3_mean(PUBLISHED_SECTION3).c == pytest.approx(math.exp(1.104 * (1 - 0.86957)), abs=2e-4)


def test_high_precision_matches_double():
    lo = section3_mean(PUBLISHED_SECTION3).c
    hi = section3_mean(PUBLISHED_SECTION3, EvalConfig(digits=30)).c
    assert lo == pytest.approx(float(hi), rel=1e-13)


def test_q_layout_with_extra_degree():
    e = EtaSpec(TH, "1.104", "0.869", PUBLISHED_SECTION3.P, q_basis(["-0.609", "-0.572", "-4.895", "0"]))
    assert section3_mean(e).c == section3_mean(PUBLISHED_SECTION3).c
