"""The two limiting mean-value constants.

``section2_mean`` handles the mollified ``G = zeta psi_1 + zeta' psi_2``:
four bilinear pieces, the ``zeta'`` factors becoming ``d/da`` or ``d/db``.
``section3_mean`` handles the mollified approximation to ``xi'``: the
operator ``1 - delta + delta (1 + 2 D) Q(-D)`` is applied in each variable
to the single quotient built from ``P``.

Both are evaluated at ``a = b = -R``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .expform import (
    DOUBLE,
    EvalConfig,
    ExpRatForm,
    OperatorSpec,
    apply_operator,
    d_a,
    d_b,
    eval_at,
    lemma2_form,
)
from .polyalg import RatPoly, p_basis, poly_derive, q_basis, reflect, to_rat

THETA_MAX = Fraction(4, 7)


def _check_theta_R(theta: Fraction, R: Fraction) -> None:
    if not 0 < theta <= THETA_MAX:
        raise ValueError(f"theta must lie in (0, 4/7], got {theta}")
    if R <= 0:
        raise ValueError(f"R must be positive, got {R}")


@dataclass(frozen=True)
class MollifierPair:
    """Parameters of the mollified ``G`` (mollifier length ``y = T**theta``)."""

    theta: Fraction
    R: Fraction
    P1: RatPoly
    P2: RatPoly

    def __post_init__(self):
        object.__setattr__(self, "theta", to_rat(self.theta))
        object.__setattr__(self, "R", to_rat(self.R))

    def validate(self) -> "MollifierPair":
        _check_theta_R(self.theta, self.R)
        if self.P1(0) != 0 or self.P2(0) != 0:
            raise ValueError("P1(0) and P2(0) must both be 0")
        if self.P1(1) != 1:
            raise ValueError(f"P1(1) must be 1, got {self.P1(1)}")
        return self


@dataclass(frozen=True)
class EtaSpec:
    """Parameters of the mollified ``xi'`` combination."""

    theta: Fraction
    R: Fraction
    delta: Fraction
    P: RatPoly
    Q: RatPoly

    def __post_init__(self):
        for name in ("theta", "R", "delta"):
            object.__setattr__(self, name, to_rat(getattr(self, name)))

    def validate(self) -> "EtaSpec":
        _check_theta_R(self.theta, self.R)
        if not 0 < self.delta < 1:
            raise ValueError(f"delta must lie in (0, 1), got {self.delta}")
        if self.P(0) != 0 or self.P(1) != 1:
            raise ValueError("P must satisfy P(0) = 0 and P(1) = 1")
        if self.Q(0) != 1:
            raise ValueError(f"Q(0) must be 1, got {self.Q(0)}")
        dQ = poly_derive(self.Q)
        if dQ != reflect(dQ):
            raise ValueError("Q' must satisfy Q'(x) = Q'(1 - x)")
        return self


@dataclass
class MeanValue:
    c: float
    breakdown: list[tuple[str, float]] = field(default_factory=list)


def _quotient(Pi: RatPoly, Pj: RatPoly, theta: Fraction, exact: bool) -> ExpRatForm:
    f = lemma2_form(Pi, Pj, theta)
    return f if exact else f.to_float()


def section2_forms(m: MollifierPair, exact: bool = True) -> list[tuple[str, ExpRatForm]]:
    """The four exp-rational pieces whose sum is the mean value of ``G``."""
    P1, P2, th = m.P1, m.P2, m.theta
    return [
        ("g(P1,P1)", _quotient(P1, P1, th, exact)),
        ("d_b g(P1,P2)", d_b(_quotient(P1, P2, th, exact))),
        ("d_a g(P2,P1)", d_a(_quotient(P2, P1, th, exact))),
        ("d_a d_b g(P2,P2)", d_a(d_b(_quotient(P2, P2, th, exact)))),
    ]


def section2_mean(m: MollifierPair, config: EvalConfig = DOUBLE, *,
                  check: bool = True) -> MeanValue:
    """Mean value of ``|G(sigma_0 + it)|^2`` in the limit, at ``a = b = -R``.

    ``check=False`` skips parameter validation, for degenerate test inputs.
    """
    if check:
        m.validate()
    point = -m.R
    breakdown = [(name, eval_at(f, point, point, config))
                 for name, f in section2_forms(m, config.exact)]
    if config.digits is None:
        c = math.fsum(v for _, v in breakdown)
    else:
        with mpmath.workdps(config.digits + 10):
            c = mpmath.fsum(v for _, v in breakdown)
    return MeanValue(c=c, breakdown=breakdown)


def section3_form(e: EtaSpec, first: str = "a", exact: bool = True) -> ExpRatForm:
    """The operator-sandwiched quotient; ``first`` picks which variable goes first."""
    F = _quotient(e.P, e.P, e.theta, exact)
    second = "b" if first == "a" else "a"
    F = apply_operator(F, OperatorSpec(e.delta, e.Q, first))
    return apply_operator(F, OperatorSpec(e.delta, e.Q, second))


def section3_mean(e: EtaSpec, config: EvalConfig = DOUBLE, *,
                  check: bool = True, first: str = "a") -> MeanValue:
    """Mean value of the mollified ``xi'`` approximation at ``a = b = -R``."""
    if check:
        e.validate()
    point = -e.R
    c = eval_at(section3_form(e, first, config.exact), point, point, config)
    return MeanValue(c=c, breakdown=[("operator(a,b) g(P,P)", c)])


PUBLISHED_SECTION2 = MollifierPair(
    theta=Fraction(4, 7),
    R="1.023",
    P1=p_basis("section2-P1", ["-0.064", "0.112"]),
    P2=p_basis("section2-P2", ["1.305", "-0.276", "-0.025"]),
)

PUBLISHED_SECTION3 = EtaSpec(
    theta=Fraction(4, 7),
    R="1.104",
    delta="0.869",
    P=p_basis("section3-P", ["-0.274", "-0.334", "0.005"]),
    Q=q_basis(["-0.609", "-0.572", "-4.895"]),
)
