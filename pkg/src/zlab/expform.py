"""Exp-rational forms in two formal variables.

An :class:`ExpRatForm` is a finite sum

    scale * sum_k (p_k(a, b) + E * q_k(a, b)) / (a + b)**k,   E = exp(-(a + b)),

with :class:`BiPoly` numerators. The family is closed under ``d/da`` and
``d/db``:

    d/da [p / (a+b)^k]     = p_a / (a+b)^k - k p / (a+b)^(k+1)
    d/da [E q / (a+b)^k]   = E (q_a - q) / (a+b)^k - k E q / (a+b)^(k+1)

so high-order mixed partials of the mean-value quotient stay exact. Only
the final :func:`eval_at` touches floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import mpmath

from .exceptions import PoleProximity
from .polyalg import RatPoly, integrate01, poly_derive, to_rat

POLE_TOL = 1e-9

Monomial = tuple[int, int]


class BiPoly:
    """Sparse polynomial in ``a`` and ``b``; ``{(i, j): coeff}`` for ``a^i b^j``.

    Coefficients are normally Fractions but any numeric type closed under
    ``+`` and ``*`` works.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        self.terms: dict[Monomial, object] = {
            m: c for m, c in (terms or {}).items() if c != 0
        }

    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def a(cls) -> "BiPoly":
        return cls({(1, 0): Fraction(1)})

    @classmethod
    def b(cls) -> "BiPoly":
        return cls({(0, 1): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> tuple[int, int]:
        if not self.terms:
            return (-1, -1)
        return (max(i for i, _ in self.terms), max(j for _, j in self.terms))

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        body = " + ".join(
            f"{c}*a^{i}*b^{j}" for (i, j), c in sorted(self.terms.items())
        )
        return f"BiPoly({body or '0'})"

    def __neg__(self):
        return BiPoly({m: -c for m, c in self.terms.items()})

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return BiPoly(out)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other) -> "BiPoly":
        if not isinstance(other, BiPoly):
            return BiPoly({m: c * other for m, c in self.terms.items()})
        out: dict[Monomial, object] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return BiPoly(out)

    __rmul__ = __mul__

    def d_a(self) -> "BiPoly":
        return BiPoly({(i - 1, j): i * c for (i, j), c in self.terms.items() if i})

    def d_b(self) -> "BiPoly":
        return BiPoly({(i, j - 1): j * c for (i, j), c in self.terms.items() if j})

    def swap(self) -> "BiPoly":
        """Exchange the roles of ``a`` and ``b``."""
        return BiPoly({(j, i): c for (i, j), c in self.terms.items()})

    def negate_args(self) -> "BiPoly":
        """Return ``p(-a, -b)``."""
        return BiPoly({(i, j): c if (i + j) % 2 == 0 else -c
                       for (i, j), c in self.terms.items()})

    def __call__(self, a, b):
        """Evaluate; exact if ``a`` and ``b`` are Fractions."""
        acc = 0
        for (i, j), c in self.terms.items():
            acc += c * a**i * b**j
        return acc


def _apb_power(n: int) -> BiPoly:
    out = BiPoly.const(Fraction(1))
    apb = BiPoly({(1, 0): Fraction(1), (0, 1): Fraction(1)})
    for _ in range(n):
        out = out * apb
    return out


@dataclass(frozen=True)
class OperatorSpec:
    """``(1 - delta) + delta (1 + 2 D) Q(-D)`` with ``D`` = d/da or d/db."""

    delta: Fraction
    Q: RatPoly
    variable: str = "a"

    def __post_init__(self):
        if self.variable not in ("a", "b"):
            raise ValueError("variable must be 'a' or 'b'")
        object.__setattr__(self, "delta", to_rat(self.delta))


class ExpRatForm:
    """``scale * sum_k (p_k + E q_k) / (a+b)^k`` with ``E = exp(-(a+b))``."""

    __slots__ = ("terms", "scale")

    def __init__(self, terms: Mapping[int, tuple[BiPoly, BiPoly]] | None = None,
                 scale=Fraction(1)):
        clean = {}
        for k, (p, q) in (terms or {}).items():
            if k < 0:
                raise ValueError("pole orders must be non-negative")
            if not (p.is_zero() and q.is_zero()):
                clean[k] = (p, q)
        self.terms: dict[int, tuple[BiPoly, BiPoly]] = clean
        self.scale = scale

    @classmethod
    def polynomial(cls, p: BiPoly) -> "ExpRatForm":
        return cls({0: (p, BiPoly())})

    def is_zero(self) -> bool:
        return not self.terms or self.scale == 0

    def normalized(self) -> "ExpRatForm":
        """Same function with ``scale`` folded into the numerators."""
        if self.scale == 1:
            return self
        if self.scale == 0:
            return ExpRatForm()
        return ExpRatForm({k: (p * self.scale, q * self.scale)
                           for k, (p, q) in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, ExpRatForm):
            return NotImplemented
        return self.normalized().terms == other.normalized().terms

    def __repr__(self):
        return f"ExpRatForm(scale={self.scale}, terms={self.terms})"

    def max_order(self) -> int:
        return max(self.terms, default=0)

    def __add__(self, other: "ExpRatForm") -> "ExpRatForm":
        lhs, rhs = self.normalized(), other.normalized()
        out = dict(lhs.terms)
        for k, (p, q) in rhs.terms.items():
            if k in out:
                p0, q0 = out[k]
                out[k] = (p0 + p, q0 + q)
            else:
                out[k] = (p, q)
        return ExpRatForm(out)

    def __neg__(self):
        return ExpRatForm(self.terms, -self.scale)

    def __sub__(self, other: "ExpRatForm") -> "ExpRatForm":
        return self + (-other)

    def __mul__(self, c) -> "ExpRatForm":
        if isinstance(c, ExpRatForm):
            return NotImplemented
        return ExpRatForm(self.terms, self.scale * c)

    __rmul__ = __mul__

    def swap(self) -> "ExpRatForm":
        """Exchange ``a`` and ``b`` (E and a+b are symmetric)."""
        return ExpRatForm({k: (p.swap(), q.swap()) for k, (p, q) in self.terms.items()},
                          self.scale)

    def to_float(self) -> "ExpRatForm":
        """Copy with float coefficients, for fast approximate work."""
        f = self.normalized()
        return ExpRatForm({k: (BiPoly({m: float(c) for m, c in p.terms.items()}),
                               BiPoly({m: float(c) for m, c in q.terms.items()}))
                           for k, (p, q) in f.terms.items()}, 1.0)

    def times_apb(self, n: int) -> "ExpRatForm":
        """Multiply by ``(a+b)**n``; orders below zero fold into the numerators."""
        out: dict[int, tuple[BiPoly, BiPoly]] = {}
        for k, (p, q) in self.terms.items():
            if k < n:
                w = _apb_power(n - k)
                p, q = p * w, q * w
            key = max(k - n, 0)
            p0, q0 = out.get(key, (BiPoly(), BiPoly()))
            out[key] = (p0 + p, q0 + q)
        return ExpRatForm(out, self.scale)


def sigma_bipoly(Pi: RatPoly, Pj: RatPoly, theta) -> BiPoly:
    """``int_0^1 (Pi' + a theta Pi)(Pj' + b theta Pj) dx`` as a polynomial in a, b."""
    theta = to_rat(theta)
    dPi, dPj = poly_derive(Pi), poly_derive(Pj)
    return BiPoly({
        (0, 0): integrate01(dPi * dPj),
        (1, 0): theta * integrate01(Pi * dPj),
        (0, 1): theta * integrate01(dPi * Pj),
        (1, 1): theta * theta * integrate01(Pi * Pj),
    })


def lemma2_form(Pi: RatPoly, Pj: RatPoly, theta) -> ExpRatForm:
    """The main term of the shifted twisted second moment for the pair (Pi, Pj).

    Returns ``(S(b, a) - E * S(-a, -b)) / (theta (a + b))`` where ``S`` is
    :func:`sigma_bipoly`; note the swapped arguments in the first term.
    """
    theta = to_rat(theta)
    if theta <= 0:
        raise ValueError("theta must be positive")
    s = sigma_bipoly(Pi, Pj, theta)
    inv = 1 / theta
    return ExpRatForm({1: (s.swap() * inv, -(s.negate_args() * inv))})


def _deriv(f: ExpRatForm, var: str) -> ExpRatForm:
    out: dict[int, tuple[BiPoly, BiPoly]] = {}

    def acc(k, p, q):
        if k in out:
            p0, q0 = out[k]
            out[k] = (p0 + p, q0 + q)
        else:
            out[k] = (p, q)

    for k, (p, q) in f.terms.items():
        dp = p.d_a() if var == "a" else p.d_b()
        dq = q.d_a() if var == "a" else q.d_b()
        acc(k, dp, dq - q)
        if k:
            acc(k + 1, p * (-k), q * (-k))
    return ExpRatForm(out, f.scale)


def d_a(f: ExpRatForm) -> ExpRatForm:
    """Exact partial derivative in ``a``."""
    return _deriv(f, "a")


def d_b(f: ExpRatForm) -> ExpRatForm:
    """Exact partial derivative in ``b``."""
    return _deriv(f, "b")


def apply_operator(f: ExpRatForm, op: OperatorSpec) -> ExpRatForm:
    """Apply ``(1 - delta) + delta (1 + 2 D) Q(-D)`` to ``f``.

    ``Q(-D)`` is expanded monomially, ``sum_m q_m (-1)^m D^m``.
    """
    if op.delta == 0:
        return f
    deriv = d_a if op.variable == "a" else d_b
    qf = ExpRatForm()
    power = f
    for m, qm in enumerate(op.Q.coeffs):
        if m:
            power = deriv(power)
        if qm:
            qf = qf + power * (qm if m % 2 == 0 else -qm)
    inner = qf + deriv(qf) * 2
    return f * (1 - op.delta) + inner * op.delta


@dataclass(frozen=True)
class EvalConfig:
    """How :func:`eval_at` turns the exact form into a number.

    ``digits=None`` uses double precision; an integer selects an mpmath
    evaluation with that many significant digits and returns an ``mpf``.
    ``exact=False`` builds the forms with float coefficients (used inside
    the optimizer, roughly 10x faster, relative error around 1e-12).
    """

    digits: int | None = None
    exact: bool = True
    pole_tol: float = POLE_TOL


DOUBLE = EvalConfig()


def _exact(x):
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, mpmath.mpf):
        m, e = x.man_exp
        return Fraction(int(m) * 2**e) if e >= 0 else Fraction(int(m), 2**-e)
    raise TypeError(f"evaluation point must be real, got {type(x).__name__}")


def eval_at(f: ExpRatForm, a, b, config: EvalConfig = DOUBLE):
    """Evaluate ``f`` at real ``(a, b)``.

    The rational parts are summed exactly (floats are taken at their exact
    binary value); only ``exp(-(a+b))`` and the final combination are
    inexact.

    Raises:
        PoleProximity: if ``|a + b| < config.pole_tol`` and ``f`` has a
            nonzero part with a pole.
    """
    if f.is_zero():
        return mpmath.mpf(0) if config.digits else 0.0
    if not config.exact and config.digits is None:
        return _eval_float(f, float(a), float(b), config.pole_tol)
    ea, eb = _exact(a), _exact(b)
    s = ea + eb
    if any(k > 0 for k in f.terms) and abs(s) < config.pole_tol:
        raise PoleProximity(f"|a+b| = {float(abs(s)):.3g} is within {config.pole_tol} of the pole")
    rat_part = 0
    exp_part = 0
    for k, (p, q) in f.terms.items():
        denom = s**k
        rat_part += p(ea, eb) / denom if k else p(ea, eb)
        exp_part += q(ea, eb) / denom if k else q(ea, eb)
    scale = f.scale
    if config.digits is None:
        # the two parts cancel heavily near the pole; combine in extended precision
        with mpmath.workdps(30):
            return float(_mp(scale) * (_mp(rat_part) + mpmath.exp(-_mp(s)) * _mp(exp_part)))
    with mpmath.workdps(config.digits + 10):
        val = _mp(scale) * (_mp(rat_part) + mpmath.exp(-_mp(s)) * _mp(exp_part))
    # keep the extra precision; mpf values carry their own
    return val


def _eval_float(f: ExpRatForm, a: float, b: float, pole_tol: float) -> float:
    s = a + b
    if any(k > 0 for k in f.terms) and abs(s) < pole_tol:
        raise PoleProximity(f"|a+b| = {abs(s):.3g} is within {pole_tol} of the pole")
    rat_part = exp_part = 0.0
    for k, (p, q) in f.terms.items():
        denom = s**k
        rat_part += float(p(a, b)) / denom
        exp_part += float(q(a, b)) / denom
    return float(f.scale) * (rat_part + math.exp(-s) * exp_part)


def _mp(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)
