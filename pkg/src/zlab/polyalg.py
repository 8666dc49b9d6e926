"""Exact univariate polynomials over the rationals.

Coefficients are :class:`fractions.Fraction` values, lowest power first.
Decimal literals such as ``"0.064"`` are read as exact rationals
(``8/125``), so the symbolic layers downstream never round.

The constrained bases used for the mollifier polynomials live here too:

* ``p_basis("section2-P1", c)`` and ``p_basis("section3-P", c)`` return
  ``x + x(1-x) * sum_k c_k x^k`` (value 0 at 0, value 1 at 1);
* ``p_basis("section2-P2", c)`` returns ``x * sum_k c_k x^k`` (value 0 at 0);
* ``q_basis(d)`` returns ``1 + int_0^x sum_k d_k (u(1-u))^k du``, whose
  derivative is symmetric about 1/2.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

Rat = Fraction
RatLike = Union[Fraction, int, str, float]

P_KINDS = ("section2-P1", "section2-P2", "section3-P")


def to_rat(value: RatLike) -> Fraction:
    """Convert ``value`` to an exact rational.

    Strings go through :class:`Fraction` directly, so ``"1.023"`` becomes
    ``1023/1000`` exactly. Floats are converted through their shortest
    ``repr``, which keeps ``0.1`` as ``1/10`` rather than the binary
    neighbour.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


class RatPoly:
    """Immutable polynomial with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RatLike] = ()):
        cs = [to_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def x(cls) -> "RatPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c: RatLike) -> "RatPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        return poly_eval(self, x)

    def __eq__(self, other):
        if isinstance(other, RatPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == RatPoly((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RatPoly([{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' if mono else ''}{mono}"
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __neg__(self):
        return RatPoly(-c for c in self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RatPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        out = RatPoly((1,))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def compose(self, inner: "RatPoly") -> "RatPoly":
        """Return ``self(inner(x))`` (Horner in polynomial arithmetic)."""
        out = RatPoly()
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out

    def derive(self) -> "RatPoly":
        return poly_derive(self)

    def antiderivative(self) -> "RatPoly":
        """Antiderivative vanishing at 0."""
        return RatPoly([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def to_floats(self) -> list[float]:
        return [float(c) for c in self.coeffs]


def _as_poly(value) -> RatPoly | None:
    if isinstance(value, RatPoly):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return RatPoly((value,))
    return None


def poly_eval(p: RatPoly, x):
    """Evaluate ``p`` at ``x`` by Horner's rule.

    Exact when ``x`` is an int or Fraction; otherwise the coefficients are
    combined in ``x``'s own arithmetic (float, complex, mpmath, numpy arrays).
    """
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        acc = Fraction(0)
        for c in reversed(p.coeffs):
            acc = acc * x + c
        return acc
    acc = 0 * x
    for c in reversed(p.coeffs):
        acc = acc * x + float(c)
    return acc


def poly_derive(p: RatPoly) -> RatPoly:
    """Formal derivative."""
    return RatPoly(i * c for i, c in enumerate(p.coeffs) if i > 0)


def integrate01(p: RatPoly) -> Fraction:
    """Exact integral of ``p`` over ``[0, 1]``."""
    return sum((c / (i + 1) for i, c in enumerate(p.coeffs)), Fraction(0))


def p_basis(kind: str, c: Sequence[RatLike]) -> RatPoly:
    """Build a mollifier polynomial from its free coefficients.

    An empty ``c`` is read as ``(0,)``.
    """
    if kind not in P_KINDS:
        raise ValueError(f"unknown basis kind {kind!r}; expected one of {P_KINDS}")
    inner = RatPoly(c)
    x = RatPoly.x()
    if kind == "section2-P2":
        return x * inner
    return x + x * (1 - x) * inner


def q_basis(d: Sequence[RatLike]) -> RatPoly:
    """Build ``Q`` with ``Q(0) = 1`` and ``Q'(x) = Q'(1 - x)``."""
    x = RatPoly.x()
    w = x * (1 - x)
    deriv = RatPoly()
    for k, dk in enumerate(d):
        deriv = deriv + to_rat(dk) * w**k
    return 1 + deriv.antiderivative()


def reflect(p: RatPoly) -> RatPoly:
    """Return ``p(1 - x)``."""
    return p.compose(RatPoly((1, -1)))
