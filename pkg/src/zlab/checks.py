"""Property suites behind ``zlab verify``.

Each suite returns :class:`Row` records (one per case) so the CLI can
write them as CSV and derive its exit code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .expform import BiPoly, EvalConfig, ExpRatForm, d_a, d_b, eval_at, sigma_bipoly
from .meanvalue import PUBLISHED_SECTION2, PUBLISHED_SECTION3, MollifierPair, section2_mean
from .polyalg import RatPoly, p_basis


@dataclass
class Row:
    name: str
    computed: float
    expected: float
    tolerance: float
    passed: bool

    def as_list(self) -> list:
        return [self.name, repr(float(self.computed)), repr(float(self.expected)),
                repr(float(self.tolerance)), "PASS" if self.passed else "FAIL"]


CSV_HEADER = ["name", "computed", "expected", "tolerance", "pass"]


def simpson(f, lo: float, hi: float, panels: int) -> float:
    """Composite Simpson rule with ``panels`` (even) sub-intervals."""
    if panels % 2:
        panels += 1
    x = np.linspace(lo, hi, panels + 1)
    w = np.ones(panels + 1)
    w[1:-1:2] = 4
    w[2:-1:2] = 2
    return float(np.dot(w, f(x)) * (hi - lo) / (3 * panels))


def sigma_quadrature(Pi: RatPoly, Pj: RatPoly, theta, a: float, b: float,
                     panels: int = 10_000) -> float:
    """``int_0^1 (Pi' + a theta Pi)(Pj' + b theta Pj) dx`` by Simpson."""
    th = float(theta)
    ci = np.array(Pi.to_floats()[::-1] or [0.0])
    cj = np.array(Pj.to_floats()[::-1] or [0.0])
    dci, dcj = np.polyder(ci), np.polyder(cj)

    def integrand(x):
        return ((np.polyval(dci, x) + a * th * np.polyval(ci, x))
                * (np.polyval(dcj, x) + b * th * np.polyval(cj, x)))

    return simpson(integrand, 0.0, 1.0, panels)


def suite_sigma_quadrature(seed: int = 0, cases: int = 10, tol: float = 1e-10) -> list[Row]:
    rng = np.random.default_rng(seed)
    polys = [PUBLISHED_SECTION2.P1, PUBLISHED_SECTION2.P2, PUBLISHED_SECTION3.P]
    rows = []
    for i in range(cases):
        Pi = polys[i % 3]
        Pj = polys[(i + 1) % 3]
        a, b = rng.uniform(-2, 2, size=2)
        sym = sigma_bipoly(Pi, Pj, Fraction(4, 7))(Fraction(a), Fraction(b))
        quad = sigma_quadrature(Pi, Pj, Fraction(4, 7), a, b)
        err = abs(float(sym) - quad)
        rows.append(Row(f"sigma[{i}] a={a:.4f} b={b:.4f}", float(sym), quad, tol, err <= tol))
    return rows


def random_bipoly(rng: np.random.Generator, max_deg: int = 2) -> BiPoly:
    terms = {}
    for i in range(max_deg + 1):
        for j in range(max_deg + 1 - i):
            if rng.random() < 0.6:
                terms[(i, j)] = Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 5)))
    return BiPoly(terms)


def random_expratform(rng: np.random.Generator, max_order: int = 3) -> ExpRatForm:
    terms = {}
    for k in range(max_order + 1):
        if k == 1 or rng.random() < 0.5:
            terms[k] = (random_bipoly(rng), random_bipoly(rng))
    f = ExpRatForm(terms)
    return f if not f.is_zero() else ExpRatForm({1: (BiPoly.const(Fraction(1)), BiPoly())})


def random_point(rng: np.random.Generator, min_gap: float = 0.5) -> tuple[float, float]:
    while True:
        a, b = rng.uniform(-2, 2, size=2)
        if abs(a + b) > min_gap:
            return float(a), float(b)


def suite_expform_derivatives(seed: int = 0, cases: int = 20, h: float = 1e-6,
                              tol: float = 1e-6) -> list[Row]:
    """d_a against central differences, plus structural mixed-partial checks.

    The differences are taken in 30-digit arithmetic so that the remaining
    error is the O(h^2) truncation, not cancellation.
    """
    rng = np.random.default_rng(seed)
    hp = EvalConfig(digits=30)
    rows = []
    for i in range(cases):
        f = random_expratform(rng)
        a, b = random_point(rng)
        exact = float(eval_at(d_a(f), a, b, hp))
        with mpmath.workdps(30):
            fd = float((eval_at(f, Fraction(a) + Fraction(h), b, hp)
                        - eval_at(f, Fraction(a) - Fraction(h), b, hp)) / (2 * h))
        rel = abs(fd - exact) / max(abs(exact), 1e-300)
        rows.append(Row(f"d_a finite-difference[{i}]", exact, fd, tol, rel <= tol))
        commute = d_a(d_b(f)) == d_b(d_a(f))
        rows.append(Row(f"mixed partials commute[{i}]", float(commute), 1.0, 0.0, commute))
    return rows


def suite_functional_equation(seed: int = 0, cases: int = 20) -> list[Row]:
    from .numverify.xi import xi, xi_prime

    rng = np.random.default_rng(seed)
    sig = rng.uniform(0.0, 1.0, cases)
    sig = np.clip(sig, 1e-3, 1 - 1e-3)
    t = rng.uniform(10, 100, cases)
    s = sig + 1j * t
    x, xr = xi(s), xi(1 - s)
    dx, dxr = xi_prime(s), xi_prime(1 - s)
    rows = []
    for i in range(cases):
        r1 = abs(x[i] - xr[i]) / abs(x[i])
        r2 = abs(dx[i] + dxr[i]) / abs(dx[i])
        rows.append(Row(f"xi(s)=xi(1-s) s={s[i]:.4f}", r1, 0.0, 1e-8, r1 < 1e-8))
        rows.append(Row(f"xi'(s)=-xi'(1-s) s={s[i]:.4f}", r2, 0.0, 1e-7, r2 < 1e-7))
    return rows


def moment_prediction(theta, R) -> float:
    """Symbolic value the desk-scale moment is compared with (P1 = x, P2 = 0)."""
    pair = MollifierPair(theta, R, RatPoly.x(), RatPoly())
    return float(section2_mean(pair).c)


def suite_moment(T: float = 5000.0, w: float = 7500.0, delta_exp: float = 0.3,
                 theta="0.2", R="1.023", band: tuple[float, float] = (0.7, 1.3),
                 workers: int = 1) -> list[Row]:
    from .numverify.moment import MomentSpec, smoothed_moment

    pair = MollifierPair(theta, R, p_basis("section2-P1", []), RatPoly())
    spec = MomentSpec(T=T, w=w, delta_exp=delta_exp, pair=pair)
    value = smoothed_moment(spec, workers=workers).value
    pred = moment_prediction(theta, R)
    ratio = value / pred
    tol = (band[1] - band[0]) / 2
    return [
        Row("smoothed moment", value, pred, math.nan, True),
        Row(f"moment/prediction in [{band[0]}, {band[1]}]", ratio, 1.0, tol,
            band[0] <= ratio <= band[1]),
    ]


def suite_zero_count(T: float = 100.0, slack: float = 3.0, xi_floor: float = 0.85) -> list[Row]:
    from .numverify.zeros import count_zeros_zeta, riemann_vonmangoldt, xi_prime_critical_sign_changes

    n = count_zeros_zeta(T)
    smooth = riemann_vonmangoldt(T)
    m = xi_prime_critical_sign_changes(T)
    return [
        Row(f"zeta zeros on line, t<={T:g}", n, smooth, slack, abs(n - smooth) <= slack),
        Row(f"xi' sign changes, t<={T:g}", m, xi_floor * n, 0.0, m >= xi_floor * n),
    ]


SUITES = {
    "sigma-quadrature": suite_sigma_quadrature,
    "expform-derivatives": suite_expform_derivatives,
    "functional-equation": suite_functional_equation,
    "moment": suite_moment,
    "zero-count": suite_zero_count,
}
