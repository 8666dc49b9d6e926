"""Derivative-free search over R, delta and the polynomial coefficients.

Constraints are built into the parameterization: polynomial coefficients
go through :func:`~zlab.polyalg.p_basis` / :func:`~zlab.polyalg.q_basis`,
so every point of the search space decodes to admissible polynomials.
``R`` and ``delta`` are clamped to their boxes.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .exceptions import InvalidParams, ZlabError
from .expform import DOUBLE, EvalConfig
from .meanvalue import THETA_MAX, EtaSpec, MollifierPair, section2_mean, section3_mean
from .polyalg import p_basis, q_basis, to_rat
from .proportions import distinct_bound, ng_bound, xi_critical_bound

log = logging.getLogger(__name__)

TARGETS = ("section2", "section3", "combined")
# +1: minimize the proportion, -1: maximize it
SENSE = {"section2": 1.0, "section3": -1.0, "combined": -1.0}

DEFAULT_CAPS = {"P1": 4, "P2": 4, "P": 4, "Q": 4}


@dataclass(frozen=True)
class Layout:
    """How many free coefficients each polynomial block carries."""

    P1: int = 2
    P2: int = 3
    P: int = 3
    Q: int = 3


@dataclass
class SearchSpace:
    target: str
    layout: Layout = field(default_factory=Layout)
    p_degrees: dict[str, int] = field(default_factory=lambda: dict(DEFAULT_CAPS))
    r_range: tuple[float, float] = (0.1, 3.0)
    delta_range: tuple[float, float] = (0.01, 0.99)
    theta: Fraction = THETA_MAX

    def __post_init__(self):
        if self.target not in TARGETS:
            raise ValueError(f"target must be one of {TARGETS}, got {self.target!r}")
        for lo, hi in (self.r_range, self.delta_range):
            if not 0 < lo < hi:
                raise ValueError(f"ranges must be positive and ordered, got ({lo}, {hi})")
        if self.delta_range[1] >= 1:
            raise ValueError("delta range must stay below 1")
        for name in ("P1", "P2", "P", "Q"):
            n = getattr(self.layout, name)
            if n < 1 or n > self.p_degrees.get(name, n):
                raise ValueError(f"{name} block has {n} coefficients, cap is {self.p_degrees.get(name)}")
        self.theta = to_rat(self.theta)

    def labels(self) -> list[str]:
        s2 = ["R"] + [f"P1.{k}" for k in range(self.layout.P1)] + [f"P2.{k}" for k in range(self.layout.P2)]
        s3 = (["R", "delta"] + [f"P.{k}" for k in range(self.layout.P)]
              + [f"Q.{k}" for k in range(self.layout.Q)])
        if self.target == "section2":
            return s2
        if self.target == "section3":
            return s3
        return [f"section2.{x}" for x in s2] + [f"section3.{x}" for x in s3]

    @property
    def dim(self) -> int:
        return len(self.labels())


def _clamp(x: float, box: tuple[float, float]) -> float:
    return min(max(x, box[0]), box[1])


def _split(space: SearchSpace, params: Sequence[float]):
    n2 = 1 + space.layout.P1 + space.layout.P2
    if space.target == "section2":
        return list(params), None
    if space.target == "section3":
        return None, list(params)
    return list(params[:n2]), list(params[n2:])


def clamp_params(space: SearchSpace, params: Sequence[float]) -> list[float]:
    """Project ``params`` onto the R/delta boxes; coefficients are untouched."""
    if len(params) != space.dim:
        raise InvalidParams(f"expected {space.dim} parameters, got {len(params)}")
    out = [float(x) for x in params]
    labels = space.labels()
    for i, lab in enumerate(labels):
        if lab.endswith("R"):
            out[i] = _clamp(out[i], space.r_range)
        elif lab.endswith("delta"):
            out[i] = _clamp(out[i], space.delta_range)
    return out


def decode(space: SearchSpace, params: Sequence[float]) -> tuple[MollifierPair | None, EtaSpec | None]:
    """Turn a (clamped) parameter vector into validated specs."""
    params = clamp_params(space, params)
    if not all(math.isfinite(x) for x in params):
        raise InvalidParams(f"non-finite parameter in {params}")
    b2, b3 = _split(space, params)
    lay = space.layout
    pair = eta = None
    try:
        if b2 is not None:
            c1 = b2[1:1 + lay.P1]
            c2 = b2[1 + lay.P1:]
            pair = MollifierPair(space.theta, to_rat(b2[0]),
                                 p_basis("section2-P1", [to_rat(c) for c in c1]),
                                 p_basis("section2-P2", [to_rat(c) for c in c2])).validate()
        if b3 is not None:
            cp = b3[2:2 + lay.P]
            dq = b3[2 + lay.P:]
            eta = EtaSpec(space.theta, to_rat(b3[0]), to_rat(b3[1]),
                          p_basis("section3-P", [to_rat(c) for c in cp]),
                          q_basis([to_rat(d) for d in dq])).validate()
    except ValueError as exc:
        raise InvalidParams(str(exc)) from exc
    return pair, eta


def encode(space: SearchSpace, pair_coeffs: dict | None = None, eta_coeffs: dict | None = None) -> list[float]:
    """Build a parameter vector from coefficient dicts.

    ``pair_coeffs`` has keys ``R``, ``P1``, ``P2``; ``eta_coeffs`` has
    ``R``, ``delta``, ``P``, ``Q`` (coefficient lists in basis form).
    """
    vec: list[float] = []
    if space.target in ("section2", "combined"):
        if pair_coeffs is None:
            raise InvalidParams("section2 coefficients are required")
        vec += [float(pair_coeffs["R"])] + [float(c) for c in pair_coeffs["P1"]] + [float(c) for c in pair_coeffs["P2"]]
    if space.target in ("section3", "combined"):
        if eta_coeffs is None:
            raise InvalidParams("section3 coefficients are required")
        vec += ([float(eta_coeffs["R"]), float(eta_coeffs["delta"])]
                + [float(c) for c in eta_coeffs["P"]] + [float(c) for c in eta_coeffs["Q"]])
    if len(vec) != space.dim:
        raise InvalidParams(f"coefficient lists give {len(vec)} parameters, layout expects {space.dim}")
    return vec


FAST = EvalConfig(exact=False)


def objective(space: SearchSpace, params: Sequence[float], config: EvalConfig = FAST) -> float:
    """The proportion the target optimizes, in its natural direction.

    section2 -> upper bound on zeros of G (minimize); section3 -> lower
    bound for xi' zeros on the line (maximize); combined -> distinct-zero
    proportion (maximize), the two blocks being independent.

    Defaults to float-coefficient evaluation; pass ``DOUBLE`` for the exact
    symbolic path.
    """
    pair, eta = decode(space, params)
    kG = kc = None
    if pair is not None:
        kG = ng_bound(section2_mean(pair, config, check=False), pair.R)
    if eta is not None:
        kc = xi_critical_bound(section3_mean(eta, config, check=False), eta.R)
    if space.target == "section2":
        return kG
    if space.target == "section3":
        return kc
    return distinct_bound(kc, kG)


@dataclass
class NMOptions:
    """Nelder-Mead settings.

    ``budget`` counts objective evaluations after the one at ``start``.
    """

    budget: int = 100_000
    fatol: float = 1e-9
    xatol: float = 1e-8
    step: float = 0.05
    alpha: float = 1.0
    gamma: float = 2.0
    rho: float = 0.5
    sigma: float = 0.5
    restarts: int = 0
    perturb: float = 0.02
    seed: int = 0


@dataclass
class OptResult:
    labels: list[str]
    best_params: list[float]
    best_value: float
    start_value: float
    n_evals: int
    trace: list[tuple[int, float]] = field(default_factory=list)
    converged: bool = False

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.labels, self.best_params))


def nelder_mead(func: Callable[[np.ndarray], float], x0: Sequence[float], budget: int,
                opts: NMOptions, on_eval: Callable[[np.ndarray, float], None] | None = None):
    """Minimize ``func`` from ``x0`` with at most ``budget`` evaluations.

    Returns ``(x_best, f_best, n_evals, converged)``; ``x0`` itself is not
    evaluated here.
    """
    x0 = np.asarray(x0, dtype=float)
    n = x0.size
    evals = 0

    def f(x):
        nonlocal evals
        evals += 1
        v = func(x)
        if on_eval is not None:
            on_eval(x, v)
        return v

    if budget <= 0 or n == 0:
        return x0, math.inf, 0, False

    simplex = [x0]
    for i in range(n):
        x = x0.copy()
        x[i] += opts.step * abs(x[i]) if x[i] != 0 else opts.step
        simplex.append(x)
    values = [f(simplex[0])]
    for x in simplex[1:]:
        if evals >= budget:
            break
        values.append(f(x))
    if len(values) < n + 1:
        i = int(np.argmin(values))
        return simplex[i], values[i], evals, False

    simplex = np.array(simplex)
    values = np.array(values)
    converged = False
    while evals < budget:
        order = np.argsort(values, kind="stable")
        simplex, values = simplex[order], values[order]
        # values alone can tie on a simplex straddling the optimum
        if (values[-1] - values[0] < opts.fatol
                and np.max(np.abs(simplex[1:] - simplex[0])) <= opts.xatol):
            converged = True
            break
        centroid = simplex[:-1].mean(axis=0)
        worst = simplex[-1]
        xr = centroid + opts.alpha * (centroid - worst)
        fr = f(xr)
        if values[0] <= fr < values[-2]:
            simplex[-1], values[-1] = xr, fr
            continue
        if fr < values[0]:
            if evals >= budget:
                simplex[-1], values[-1] = xr, fr
                break
            xe = centroid + opts.gamma * (xr - centroid)
            fe = f(xe)
            if fe < fr:
                simplex[-1], values[-1] = xe, fe
            else:
                simplex[-1], values[-1] = xr, fr
            continue
        if evals >= budget:
            break
        if fr < values[-1]:
            xc = centroid + opts.rho * (xr - centroid)
            fc = f(xc)
            if fc <= fr:
                simplex[-1], values[-1] = xc, fc
                continue
        else:
            xc = centroid + opts.rho * (worst - centroid)
            fc = f(xc)
            if fc < values[-1]:
                simplex[-1], values[-1] = xc, fc
                continue
        for i in range(1, n + 1):
            if evals >= budget:
                break
            simplex[i] = simplex[0] + opts.sigma * (simplex[i] - simplex[0])
            values[i] = f(simplex[i])
    i = int(np.argmin(values))
    return simplex[i], float(values[i]), evals, converged


def run_nelder_mead(space: SearchSpace, start: Sequence[float],
                    opts: NMOptions | None = None) -> OptResult:
    """Optimize ``space.target`` from ``start``.

    Restarts (``opts.restarts``) begin from the incumbent plus a Gaussian
    perturbation drawn from ``numpy.random.default_rng(opts.seed)``, so the
    whole run is reproducible.
    """
    opts = opts or NMOptions()
    sense = SENSE[space.target]
    start = clamp_params(space, start)
    start_value = objective(space, start)
    best = {"x": list(start), "v": start_value}
    trace: list[tuple[int, float]] = [(0, start_value)]
    count = 0

    def signed(x) -> float:
        x = clamp_params(space, x)
        try:
            return sense * objective(space, x)
        except ZlabError:
            return math.inf

    def on_eval(x, v):
        nonlocal count
        count += 1
        if v < sense * best["v"]:
            best["x"] = clamp_params(space, x)
            best["v"] = sense * v
            trace.append((count, best["v"]))

    rng = np.random.default_rng(opts.seed)
    x = np.asarray(start, dtype=float)
    converged = False
    for attempt in range(opts.restarts + 1):
        remaining = opts.budget - count
        if remaining <= 0:
            break
        if attempt:
            scale = np.maximum(np.abs(best["x"]), 1.0)
            x = np.asarray(best["x"]) + opts.perturb * scale * rng.standard_normal(len(best["x"]))
        _, _, _, converged = nelder_mead(signed, x, remaining, opts, on_eval)
        log.info("nelder-mead pass %d: %d evals, best %.12f", attempt, count, best["v"])
    return OptResult(
        labels=space.labels(),
        best_params=best["x"],
        best_value=best["v"],
        start_value=start_value,
        n_evals=count,
        trace=trace,
        converged=converged,
    )
