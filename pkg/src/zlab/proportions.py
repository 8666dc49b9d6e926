"""Zero-proportion bounds from mean-value constants.

With ``N(T) ~ (T / 2 pi) log T`` the bounds from Littlewood's formula become
T-free ratios:

* ``ng_bound``: zeros of the mollified ``G`` right of the line, over N(T),
  at most ``log(c) / (2R)``;
* ``xi_critical_bound``: zeros of ``xi'`` on the line, over N(T), at least
  ``1 - log(c) / R``;
* ``distinct_bound``: distinct zeros of zeta, over N(T), at least
  ``1/2 + kappa_c / 2 - kappa_G``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .exceptions import NonPositiveMean
from .expform import DOUBLE, EvalConfig
from .meanvalue import (
    PUBLISHED_SECTION2,
    PUBLISHED_SECTION3,
    EtaSpec,
    MeanValue,
    MollifierPair,
    section2_mean,
    section3_mean,
)


def _log_c(c) -> float:
    value = c.c if isinstance(c, MeanValue) else c
    if not value > 0:
        raise NonPositiveMean(f"mean value must be positive, got {value}")
    return math.log(float(value))


def ng_bound(c: MeanValue | float, R) -> float:
    if not R > 0:
        raise ValueError("R must be positive")
    return _log_c(c) / (2 * float(R))


def xi_critical_bound(c: MeanValue | float, R) -> float:
    if not R > 0:
        raise ValueError("R must be positive")
    return 1.0 - _log_c(c) / float(R)


def distinct_bound(kappa_c: float, kappa_G: float) -> float:
    return 0.5 + kappa_c / 2 - kappa_G


@dataclass
class ProportionReport:
    kappa_G: float
    kappa_c: float
    kappa_d: float
    pair: MollifierPair
    eta: EtaSpec
    mean_values: dict[str, float] = field(default_factory=dict)
    provenance: dict[str, str] = field(default_factory=dict)


def proportion_report(pair: MollifierPair = PUBLISHED_SECTION2,
                      eta: EtaSpec = PUBLISHED_SECTION3,
                      config: EvalConfig = DOUBLE) -> ProportionReport:
    """Run both mean values through to the distinct-zero proportion."""
    c2 = section2_mean(pair, config)
    c3 = section3_mean(eta, config)
    kG = ng_bound(c2, pair.R)
    kc = xi_critical_bound(c3, eta.R)
    return ProportionReport(
        kappa_G=kG,
        kappa_c=kc,
        kappa_d=distinct_bound(kc, kG),
        pair=pair,
        eta=eta,
        mean_values={"section2": float(c2.c), "section3": float(c3.c)},
        provenance={
            "section2": "exact exp-rational form, four terms, evaluated at a=b=-R",
            "section3": "exact exp-rational form under the delta/Q operator in a and b",
            "kappa_G": "log(c2)/(2R)",
            "kappa_c": "1 - log(c3)/R",
            "kappa_d": "1/2 + kappa_c/2 - kappa_G",
        },
    )
