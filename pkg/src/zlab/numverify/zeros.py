"""Zero counting on the critical line by sign changes of real functions."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .xi import hardy_z, xi_prime_im_scaled
from .zeta import DEFAULT_ZETA, ZetaConfig

T_START = 10.0
GRID_STEP = 0.05
REFINE = 16


def _sign_changes(values: np.ndarray) -> int:
    sgn = np.sign(values)
    sgn = sgn[sgn != 0]
    return int(np.count_nonzero(sgn[1:] != sgn[:-1]))


def count_sign_changes(f: Callable[[np.ndarray], np.ndarray], lo: float, hi: float,
                       step: float = GRID_STEP, refine: int = REFINE) -> int:
    """Sign changes of ``f`` on ``[lo, hi]`` sampled every ``step``.

    Interior local minima of ``|f|`` with no sign change across the two
    adjacent cells are resampled ``refine`` times finer, which recovers
    close zero pairs the coarse grid steps over.
    """
    n = max(2, math.ceil((hi - lo) / step))
    t = np.linspace(lo, hi, n + 1)
    v = f(t)
    count = _sign_changes(v)
    a = np.abs(v)
    dips = np.nonzero((a[1:-1] <= a[:-2]) & (a[1:-1] <= a[2:]))[0] + 1
    same = np.sign(v[dips - 1]) == np.sign(v[dips + 1])
    same &= np.sign(v[dips]) == np.sign(v[dips - 1])
    for i in dips[same]:
        fine = np.linspace(t[i - 1], t[i + 1], 2 * refine + 1)
        count += _sign_changes(f(fine))
    return count


def riemann_vonmangoldt(T: float) -> float:
    """Smooth part of N(T): (T / 2pi) log(T / (2 pi e)) + 7/8."""
    return T / (2 * math.pi) * math.log(T / (2 * math.pi * math.e)) + 7 / 8


def count_zeros_zeta(T: float, step: float = GRID_STEP, cfg: ZetaConfig = DEFAULT_ZETA) -> int:
    """Zeros of zeta on the critical line with 10 <= t <= T (Hardy Z sign changes)."""
    if T < T_START:
        raise ValueError("T must be at least 10")
    return count_sign_changes(lambda t: hardy_z(t, cfg), T_START, T, step)


def xi_prime_critical_sign_changes(T: float, step: float = GRID_STEP,
                                   cfg: ZetaConfig = DEFAULT_ZETA) -> int:
    """Sign changes of Im xi'(1/2 + it) for 10 <= t <= T."""
    if T < T_START:
        raise ValueError("T must be at least 10")
    return count_sign_changes(lambda t: xi_prime_im_scaled(t, cfg), T_START, T, step)
