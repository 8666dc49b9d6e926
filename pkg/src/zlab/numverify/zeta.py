"""zeta(s) and zeta'(s) by Euler-Maclaurin summation.

    zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
              + sum_{k=1}^{m} B_2k/(2k)! s(s+1)...(s+2k-2) N^(-s-2k+1)

The derivative is the exact term-wise derivative of the same expression.
Everything is vectorized over an array of points; large batches are split
into blocks so the (points x terms) work array stays bounded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from ..exceptions import NearPole

# B_2, B_4, ..., B_16
_BERNOULLI = [Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
              Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510)]
_BLOCK = 1 << 21


def default_terms(t: float) -> int:
    return math.ceil(1.2 * abs(t)) + 30


@dataclass(frozen=True)
class ZetaConfig:
    em_terms: Callable[[float], int] = default_terms
    bernoulli_order: int = 6
    target_abs_error: float = 1e-10

    def __post_init__(self):
        if not 0 <= self.bernoulli_order <= len(_BERNOULLI):
            raise ValueError(f"bernoulli_order must be in [0, {len(_BERNOULLI)}]")


DEFAULT_ZETA = ZetaConfig()


def _coeffs(m: int) -> list[float]:
    return [float(_BERNOULLI[k - 1] / math.factorial(2 * k)) for k in range(1, m + 1)]


def _tail_bound(s: np.ndarray, N: int, m: int) -> float:
    """Size of the first omitted correction term, a practical error estimate."""
    k = m + 1
    if k > len(_BERNOULLI):
        k = len(_BERNOULLI)
    c = abs(float(_BERNOULLI[k - 1])) / math.factorial(2 * k)
    poly = np.ones_like(s)
    for j in range(2 * k - 1):
        poly = poly * (s + j)
    return float(np.max(c * np.abs(poly) * N ** (-(s.real + 2 * k - 1))))


def _choose_N(s: np.ndarray, cfg: ZetaConfig) -> int:
    N = cfg.em_terms(float(np.max(np.abs(s.imag))))
    N = max(N, 2)
    for _ in range(40):
        if _tail_bound(s, N, cfg.bernoulli_order) <= cfg.target_abs_error:
            break
        N = int(N * 1.5) + 1
    return N


def _em_block(s: np.ndarray, cfg: ZetaConfig, derivative: bool):
    N = _choose_N(s, cfg)
    n = np.arange(1, N, dtype=float)
    logn = np.log(n)
    z = np.zeros_like(s)
    dz = np.zeros_like(s)
    rows = max(1, _BLOCK // max(N, 1))
    for lo in range(0, s.size, rows):
        sb = s[lo:lo + rows]
        powers = np.exp(-np.outer(sb, logn))
        z[lo:lo + rows] = powers.sum(axis=1)
        if derivative:
            dz[lo:lo + rows] = -(powers @ logn)
    logN = math.log(N)
    NmS = np.exp(-s * logN)  # N^-s
    z += N * NmS / (s - 1) + NmS / 2
    if derivative:
        dz += -logN * N * NmS / (s - 1) - N * NmS / (s - 1) ** 2 - logN * NmS / 2
    poly = s.copy()      # s(s+1)...(s+2k-2)
    dpoly = np.ones_like(s)
    power = NmS / N      # N^(-s-1)
    for k, c in enumerate(_coeffs(cfg.bernoulli_order), start=1):
        if k > 1:
            for j in (2 * k - 3, 2 * k - 2):
                dpoly = dpoly * (s + j) + poly
                poly = poly * (s + j)
            power = power / (N * N)
        z += c * poly * power
        if derivative:
            dz += c * (dpoly - poly * logN) * power
    return z, dz


def _prepare(s) -> tuple[np.ndarray, bool]:
    arr = np.asarray(s, dtype=complex)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr).ravel()
    if np.any(np.abs(arr - 1) < 1e-6):
        raise NearPole("zeta has a pole at s = 1")
    return arr, scalar


def _evaluate(s, cfg: ZetaConfig, derivative: bool):
    arr, scalar = _prepare(s)
    z = np.empty_like(arr)
    dz = np.empty_like(arr)
    # bucket points whose own term counts agree within 25% so N tracks |t|
    heights = np.abs(arr.imag)
    own = np.array([cfg.em_terms(h) for h in heights], dtype=float)
    buckets = np.ceil(np.log(np.maximum(own, 2)) / math.log(1.25)).astype(int)
    for key in np.unique(buckets):
        idx = np.nonzero(buckets == key)[0]
        z[idx], dz[idx] = _em_block(arr[idx], cfg, derivative)
    if scalar:
        return z[0], dz[0]
    shape = np.shape(s)
    return z.reshape(shape), dz.reshape(shape)


def zeta_em(s, cfg: ZetaConfig = DEFAULT_ZETA):
    """zeta(s); ``s`` may be a scalar or an array."""
    return _evaluate(s, cfg, derivative=False)[0]


def zeta_prime_em(s, cfg: ZetaConfig = DEFAULT_ZETA):
    """zeta'(s); ``s`` may be a scalar or an array."""
    return _evaluate(s, cfg, derivative=True)[1]


def zeta_and_prime(s, cfg: ZetaConfig = DEFAULT_ZETA):
    """``(zeta(s), zeta'(s))`` sharing one pass over the Dirichlet terms."""
    return _evaluate(s, cfg, derivative=True)
