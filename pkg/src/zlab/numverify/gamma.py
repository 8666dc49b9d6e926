"""Complex log-gamma (Lanczos) and digamma, vectorized over numpy arrays."""

from __future__ import annotations

import numpy as np

# g = 7, n = 9 (Godfrey's coefficients); ~15 digits for Re z >= 1/2
_G = 7.0
_LANCZOS = np.array([
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
])
_HALF_LOG_2PI = 0.5 * np.log(2 * np.pi)
_LOG_PI = np.log(np.pi)

# B_{2k} / (2k) for the digamma asymptotic series, k = 1..8
_DIGAMMA_ASYM = np.array([
    1 / 6 / 2, -1 / 30 / 4, 1 / 42 / 6, -1 / 30 / 8,
    5 / 66 / 10, -691 / 2730 / 12, 7 / 6 / 14, -3617 / 510 / 16,
])


def _loggamma_right(z: np.ndarray) -> np.ndarray:
    z = z - 1
    x = np.full_like(z, _LANCZOS[0])
    for i in range(1, len(_LANCZOS)):
        x = x + _LANCZOS[i] / (z + i)
    t = z + _G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * np.log(t) - t + np.log(x)


def _log_sin_pi(z: np.ndarray) -> np.ndarray:
    """log(sin(pi z)) without overflow for large |Im z| (branch is arbitrary)."""
    out = np.empty_like(z)
    big = np.abs(z.imag) > 20
    small = ~big
    out[small] = np.log(np.sin(np.pi * z[small]))
    zb = z[big]
    # sin(pi z) = (e^{i pi z} - e^{-i pi z}) / 2i; keep the growing exponential
    up = zb.imag > 0
    w = np.where(up, -1j * np.pi * zb, 1j * np.pi * zb)
    small_part = np.exp(-2 * w)
    sign = np.where(up, -1.0, 1.0)
    out[big] = w + np.log(sign * (1 - small_part) / 2j)
    return out


def loggamma(z) -> np.ndarray:
    """log Gamma(z) for complex ``z`` (principal value up to a multiple of 2 pi i).

    Uses reflection for Re z < 1/2.
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.empty_like(z)
    left = z.real < 0.5
    out[~left] = _loggamma_right(z[~left])
    if left.any():
        zl = z[left]
        out[left] = _LOG_PI - _log_sin_pi(zl) - _loggamma_right(1 - zl)
    return out[0] if scalar else out


def digamma(z) -> np.ndarray:
    """psi(z) = Gamma'/Gamma for complex ``z`` off the poles."""
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z).copy()
    acc = np.zeros_like(z)
    left = z.real < 0.5
    if left.any():
        # psi(z) = psi(1 - z) - pi cot(pi z)
        acc[left] -= np.pi / np.tan(np.pi * z[left])
        z[left] = 1 - z[left]
    while True:
        near = np.abs(z) < 10
        if not near.any():
            break
        acc[near] -= 1 / z[near]
        z[near] += 1
    inv2 = 1 / (z * z)
    series = np.zeros_like(z)
    for c in _DIGAMMA_ASYM[::-1]:
        series = (series + c) * inv2
    out = acc + np.log(z) - 0.5 / z - series
    return out[0] if scalar else out
