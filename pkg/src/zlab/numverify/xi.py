"""The gamma factor H(s) = s(s-1)/2 pi^(-s/2) Gamma(s/2), xi = H zeta, and
the Hardy Z-function used for counting zeros on the critical line."""

from __future__ import annotations

import math

import numpy as np

from ..exceptions import DomainError
from .gamma import digamma, loggamma
from .zeta import DEFAULT_ZETA, ZetaConfig, zeta_and_prime

_LOG_PI = math.log(math.pi)


def _check_domain(s: np.ndarray) -> None:
    on_axis = np.abs(s.imag) < 1e-12
    re = s.real
    bad = on_axis & (np.abs(re - np.round(re)) < 1e-12) & ((np.round(re) <= 0) | (np.round(re) == 1))
    if np.any(bad):
        raise DomainError(f"H'/H has a pole at s = {s[bad][0]}")


def log_h(s) -> np.ndarray:
    """log H(s); the imaginary part is defined modulo 2 pi."""
    s = np.asarray(s, dtype=complex)
    return (math.log(0.5) + np.log(s) + np.log(s - 1) - 0.5 * s * _LOG_PI
            + loggamma(s / 2))


def h_factor(s):
    """``(H(s), H'/H(s))``.

    Raises:
        DomainError: at s = 0, 1 and the negative even integers, where the
            logarithmic derivative has poles.
    """
    arr = np.atleast_1d(np.asarray(s, dtype=complex))
    _check_domain(arr)
    H = np.exp(log_h(arr))
    dlog = 1 / arr + 1 / (arr - 1) - 0.5 * _LOG_PI + 0.5 * digamma(arr / 2)
    if np.ndim(s) == 0:
        return H[0], dlog[0]
    return H, dlog


def xi(s, cfg: ZetaConfig = DEFAULT_ZETA):
    H, _ = h_factor(s)
    z, _ = zeta_and_prime(s, cfg)
    return H * z


def xi_prime(s, cfg: ZetaConfig = DEFAULT_ZETA):
    """xi'(s) = H(s) (H'/H(s) zeta(s) + zeta'(s))."""
    H, dlog = h_factor(s)
    z, dz = zeta_and_prime(s, cfg)
    return H * (dlog * z + dz)


def rs_theta(t) -> np.ndarray:
    """Riemann-Siegel phase: arg of pi^(-s/2) Gamma(s/2) on s = 1/2 + it (mod 2 pi)."""
    t = np.asarray(t, dtype=float)
    return np.imag(loggamma(0.25 + 0.5j * t)) - 0.5 * t * _LOG_PI


def hardy_z(t, cfg: ZetaConfig = DEFAULT_ZETA) -> np.ndarray:
    """Z(t) = exp(i theta(t)) zeta(1/2 + it), real-valued."""
    t = np.asarray(t, dtype=float)
    z, _ = zeta_and_prime(0.5 + 1j * t, cfg)
    return np.real(np.exp(1j * rs_theta(t)) * z)


def xi_prime_im_scaled(t, cfg: ZetaConfig = DEFAULT_ZETA) -> np.ndarray:
    """Im xi'(1/2 + it) / |H(1/2 + it)|: same sign, no underflow at large t."""
    t = np.asarray(t, dtype=float)
    s = 0.5 + 1j * t
    _, dlog = h_factor(s)
    z, dz = zeta_and_prime(s, cfg)
    phase = np.exp(1j * np.imag(log_h(s)))
    return np.imag(phase * (dlog * z + dz))
