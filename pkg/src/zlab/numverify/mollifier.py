"""Mobius sieve and direct evaluation of the mollifiers and of G."""

from __future__ import annotations

import math

import numpy as np

from ..meanvalue import EtaSpec, MollifierPair
from ..polyalg import RatPoly
from .zeta import DEFAULT_ZETA, ZetaConfig, zeta_and_prime


def mobius_sieve(y: int) -> np.ndarray:
    """mu(n) for 0 <= n <= y (index 0 unused, set to 0), by a linear sieve."""
    if y < 1:
        raise ValueError("y must be at least 1")
    mu = np.zeros(y + 1, dtype=np.int8)
    mu[1] = 1
    composite = np.zeros(y + 1, dtype=bool)
    primes: list[int] = []
    for i in range(2, y + 1):
        if not composite[i]:
            primes.append(i)
            mu[i] = -1
        for p in primes:
            ip = i * p
            if ip > y:
                break
            composite[ip] = True
            if i % p == 0:
                mu[ip] = 0
                break
            mu[ip] = -mu[i]
    return mu


def _poly_for(which: str, spec) -> tuple[RatPoly, bool]:
    if which == "psi1":
        return spec.P1, False
    if which == "psi2":
        return spec.P2, True
    if which == "psi":
        return spec.P, False
    raise ValueError(f"unknown mollifier {which!r}")


def psi_eval(s, which: str, spec: MollifierPair | EtaSpec, T: float):
    """Evaluate a mollifier directly.

    ``sum_{n <= y} mu(n) n^-(s + R/L) P(log(y/n) / log y)`` with
    ``L = log T`` and ``y = T**theta``; ``psi2`` carries an extra ``1/L``.
    """
    L = math.log(T)
    logy = float(spec.theta) * L
    y = math.exp(logy)
    if y < 1:
        raise ValueError("mollifier length y = T^theta must be at least 1")
    P, scaled = _poly_for(which, spec)
    ymax = int(math.floor(y * (1 + 1e-12)))
    mu = mobius_sieve(max(ymax, 1))
    n = np.nonzero(mu)[0]
    n = n[n <= y * (1 + 1e-12)]
    logn = np.log(n.astype(float))
    if logy > 0:
        weights = mu[n] * np.asarray(P(np.clip((logy - logn) / logy, 0.0, 1.0)), dtype=float)
    else:
        weights = mu[n] * float(P(1))
    s_arr = np.asarray(s, dtype=complex)
    shift = float(spec.R) / L
    out = np.exp(-np.multiply.outer(s_arr + shift, logn)) @ weights
    if scaled:
        out = out / L
    return out


def g_eval(s, pair: MollifierPair, T: float, cfg: ZetaConfig = DEFAULT_ZETA):
    """G(s) = zeta(s) psi_1(s) + zeta'(s) psi_2(s)."""
    z, dz = zeta_and_prime(s, cfg)
    out = z * psi_eval(s, "psi1", pair, T)
    if not pair.P2.is_zero():
        out = out + dz * psi_eval(s, "psi2", pair, T)
    return out
