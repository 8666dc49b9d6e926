"""Desk-scale numerics: zeta, xi, the mollifiers, the smoothed moment and
zero counts, used to check the symbolic predictions against direct
computation."""

from .gamma import digamma, loggamma
from .mollifier import g_eval, mobius_sieve, psi_eval
from .moment import MomentResult, MomentSpec, smoothed_moment
from .xi import h_factor, hardy_z, rs_theta, xi, xi_prime, xi_prime_im_scaled
from .zeros import (
    count_sign_changes,
    count_zeros_zeta,
    riemann_vonmangoldt,
    xi_prime_critical_sign_changes,
)
from .zeta import DEFAULT_ZETA, ZetaConfig, zeta_and_prime, zeta_em, zeta_prime_em

__all__ = [
    "DEFAULT_ZETA", "MomentResult", "MomentSpec", "ZetaConfig",
    "count_sign_changes", "count_zeros_zeta", "digamma", "g_eval", "h_factor",
    "hardy_z", "loggamma", "mobius_sieve", "psi_eval", "riemann_vonmangoldt",
    "rs_theta", "smoothed_moment", "xi", "xi_prime", "xi_prime_critical_sign_changes",
    "xi_prime_im_scaled", "zeta_and_prime", "zeta_em", "zeta_prime_em",
]
