"""Received-signal generators for both protocols.

Channels are redrawn independently for every sample (fast fading), so each
received sample is i.i.d. within a test statistic.
"""

from __future__ import annotations

import numpy as np

from .params import JointState, SystemParams
from .stats_core import corr_sqrt_2x2, power, sample_cscg

__all__ = [
    "pu_signal",
    "lat_received",
    "gen_lat_samples",
    "lbt_received",
    "gen_lbt_samples",
    "gen_mimo_channel",
]


PSK_ORDER = 8
_PSK_TABLE = np.exp(2j * np.pi * np.arange(PSK_ORDER) / PSK_ORDER)


def _psk_symbols(shape, rng: np.random.Generator) -> np.ndarray:
    return _PSK_TABLE[rng.integers(0, PSK_ORDER, size=shape, dtype=np.uint8)]


def pu_signal(params: SystemParams, shape, rng: np.random.Generator) -> np.ndarray:
    """PU contribution ``h_s * s_P`` at one antenna.

    ``s_P`` is equiprobable 8-PSK (unit modulus), so the channel variance carries the whole
    sensing SNR: ``E|h_s|^2 = gamma_s * sigma_u2``.
    """
    shape = (shape,) if np.isscalar(shape) else tuple(shape)
    h = sample_cscg(params.gamma_s * params.sigma_u2, shape, rng)
    return h * _psk_symbols(shape, rng)


def lat_received(state: JointState, params: SystemParams, count, rng: np.random.Generator) -> np.ndarray:
    """Complex samples ``y(n)`` at the sensing antenna under a LAT hypothesis."""
    if not state.is_lat:
        raise ValueError(f"{state.name} is not a LAT hypothesis")
    y = sample_cscg(params.sigma_u2, count, rng)
    if state.pu_busy:
        y = y + pu_signal(params, y.shape, rng)
    if state.su_active:
        # residual self-interference h_i s_t, Rayleigh envelope with power chi^2 sigma_s^2
        y = y + sample_cscg(params.chi**2 * params.sigma_s2, y.shape, rng)
    return y


def gen_lat_samples(state: JointState, params: SystemParams, count, rng: np.random.Generator) -> np.ndarray:
    """Received powers ``|y(n)|^2`` under a LAT hypothesis."""
    return power(lat_received(state, params, count, rng))


def lbt_received(state: JointState, params: SystemParams, count, rng: np.random.Generator) -> np.ndarray:
    """Two-antenna samples, shape ``(*count, 2)``, under an LBT hypothesis."""
    if state not in (JointState.H0, JointState.H1):
        raise ValueError(f"{state.name} is not an LBT hypothesis")
    shape = (count,) if np.isscalar(count) else tuple(count)
    y = sample_cscg(params.sigma_u2, (*shape, 2), rng)
    if state.pu_busy:
        root = corr_sqrt_2x2(params.beta_s)
        h0 = sample_cscg(params.gamma_s * params.sigma_u2, (*shape, 2), rng)
        h = h0 @ root.T  # h = Phi_s^{1/2} h0 for every sample
        y = y + h * _psk_symbols(shape, rng)[..., None]
    return y


def gen_lbt_samples(state: JointState, params: SystemParams, count, rng: np.random.Generator) -> np.ndarray:
    """Two-antenna averaged powers ``(|y1|^2 + |y2|^2) / 2``."""
    y = lbt_received(state, params, count, rng)
    return 0.5 * np.sum(power(y), axis=-1)


def gen_mimo_channel(params: SystemParams, rng: np.random.Generator, size=None) -> np.ndarray:
    """Kronecker-correlated 2x2 channel ``Phi_r^{1/2} H_t0 Phi_t^{1/2}``.

    Returns one matrix, or a ``(size, 2, 2)`` stack when ``size`` is given.
    """
    shape = (2, 2) if size is None else (size, 2, 2)
    h0 = sample_cscg(params.sigma_h_tilde2, shape, rng)
    return corr_sqrt_2x2(params.beta_r) @ h0 @ corr_sqrt_2x2(params.beta_t)

