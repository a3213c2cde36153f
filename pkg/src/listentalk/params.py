"""System parameters, hypotheses and derived SNR/INR ratios."""

from __future__ import annotations

import dataclasses
import enum
import math
import warnings
from dataclasses import dataclass

__all__ = ["SystemParams", "JointState", "DerivedRatios", "derived_ratios", "db_to_linear"]


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


class JointState(enum.Enum):
    """Sensing hypotheses: (PU busy, SU active). LBT states have no SU part."""

    H00 = (False, False)
    H01 = (True, False)
    H10 = (False, True)
    H11 = (True, True)
    H0 = (False, None)
    H1 = (True, None)

    @property
    def pu_busy(self) -> bool:
        return self.value[0]

    @property
    def su_active(self) -> bool:
        return bool(self.value[1])

    @property
    def is_lat(self) -> bool:
        return self.value[1] is not None

    @classmethod
    def lat(cls, pu_busy: bool, su_active: bool) -> "JointState":
        return cls((bool(pu_busy), bool(su_active)))

    @classmethod
    def lbt(cls, pu_busy: bool) -> "JointState":
        return cls((bool(pu_busy), None))


def _sample_count(rate: float, duration: float, name: str) -> int:
    product = rate * duration
    n = int(round(product))
    if n < 1:
        raise ValueError(f"{name} = round(fs * duration) must be >= 1, got {product}")
    if not math.isclose(product, n, rel_tol=1e-9, abs_tol=1e-9):
        warnings.warn(f"{name}: fs * duration = {product} is not an integer, using {n}")
    return n


@dataclass(frozen=True)
class SystemParams:
    """Physical and protocol constants. Defaults are the reference operating point
    (T = 0.2 ms, fs = 1 MHz, 13 dB transmit power, -10 dB sensing SNR)."""

    slot_T: float = 2e-4
    tau: float = 5e-5
    fs: float = 1e6
    sigma_u2: float = 1.0
    sigma_s2: float = 10.0**1.3
    gamma_s: float = 0.1
    sigma_h_tilde2: float = 1.0
    chi: float = 0.2
    beta_s: float = 0.7
    beta_t: float = 0.7
    beta_r: float = 0.7
    pm_target: float = 0.3

    def __post_init__(self):
        checks = [
            ("slot_T", self.slot_T > 0, "slot_T > 0"),
            ("tau", 0 < self.tau < self.slot_T, "0 < tau < slot_T"),
            ("fs", self.fs > 0, "fs > 0"),
            ("sigma_u2", self.sigma_u2 > 0, "sigma_u2 > 0"),
            ("sigma_s2", self.sigma_s2 >= 0, "sigma_s2 >= 0"),
            ("gamma_s", self.gamma_s >= 0, "gamma_s >= 0"),
            ("sigma_h_tilde2", self.sigma_h_tilde2 >= 0, "sigma_h_tilde2 >= 0"),
            ("chi", 0 <= self.chi <= 1, "chi in [0, 1]"),
            ("beta_s", 0 <= self.beta_s < 1, "beta_s in [0, 1)"),
            ("beta_t", 0 <= self.beta_t < 1, "beta_t in [0, 1)"),
            ("beta_r", 0 <= self.beta_r < 1, "beta_r in [0, 1)"),
            ("pm_target", 0 < self.pm_target < 1, "pm_target in (0, 1)"),
        ]
        for name, ok, constraint in checks:
            if not ok:
                raise ValueError(f"{name}={getattr(self, name)!r} violates {constraint}")
        _sample_count(self.fs, self.slot_T, "n_lat")
        _sample_count(self.fs, self.tau, "n_lbt")

    @property
    def n_lat(self) -> int:
        """Samples per LAT test statistic (a whole slot)."""
        return _sample_count(self.fs, self.slot_T, "n_lat")

    @property
    def n_lbt(self) -> int:
        """Samples per LBT test statistic (the sensing subslot)."""
        return _sample_count(self.fs, self.tau, "n_lbt")

    def replace(self, **changes) -> "SystemParams":
        return dataclasses.replace(self, **changes)

    def with_beta(self, beta: float) -> "SystemParams":
        """Same correlation coefficient for sensing, transmit and receive arrays."""
        return self.replace(beta_s=beta, beta_t=beta, beta_r=beta)


@dataclass(frozen=True)
class DerivedRatios:
    gamma_i: float
    gamma_t: float


def derived_ratios(params: SystemParams) -> DerivedRatios:
    """Interference-to-noise ratio and transmission SNR."""
    gamma_i = params.chi**2 * params.sigma_s2 / params.sigma_u2
    gamma_t = params.sigma_s2 * params.sigma_h_tilde2 / params.sigma_u2
    return DerivedRatios(gamma_i=gamma_i, gamma_t=gamma_t)
