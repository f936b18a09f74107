"""One-layer RSMA rate equations for a two-user group.

Every SINR uses the channel power gain ``|h_k|^2``. Rates are in bits/s/Hz.
The array-level helpers broadcast over numpy inputs, which the brute-force
search relies on.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channel import ChannelRealization, SegmentAssignment, effective_gain
from .config import ContractViolation, NoiseModel, ScenarioConfig

BUDGET_TOL = 1e-9


@dataclass(frozen=True)
class PowerSplit:
    alpha_c: float
    alpha_p: tuple[float, ...]
    feasible: bool = True
    iterations: int = field(default=0, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "alpha_p", tuple(float(a) for a in self.alpha_p))
        if self.alpha_c < 0 or any(a < 0 for a in self.alpha_p):
            raise ContractViolation(f"negative power factor in {self}")
        total = self.alpha_c + sum(self.alpha_p)
        if abs(total - 1.0) > BUDGET_TOL:
            raise ContractViolation(f"power factors sum to {total}, expected 1")

    @classmethod
    def from_private(cls, alpha_p: float, n_users: int = 2, feasible: bool = True,
                     iterations: int = 0) -> "PowerSplit":
        """Equal private split; the common factor takes what is left."""
        return cls(1.0 - n_users * alpha_p, (alpha_p,) * n_users, feasible, iterations)

    @classmethod
    def from_common(cls, alpha_c: float, n_users: int = 2, feasible: bool = True) -> "PowerSplit":
        return cls(alpha_c, ((1.0 - alpha_c) / n_users,) * n_users, feasible)


@dataclass(frozen=True)
class RateReport:
    gains: tuple[float, ...]
    common_per_user: tuple[float, ...]
    common: float
    private_per_user: tuple[float, ...]
    user_total: tuple[float, ...]
    sum_rate: float


def common_sinr(alpha_c, alpha_p_total, gain, p_total, n0):
    """Common-stream SINR with both private streams treated as noise."""
    signal = alpha_c * p_total * gain
    return signal / (alpha_p_total * p_total * gain + n0)


def private_sinr(alpha_self, alpha_other, gain, p_total, n0):
    return alpha_self * p_total * gain / (alpha_other * p_total * gain + n0)


def common_rate_per_user(gain_k: float, split: PowerSplit, p_total: float,
                         noise: NoiseModel) -> float:
    return float(np.log2(1.0 + common_sinr(split.alpha_c, sum(split.alpha_p), gain_k,
                                           p_total, noise.noise_power)))


def common_rate(rates) -> float:
    """The common stream must be decodable by every user: take the minimum."""
    rates = list(rates)
    if not rates:
        raise ContractViolation("common_rate needs at least one user")
    return min(rates)


def private_rate(user: int, gain_k: float, split: PowerSplit, p_total: float,
                 noise: NoiseModel) -> float:
    """Private rate after SIC; only the other user's private stream interferes."""
    alpha_self = split.alpha_p[user]
    alpha_other = sum(split.alpha_p) - alpha_self
    return float(np.log2(1.0 + private_sinr(alpha_self, alpha_other, gain_k,
                                            p_total, noise.noise_power)))


def rates_from_gains(gains, split: PowerSplit, p_total: float, noise: NoiseModel) -> RateReport:
    gains = tuple(float(g) for g in gains)
    rc_k = tuple(common_rate_per_user(g, split, p_total, noise) for g in gains)
    rc = common_rate(rc_k)
    rp = tuple(private_rate(k, g, split, p_total, noise) for k, g in enumerate(gains))
    totals = tuple(rc + r for r in rp)
    return RateReport(gains=gains, common_per_user=rc_k, common=rc,
                      private_per_user=rp, user_total=totals, sum_rate=sum(totals))


def evaluate_rates(realization: ChannelRealization, assignment: SegmentAssignment,
                   split: PowerSplit, config: ScenarioConfig, noise: NoiseModel) -> RateReport:
    """Aligned gains, per-user common rates, their minimum, private rates and totals.

    Both users are credited with the full common rate, so the sum rate
    counts it twice.
    """
    gains = [effective_gain(realization, assignment, k) for k in range(config.n_users)]
    return rates_from_gains(gains, split, config.total_power, noise)
