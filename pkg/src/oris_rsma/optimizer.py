"""Two-stage bisection allocator (ORIS-RSMA) and an exhaustive reference search.

Stage one (OPA) bisects the private power factor under an equal element
split. Stage two (ORIS) bisects the number of elements handed to the
stronger user with the power split held fixed. Both stages keep the
feasible endpoint of their bracket, so the returned point always meets the
common-rate target when it is flagged feasible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channel import (ChannelRealization, SegmentAssignment, assign_segments,
                      boundary_gain_table, equal_split, split_at)
from .config import ContractViolation, NoiseModel, ScenarioConfig
from .rates import PowerSplit, RateReport, common_sinr, evaluate_rates, private_sinr

RATE_TOLERANCE = 1e-3


@dataclass(frozen=True)
class RisPartition:
    n_good: int
    n_worst: int
    good_user: int
    worst_user: int
    feasible: bool = True
    iterations: int = field(default=0, compare=False)

    def assignment(self, config: ScenarioConfig) -> SegmentAssignment:
        return assign_segments(config, self.n_good, self.good_user)


@dataclass(frozen=True)
class Solution:
    split: PowerSplit
    partition: RisPartition
    rates: RateReport
    opa_iterations: int = 0
    oris_iterations: int = 0

    @property
    def feasible(self) -> bool:
        return self.split.feasible and self.partition.feasible


def bisect_continuous(lo: float, hi: float, tol: float, accept) -> tuple[float, int]:
    """Move ``lo`` up while ``accept(mid)`` holds; stop once ``hi - lo < tol``.

    Returns the final lower endpoint and the number of evaluations.
    """
    n_iter = 0
    while hi - lo >= tol:
        mid = 0.5 * (lo + hi)
        n_iter += 1
        if accept(mid):
            lo = mid
        else:
            hi = mid
    return lo, n_iter


def bisect_integer(lo: int, hi: int, step: int, accept) -> tuple[int, bool, int]:
    """Integer bisection with ceiling midpoints, resolution ``step``.

    Returns ``(lo, lo_accepted, evaluations)``. With ``step == 1`` the
    ceiling midpoint can equal ``hi``; a rejected ``hi`` then ends the search
    instead of being re-tested forever.
    """
    n_iter = 0
    lo_accepted = False
    hi_rejected = False
    while hi - lo >= step:
        if hi - lo == 1 and hi_rejected:
            break
        mid = (lo + hi + 1) // 2
        n_iter += 1
        if accept(mid):
            lo = mid
            lo_accepted = True
        else:
            hi = mid
            hi_rejected = True
    return lo, lo_accepted, n_iter


def _common_rate(gains, alpha_p: float, config: ScenarioConfig, n0: float) -> float:
    k = config.n_users
    sinr = common_sinr(1.0 - k * alpha_p, k * alpha_p, np.asarray(gains),
                       config.total_power, n0)
    return float(np.log2(1.0 + np.min(sinr)))


def opa_bisection(realization: ChannelRealization, config: ScenarioConfig,
                  noise: NoiseModel) -> PowerSplit:
    """Largest equal private factor whose common rate still exceeds the target.

    Rates are evaluated with the equal element split. The number of
    bisection steps is stored in ``PowerSplit.iterations``.
    """
    k = config.n_users
    n0 = noise.noise_power
    target = config.target_common_rate
    gains = boundary_gain_table(realization)[equal_split(config).counts[0]]

    if _common_rate(gains, 0.0, config, n0) < target:
        return PowerSplit.from_private(0.0, k, feasible=False)

    # the printed upper bound of 1 is clamped so that alpha_c stays >= 0
    alpha_p, n_iter = bisect_continuous(
        0.0, min(1.0, 1.0 / k), config.power_tolerance,
        lambda a: _common_rate(gains, a, config, n0) > target)
    return PowerSplit.from_private(alpha_p, k, feasible=True, iterations=n_iter)


def identify_users(rates: RateReport) -> tuple[int, int]:
    """``(good_user, worst_user)`` by per-user common rate; ties make user 0 worst."""
    worst = int(np.argmin(rates.common_per_user))
    return 1 - worst, worst


def oris_bisection(realization: ChannelRealization, split: PowerSplit, good_user: int,
                   config: ScenarioConfig, noise: NoiseModel) -> RisPartition:
    """Largest element count for ``good_user`` that keeps the common rate above target."""
    n, n_th = config.n_elements, config.element_threshold
    target = config.target_common_rate
    n0 = noise.noise_power
    table = boundary_gain_table(realization)
    alpha_p = split.alpha_p[0]

    def rc(n_good: int) -> float:
        boundary = n_good if good_user == 0 else n - n_good
        return _common_rate(table[boundary], alpha_p, config, n0)

    n_good, accepted, n_iter = bisect_integer(
        n_th, n - n_th, n_th, lambda m: rc(m) > target)
    feasible = accepted or rc(n_good) >= target
    return RisPartition(n_good=n_good, n_worst=n - n_good, good_user=good_user,
                        worst_user=1 - good_user, feasible=feasible, iterations=n_iter)


def oris_rsma(realization: ChannelRealization, config: ScenarioConfig,
              noise: NoiseModel) -> Solution:
    split = opa_bisection(realization, config, noise)
    base = equal_split(config)
    base_rates = evaluate_rates(realization, base, split, config, noise)
    good, worst = identify_users(base_rates)

    if not split.feasible:
        partition = RisPartition(n_good=base.counts[good], n_worst=base.counts[worst],
                                 good_user=good, worst_user=worst, feasible=False)
        return Solution(split, partition, base_rates, split.iterations, 0)

    partition = oris_bisection(realization, split, good, config, noise)
    rates = evaluate_rates(realization, partition.assignment(config), split, config, noise)
    return Solution(split, partition, rates, split.iterations, partition.iterations)


def brute_force_solution(realization: ChannelRealization, config: ScenarioConfig,
                         noise: NoiseModel, grid_step: float) -> Solution:
    """Exhaustive search over an alpha_p grid and every admissible partition.

    Returns the feasible pair with the largest sum rate. When no pair meets
    the target, the all-common, equal-split point is returned flagged
    infeasible.
    """
    if not 0 < grid_step < 1:
        raise ContractViolation(f"grid_step must lie in (0, 1), got {grid_step}")
    k = config.n_users
    n, n_th = config.n_elements, config.element_threshold
    p, n0 = config.total_power, noise.noise_power

    n_steps = math.floor((1.0 / k) / grid_step + 1e-9)
    alpha_p = grid_step * np.arange(n_steps + 1)
    boundaries = np.arange(n_th, n - n_th + 1)
    gains = boundary_gain_table(realization)[boundaries]          # (B, K)

    a = alpha_p[:, None, None]
    g = gains[None, :, :]
    rc = np.log2(1.0 + common_sinr(1.0 - k * a, k * a, g, p, n0)).min(axis=2)
    rp = np.log2(1.0 + private_sinr(a, (k - 1) * a, g, p, n0)).sum(axis=2)
    sum_rate = k * rc + rp                                         # (A, B)

    feasible = rc >= config.target_common_rate
    if not feasible.any():
        split = PowerSplit.from_private(0.0, k, feasible=False)
        assignment = equal_split(config)
        ok = False
    else:
        flat = np.where(feasible, sum_rate, -np.inf).argmax()
        ia, ib = np.unravel_index(flat, sum_rate.shape)
        split = PowerSplit.from_private(float(alpha_p[ia]), k, feasible=True)
        n_user0 = int(boundaries[ib])
        assignment = split_at(n, n_user0)
        ok = True

    rates = evaluate_rates(realization, assignment, split, config, noise)
    good, worst = identify_users(rates)
    partition = RisPartition(n_good=assignment.counts[good], n_worst=assignment.counts[worst],
                             good_user=good, worst_user=worst, feasible=ok)
    return Solution(split, partition, rates)
