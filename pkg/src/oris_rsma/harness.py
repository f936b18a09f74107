"""Monte Carlo sweep comparing conventional RSMA, FPA RIS-RSMA and ORIS-RSMA.

Every scheme sees the same channel draw within a trial. The number of
worker processes comes from the ``ORIS_RSMA_JOBS`` environment variable
(default 1); results are keyed by trial index, so it never changes the output.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields

import numpy as np

from .channel import direct_only_gain, equal_split, sample_realization
from .config import NoiseModel, ScenarioConfig
from .optimizer import oris_rsma
from .rates import PowerSplit, evaluate_rates, rates_from_gains

JOBS_ENV = "ORIS_RSMA_JOBS"
FPA_ALPHA_C = 0.5


@dataclass(frozen=True)
class TrialResult:
    snr_db: float
    trial_index: int
    sr_rsma: float
    sr_ris_rsma: float
    sr_oris_rsma: float
    rc_oris_rsma: float
    n_good: int
    n_worst: int
    alpha_c: float
    feasible: bool
    opa_iterations: int
    oris_iterations: int


AGGREGATED_FIELDS = ("sr_rsma", "sr_ris_rsma", "sr_oris_rsma", "rc_oris_rsma",
                     "n_good", "n_worst", "alpha_c", "opa_iterations", "oris_iterations")


@dataclass
class SweepResult:
    snr_db: np.ndarray
    n_trials: int
    mean: dict[str, np.ndarray]
    se: dict[str, np.ndarray]
    infeasible: np.ndarray
    trials: list[list[TrialResult]]

    def column(self, name: str, snr_index: int) -> np.ndarray:
        return np.array([getattr(t, name) for t in self.trials[snr_index]])


def run_trial(config: ScenarioConfig, trial_index: int, snr_db: float) -> TrialResult:
    realization = sample_realization(config, trial_index)
    noise = NoiseModel.from_snr_db(snr_db, config.total_power)
    p = config.total_power
    fpa = PowerSplit.from_common(FPA_ALPHA_C, config.n_users)

    direct = [direct_only_gain(realization, k) for k in range(config.n_users)]
    sr_rsma = rates_from_gains(direct, fpa, p, noise).sum_rate
    sr_ris = evaluate_rates(realization, equal_split(config), fpa, config, noise).sum_rate
    sol = oris_rsma(realization, config, noise)

    return TrialResult(
        snr_db=float(snr_db),
        trial_index=int(trial_index),
        sr_rsma=sr_rsma,
        sr_ris_rsma=sr_ris,
        sr_oris_rsma=sol.rates.sum_rate,
        rc_oris_rsma=sol.rates.common,
        n_good=sol.partition.n_good,
        n_worst=sol.partition.n_worst,
        alpha_c=sol.split.alpha_c,
        feasible=sol.feasible,
        opa_iterations=sol.opa_iterations,
        oris_iterations=sol.oris_iterations,
    )


def _run_block(args) -> list[TrialResult]:
    config, snr_db, indices = args
    return [run_trial(config, i, snr_db) for i in indices]


def jobs_from_env() -> int:
    raw = os.environ.get(JOBS_ENV, "1")
    try:
        jobs = int(raw)
    except ValueError:
        raise ValueError(f"{JOBS_ENV} must be an integer, got {raw!r}") from None
    return max(jobs, 1)


def aggregate(config: ScenarioConfig, trials: list[list[TrialResult]]) -> SweepResult:
    n = config.n_trials
    mean, se = {}, {}
    for name in AGGREGATED_FIELDS:
        values = np.array([[getattr(t, name) for t in row] for row in trials], dtype=float)
        mean[name] = values.mean(axis=1)
        if n > 1:
            se[name] = values.std(axis=1, ddof=1) / np.sqrt(n)
        else:
            se[name] = np.zeros(len(trials))
    infeasible = np.array([sum(not t.feasible for t in row) for row in trials], dtype=int)
    return SweepResult(snr_db=np.asarray(config.snr_grid_db, dtype=float), n_trials=n,
                       mean=mean, se=se, infeasible=infeasible, trials=trials)


def sweep(config: ScenarioConfig, jobs: int | None = None) -> SweepResult:
    """Run ``n_trials`` paired trials at every SNR point and aggregate them."""
    if jobs is None:
        jobs = jobs_from_env()
    indices = list(range(config.n_trials))

    if jobs <= 1:
        trials = [_run_block((config, snr, indices)) for snr in config.snr_grid_db]
    else:
        n_chunks = min(jobs * 4, config.n_trials)
        chunks = [c.tolist() for c in np.array_split(indices, n_chunks)]
        tasks = [(config, snr, chunk) for snr in config.snr_grid_db for chunk in chunks]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            blocks = list(pool.map(_run_block, tasks))
        trials = []
        for s in range(len(config.snr_grid_db)):
            row = [t for block in blocks[s * n_chunks:(s + 1) * n_chunks] for t in block]
            row.sort(key=lambda t: t.trial_index)
            trials.append(row)
    return aggregate(config, trials)


def trial_record(trial: TrialResult) -> dict:
    return asdict(trial)


TRIAL_FIELDS = tuple(f.name for f in fields(TrialResult))
