"""Power split and RIS element allocation for two-user RIS-assisted RSMA."""

__version__ = "0.1.0"

from .config import (ConfigError, ContractViolation, InvalidPartitionError,
                     NoiseModel, ScenarioConfig)
from .channel import (ChannelRealization, PhaseProfile, SegmentAssignment, align_phases,
                      assign_segments, direct_only_gain, effective_gain, sample_realization)
from .rates import (PowerSplit, RateReport, common_rate, common_rate_per_user,
                    evaluate_rates, private_rate)
from .optimizer import (RisPartition, Solution, brute_force_solution, identify_users,
                        opa_bisection, oris_bisection, oris_rsma)
from .harness import SweepResult, TrialResult, run_trial, sweep

__all__ = [
    "ConfigError", "ContractViolation", "InvalidPartitionError", "NoiseModel",
    "ScenarioConfig", "ChannelRealization", "PhaseProfile", "SegmentAssignment",
    "align_phases", "assign_segments", "direct_only_gain", "effective_gain",
    "sample_realization", "PowerSplit", "RateReport", "common_rate",
    "common_rate_per_user", "evaluate_rates", "private_rate", "RisPartition",
    "Solution", "brute_force_solution", "identify_users", "opa_bisection",
    "oris_bisection", "oris_rsma", "SweepResult", "TrialResult", "run_trial", "sweep",
]
