"""Scenario parameters, noise model and the package's exception types."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, fields


class ConfigError(ValueError):
    """Raised when a scenario parameter is missing, malformed or out of range."""

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"{key}: {message}")


class InvalidPartitionError(ValueError):
    """Raised when an element split violates the per-user minimum."""


class ContractViolation(ValueError):
    """Raised when an operation is called outside its precondition."""


def _default_snr_grid() -> tuple[float, ...]:
    return tuple(float(s) for s in range(0, 31, 5))


@dataclass(frozen=True)
class ScenarioConfig:
    """Physical and solver parameters of one downlink group.

    Users are indexed from 0. User 0 is the far user of the pair
    (``UE_{2i-1}``), user 1 the near one (``UE_{2i}``). Distances are
    normalized; every channel coefficient has variance ``d ** -pathloss_exponent``.
    """

    n_elements: int = 256
    n_users: int = 2
    total_power: float = 1.0
    target_common_rate: float = 2.0
    snr_grid_db: tuple[float, ...] = field(default_factory=_default_snr_grid)
    dist_bs_ue: tuple[float, ...] = (1.0, 0.5)
    dist_bs_ris: float = 0.4
    dist_ris_ue: tuple[float, ...] = (0.6, 0.3)
    pathloss_exponent: float = 2.0
    power_tolerance: float = 1e-6
    element_threshold: int = 4
    n_trials: int = 1000
    seed: int = 42

    def __post_init__(self):
        # normalise sequences so that configs built from lists hash and compare
        for name in ("snr_grid_db", "dist_bs_ue", "dist_ris_ue"):
            value = getattr(self, name)
            if isinstance(value, (int, float)) or value is None:
                raise ConfigError(name, "expected a list of numbers")
            try:
                object.__setattr__(self, name, tuple(float(v) for v in value))
            except (TypeError, ValueError):
                raise ConfigError(name, f"expected a list of numbers, got {value!r}") from None
        self._validate()

    def _validate(self):
        for name in ("n_elements", "n_users", "element_threshold", "n_trials", "seed"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(name, f"expected an integer, got {value!r}")
        for name in ("total_power", "target_common_rate", "dist_bs_ris",
                     "pathloss_exponent", "power_tolerance"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)) \
                    or not math.isfinite(value):
                raise ConfigError(name, f"expected a finite number, got {value!r}")

        if self.n_users != 2:
            raise ConfigError("n_users", "only a single two-user group is supported")
        if self.element_threshold < 1:
            raise ConfigError("element_threshold", "must be a positive integer")
        if self.n_elements < 2 * self.element_threshold:
            raise ConfigError(
                "n_elements",
                f"{self.n_elements} elements cannot give each user at least "
                f"element_threshold={self.element_threshold}")
        if self.total_power <= 0:
            raise ConfigError("total_power", "must be > 0")
        if self.target_common_rate < 0:
            raise ConfigError("target_common_rate", "must be >= 0")
        if not 0 < self.power_tolerance < 1:
            raise ConfigError("power_tolerance", "must lie in (0, 1)")
        if self.pathloss_exponent <= 0:
            raise ConfigError("pathloss_exponent", "must be > 0")
        if self.n_trials < 1:
            raise ConfigError("n_trials", "must be >= 1")
        if self.seed < 0:
            raise ConfigError("seed", "must be an unsigned integer")
        if not self.snr_grid_db:
            raise ConfigError("snr_grid_db", "must contain at least one value")
        if any(not math.isfinite(s) for s in self.snr_grid_db):
            raise ConfigError("snr_grid_db", "values must be finite")
        if any(b <= a for a, b in zip(self.snr_grid_db, self.snr_grid_db[1:])):
            raise ConfigError("snr_grid_db", "must be strictly increasing")
        for name in ("dist_bs_ue", "dist_ris_ue"):
            value = getattr(self, name)
            if len(value) != self.n_users:
                raise ConfigError(name, f"expected {self.n_users} entries, got {len(value)}")
            if any(not (math.isfinite(d) and d > 0) for d in value):
                raise ConfigError(name, "distances must be finite and > 0")
        if self.dist_bs_ris <= 0:
            raise ConfigError("dist_bs_ris", "must be > 0")

    def to_dict(self) -> dict:
        out = asdict(self)
        for name in ("snr_grid_db", "dist_bs_ue", "dist_ris_ue"):
            out[name] = list(out[name])
        return out

    @classmethod
    def from_dict(cls, values: dict) -> "ScenarioConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(values) - known)
        if unknown:
            raise ConfigError(unknown[0], "unknown configuration key")
        return cls(**values)


@dataclass(frozen=True)
class NoiseModel:
    """AWGN at the receivers; ``noise_power`` is the variance N0."""

    noise_power: float

    def __post_init__(self):
        if not self.noise_power > 0:
            raise ContractViolation(f"noise_power must be > 0, got {self.noise_power}")

    @classmethod
    def from_snr_db(cls, snr_db: float, total_power: float = 1.0) -> "NoiseModel":
        """Noise variance giving transmit SNR ``total_power / N0`` of ``snr_db``."""
        return cls(total_power / 10.0 ** (snr_db / 10.0))
