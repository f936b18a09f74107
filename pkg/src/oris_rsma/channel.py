"""Channel synthesis and coherent RIS phase alignment.

The RIS elements are laid out in a fixed order. User 0 always owns a block
at the low-index end and user 1 the block at the high-index end, so a
partition is fully described by one boundary: the number of elements held
by user 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import InvalidPartitionError, ScenarioConfig

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class ChannelRealization:
    """One draw of all channel coefficients.

    g      : (N,) BS to RIS, per element
    h_ris  : (K, N) RIS to user k, per element
    h_d    : (K,) BS to user k, direct link
    """

    g: np.ndarray
    h_ris: np.ndarray
    h_d: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.g, dtype=complex)
        h_ris = np.atleast_2d(np.asarray(self.h_ris, dtype=complex))
        h_d = np.asarray(self.h_d, dtype=complex).reshape(-1)
        if h_ris.shape != (h_d.size, g.size):
            raise ValueError(
                f"h_ris has shape {h_ris.shape}, expected {(h_d.size, g.size)}")
        if not (np.all(np.isfinite(g)) and np.all(np.isfinite(h_ris))
                and np.all(np.isfinite(h_d))):
            raise ValueError("channel coefficients must be finite")
        for name, arr in (("g", g), ("h_ris", h_ris), ("h_d", h_d)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n_elements(self) -> int:
        return self.g.size

    @property
    def n_users(self) -> int:
        return self.h_d.size

    def cascade_magnitudes(self) -> np.ndarray:
        """|G_j| * |h_ris,k,j| for every user and element, shape (K, N)."""
        return np.abs(self.g)[None, :] * np.abs(self.h_ris)


@dataclass(frozen=True)
class SegmentAssignment:
    counts: tuple[int, ...]
    boundaries: tuple[range, ...]

    def elements(self, user: int) -> range:
        return self.boundaries[user]


@dataclass(frozen=True)
class PhaseProfile:
    """Phase shifts for the elements of one user's segment."""

    elements: range
    phases: np.ndarray

    @property
    def reflection(self) -> np.ndarray:
        return np.exp(1j * self.phases)


def _complex_gaussian(rng: np.random.Generator, variance: np.ndarray | float, size) -> np.ndarray:
    scale = np.sqrt(np.asarray(variance) / 2.0)
    return scale * (rng.standard_normal(size) + 1j * rng.standard_normal(size))


def sample_realization(config: ScenarioConfig, trial_index: int) -> ChannelRealization:
    """Draw i.i.d. Rayleigh coefficients with variance ``d ** -eta`` per link.

    The generator is seeded from ``(config.seed, trial_index)`` only, so any
    trial can be regenerated independently of the others.
    """
    rng = np.random.default_rng([config.seed, trial_index])
    eta = config.pathloss_exponent
    n, k = config.n_elements, config.n_users
    var_ris_ue = np.asarray(config.dist_ris_ue) ** -eta
    var_bs_ue = np.asarray(config.dist_bs_ue) ** -eta

    g = _complex_gaussian(rng, config.dist_bs_ris ** -eta, n)
    h_ris = _complex_gaussian(rng, var_ris_ue[:, None], (k, n))
    h_d = _complex_gaussian(rng, var_bs_ue, k)
    return ChannelRealization(g=g, h_ris=h_ris, h_d=h_d)


def split_at(n_elements: int, n_user0: int) -> SegmentAssignment:
    """Partition with user 0 holding ``n_user0`` low-index elements."""
    return SegmentAssignment(
        counts=(n_user0, n_elements - n_user0),
        boundaries=(range(0, n_user0), range(n_user0, n_elements)),
    )


def equal_split(config: ScenarioConfig) -> SegmentAssignment:
    # odd N: the extra element goes to user 1
    return split_at(config.n_elements, config.n_elements // config.n_users)


def assign_segments(config: ScenarioConfig, n_good: int, good_user: int) -> SegmentAssignment:
    """Give ``n_good`` elements to ``good_user`` and the rest to the other user.

    Each user's block sits on its own side of the surface, so moving
    ``n_good`` only shifts the boundary between them.
    """
    n, n_th = config.n_elements, config.element_threshold
    if good_user not in (0, 1):
        raise InvalidPartitionError(f"unknown user index {good_user}")
    if isinstance(n_good, bool) or int(n_good) != n_good:
        raise InvalidPartitionError(f"n_good must be an integer, got {n_good!r}")
    n_good = int(n_good)
    if not n_th <= n_good <= n - n_th:
        raise InvalidPartitionError(
            f"n_good={n_good} outside [{n_th}, {n - n_th}] for N={n}, N_th={n_th}")
    n_user0 = n_good if good_user == 0 else n - n_good
    return split_at(n, n_user0)


def align_phases(realization: ChannelRealization, assignment: SegmentAssignment,
                 user: int) -> PhaseProfile:
    """Co-phase every cascaded path of ``user``'s segment with its direct link."""
    idx = assignment.elements(user)
    h_d = realization.h_d[user]
    # zero direct link: any common reference is optimal, use 0
    reference = np.angle(h_d) if h_d != 0 else 0.0
    cascade = realization.g[idx.start:idx.stop] * realization.h_ris[user, idx.start:idx.stop]
    phases = np.mod(reference - np.angle(cascade), TWO_PI)
    # np.mod can round up to exactly 2*pi for tiny negative inputs
    phases[phases >= TWO_PI] = 0.0
    return PhaseProfile(elements=idx, phases=phases)


def effective_gain(realization: ChannelRealization, assignment: SegmentAssignment,
                   user: int) -> float:
    """Channel power gain |h_k|^2 of ``user`` under coherent alignment."""
    idx = assignment.elements(user)
    amplitude = abs(realization.h_d[user]) + float(np.sum(
        np.abs(realization.g[idx.start:idx.stop])
        * np.abs(realization.h_ris[user, idx.start:idx.stop])))
    return amplitude * amplitude


def direct_only_gain(realization: ChannelRealization, user: int) -> float:
    return float(abs(realization.h_d[user]) ** 2)


def boundary_gain_table(realization: ChannelRealization) -> np.ndarray:
    """Aligned power gains of both users for every boundary position.

    Row ``b`` holds ``(gain_user0, gain_user1)`` when user 0 owns the first
    ``b`` elements, for ``b = 0..N``. Searches over partitions index this
    table instead of re-aligning phases per candidate.
    """
    mags = realization.cascade_magnitudes()
    zero = np.zeros(1)
    amp0 = abs(realization.h_d[0]) + np.concatenate([zero, np.cumsum(mags[0])])
    amp1 = abs(realization.h_d[1]) + np.concatenate([np.cumsum(mags[1][::-1])[::-1], zero])
    return np.stack([amp0, amp1], axis=1) ** 2
