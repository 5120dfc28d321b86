# FILE: switchcert/switching/paths.py

"""
Cox-modulated switching signal r(t).

Between jumps the intensity is mu(current mode), so inter-arrival times are
exponential with that rate and no thinning is needed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd

from switchcert.exceptions import ConfigurationError, DomainError, InputError
from switchcert.switching.families import FamilyState, RateMap, SwitchingFamily
from switchcert.utils.rng import make_generator

logger = logging.getLogger(__name__)

TABLE_COLUMNS = ("jump_time", "new_mode")


@dataclass(frozen=True)
class SwitchingPath:
    """
    Right-continuous mode signal: modes[0] is active on [0, t_1), modes[k]
    on [t_k, t_{k+1}).

    Attributes:
        jump_times (np.ndarray): Strictly increasing jump instants in (0, horizon].
        modes (np.ndarray): One mode per inter-jump interval.
        horizon (float): Right end of the observation window.
        family_states (tuple, optional): Family state on each interval, recorded
            by `sample_path`; None for paths built from a table.
    """
    jump_times: np.ndarray
    modes: np.ndarray
    horizon: float
    family_states: Optional[Tuple[FamilyState, ...]] = None

    def __post_init__(self) -> None:
        jumps = np.asarray(self.jump_times, dtype=float).reshape(-1)
        modes = np.asarray(self.modes, dtype=np.int64).reshape(-1)
        if len(modes) != len(jumps) + 1:
            raise InputError(f"expected {len(jumps) + 1} modes for {len(jumps)} jumps, got {len(modes)}")
        if self.family_states is not None:
            if len(self.family_states) != len(modes):
                raise InputError(f"expected {len(modes)} family states, got {len(self.family_states)}")
            object.__setattr__(self, "family_states", tuple(self.family_states))
        if len(jumps) and (jumps[0] <= 0 or jumps[-1] > self.horizon or np.any(np.diff(jumps) <= 0)):
            raise InputError("jump times must be strictly increasing inside (0, horizon]")
        jumps.setflags(write=False)
        modes.setflags(write=False)
        object.__setattr__(self, "jump_times", jumps)
        object.__setattr__(self, "modes", modes)
        object.__setattr__(self, "horizon", float(self.horizon))

    @property
    def jump_count(self) -> int:
        return len(self.jump_times)

    @property
    def initial_mode(self) -> int:
        return int(self.modes[0])

    def mode_at(self, t: float) -> int:
        return mode_at(self, t)

    def sojourns(self) -> Tuple[np.ndarray, np.ndarray]:
        """
        Completed sojourns as (durations, modes). The last interval is
        censored by the horizon and left out.
        """
        starts = np.concatenate(([0.0], self.jump_times))
        return np.diff(starts), self.modes[:-1].copy()

    def to_table(self) -> pd.DataFrame:
        """Two-column table (jump_time, new_mode); the initial mode sits at jump_time 0."""
        return pd.DataFrame({
            TABLE_COLUMNS[0]: np.concatenate(([0.0], self.jump_times)),
            TABLE_COLUMNS[1]: self.modes,
        })

    @classmethod
    def from_table(cls, table: pd.DataFrame, horizon: float) -> SwitchingPath:
        """Inverse of `to_table`."""
        missing = [c for c in TABLE_COLUMNS if c not in table.columns]
        if missing:
            raise InputError(f"switching table is missing columns {missing}")
        times = table[TABLE_COLUMNS[0]].to_numpy(dtype=float)
        if len(times) == 0 or times[0] != 0.0:
            raise InputError("switching table must start with the initial mode at jump_time 0")
        return cls(jump_times=times[1:], modes=table[TABLE_COLUMNS[1]].to_numpy(), horizon=horizon)


def sample_path(
    family: SwitchingFamily,
    rates: RateMap,
    initial_mode: int,
    horizon: float,
    seed: int,
    rng: Optional[np.random.Generator] = None,
) -> SwitchingPath:
    """
    Sample one Cox switching path on [0, horizon].

    Args:
        family (SwitchingFamily): Law of the discrete mode sequence.
        rates (RateMap): Intensity per mode.
        initial_mode (int): xi^0.
        horizon (float): Observation window length, >= 0.
        seed (int): Root seed; ignored when `rng` is given.
        rng (np.random.Generator, optional): Explicit stream, used by ensembles.

    Returns:
        SwitchingPath: The sampled path. A jump exactly at `horizon` is kept.

    Raises:
        ConfigurationError: If the rate map does not cover the family's modes.
        DomainError: If the horizon is negative.
    """
    if horizon < 0:
        raise DomainError(f"horizon must be non-negative, got {horizon}")
    if rates.mode_count < family.mode_count:
        raise ConfigurationError(
            f"rate map covers {rates.mode_count} modes but the family emits {family.mode_count}",
            key="switching.rates",
        )
    rng = rng if rng is not None else make_generator(seed)
    state = family.initial_state(initial_mode)

    jumps = []
    modes = [state.mode]
    states: List[FamilyState] = [replace(state)]
    t = 0.0
    while family.has_next(state):
        t += rng.exponential(1.0 / rates.rate(state.mode))
        if t > horizon:
            break
        jumps.append(t)
        modes.append(family.next_mode(state, rng))
        states.append(replace(state))

    logger.debug(f"[sample_path] {len(jumps)} jumps on [0, {horizon}] from mode {initial_mode}")
    return SwitchingPath(jump_times=np.array(jumps), modes=np.array(modes), horizon=horizon,
                         family_states=tuple(states))


def mode_at(path: SwitchingPath, t: float) -> int:
    """
    Right-continuous lookup of r(t).

    Raises:
        DomainError: If t is outside [0, horizon].
    """
    if not 0.0 <= t <= path.horizon:
        raise DomainError(f"t={t} outside [0, {path.horizon}]")
    return int(path.modes[np.searchsorted(path.jump_times, t, side="right")])


def modes_on_grid(path: SwitchingPath, times: np.ndarray) -> np.ndarray:
    """Vectorized `mode_at` over a grid already known to lie in [0, horizon]."""
    return path.modes[np.searchsorted(path.jump_times, times, side="right")]


def family_states_on_grid(path: SwitchingPath, times: np.ndarray) -> Optional[Tuple[FamilyState, ...]]:
    """Recorded family state active at each grid time, or None if the path carries none."""
    if path.family_states is None:
        return None
    intervals = np.searchsorted(path.jump_times, times, side="right")
    return tuple(path.family_states[int(k)] for k in intervals)
