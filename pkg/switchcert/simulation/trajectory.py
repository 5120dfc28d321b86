# FILE: switchcert/simulation/trajectory.py

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import pandas as pd

from switchcert.exceptions import DomainError
from switchcert.simulation.segments import InitialSegment
from switchcert.switching.families import FamilyState


def history_lookup(
    times: np.ndarray,
    states: np.ndarray,
    current_index: int,
    init: InitialSegment,
    t: float,
    tau_b: float = np.inf,
) -> np.ndarray:
    """
    Delayed state x(t) from stored history.

    Args:
        times (np.ndarray): Grid, filled up to `current_index`.
        states (np.ndarray): States aligned with `times`.
        current_index (int): Last filled grid index.
        init (InitialSegment): phi, used for t <= 0.
        t (float): Query time in [-tau_b, times[current_index]].
        tau_b (float): History depth.

    Returns:
        np.ndarray: phi(t) for t <= 0, the stored state at a grid point,
        and linear interpolation between grid points otherwise.

    Raises:
        DomainError: If t is below -tau_b or past the current time.
    """
    if t < -tau_b:
        raise DomainError(f"history lookup at t={t} precedes -tau_b={-tau_b}")
    if t <= 0.0:
        return init(t)
    j = int(np.searchsorted(times[: current_index + 1], t, side="right")) - 1
    if times[j] == t:
        return states[j]
    if j >= current_index:
        raise DomainError(f"history lookup at t={t} is past the current time {times[current_index]}")
    a, b = states[j], states[j + 1]
    w = (t - times[j]) / (times[j + 1] - times[j])
    return a + w * (b - a)


@dataclass(frozen=True)
class Trajectory:
    """
    One realized path of the state on a switch-refined grid.

    Attributes:
        times (np.ndarray): Grid with times[0] = 0, spacing <= step.
        states (np.ndarray): (len(times), n) states.
        modes (np.ndarray): Mode active on [times[j], times[j+1]).
        seed (int): Root seed of the run.
        step (float): Uniform step h.
        uniform_index (np.ndarray): Indices of the uniform points k*h in `times`.
        initial_segment (InitialSegment): phi on [-tau_b, 0].
        tau_b (float): History depth used by lookups.
        family_states (tuple, optional): Switching family state at each grid time.
    """
    times: np.ndarray
    states: np.ndarray
    modes: np.ndarray
    seed: int
    step: float
    uniform_index: np.ndarray
    initial_segment: InitialSegment
    tau_b: float
    family_states: Optional[Tuple[FamilyState, ...]] = None

    @property
    def dimension(self) -> int:
        return self.states.shape[1]

    @property
    def horizon(self) -> float:
        return float(self.times[-1])

    def index_of(self, t: float) -> int:
        """Index of grid time `t`; raises DomainError when `t` is not on the grid."""
        j = int(np.searchsorted(self.times, t))
        if j >= len(self.times) or self.times[j] != t:
            raise DomainError(f"t={t} is not on the trajectory grid")
        return j

    def state_at(self, t: float) -> np.ndarray:
        return history_lookup(self.times, self.states, len(self.times) - 1, self.initial_segment, t, self.tau_b)

    def to_frame(self) -> pd.DataFrame:
        """Columns t, mode, x1..xn."""
        frame = pd.DataFrame(self.states, columns=[f"x{i + 1}" for i in range(self.dimension)])
        frame.insert(0, "mode", self.modes)
        frame.insert(0, "t", self.times)
        return frame
