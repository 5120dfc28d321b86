# FILE: switchcert/simulation/segments.py

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Sequence

import numpy as np

from switchcert.exceptions import ConfigurationError


class InitialSegment(ABC):
    """Initial history phi on [lower, 0]."""

    kind: str = "abstract"
    dimension: int
    lower: float

    @abstractmethod
    def __call__(self, t: float) -> np.ndarray:
        ...

    def covers(self, tau_b: float) -> bool:
        return self.lower <= -tau_b

    def is_zero(self) -> bool:
        return False


class ConstantSegment(InitialSegment):
    kind = "constant"

    def __init__(self, value: Sequence[float]):
        self.value = np.asarray(value, dtype=float).reshape(-1)
        self.dimension = self.value.shape[0]
        self.lower = -np.inf
        self.value.setflags(write=False)

    def __call__(self, t: float) -> np.ndarray:
        return self.value

    def is_zero(self) -> bool:
        return not np.any(self.value)


class InterpolatedSegment(InitialSegment):
    """Piecewise-linear phi through samples (times ascending, last time 0)."""

    kind = "interpolated"

    def __init__(self, times: Sequence[float], values: Sequence[Sequence[float]]):
        self.times = np.asarray(times, dtype=float).reshape(-1)
        self.values = np.atleast_2d(np.asarray(values, dtype=float))
        if self.values.shape[0] != self.times.shape[0]:
            raise ConfigurationError("initial segment needs one state per sample time", key="simulation.init")
        if self.times.size == 0 or self.times[-1] != 0.0 or np.any(np.diff(self.times) <= 0):
            raise ConfigurationError("initial segment times must increase strictly and end at 0",
                                     key="simulation.init.times")
        self.dimension = self.values.shape[1]
        self.lower = float(self.times[0])

    def __call__(self, t: float) -> np.ndarray:
        return np.array([np.interp(t, self.times, self.values[:, i]) for i in range(self.dimension)])

    def is_zero(self) -> bool:
        return not np.any(self.values)
