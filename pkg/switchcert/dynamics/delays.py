# FILE: switchcert/dynamics/delays.py

"""
Time-varying delays tau(t) with tau_* = inf tau(t) and tau_b = sup (tau(t) - t).
"""

from __future__ import annotations

import logging
import math
from abc import ABC, abstractmethod
from typing import Callable, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from switchcert.exceptions import ConfigurationError, ValidationFailure

logger = logging.getLogger(__name__)

DEFAULT_GRID_POINTS = 2001


class DelayFunction(ABC):
    """Base class for delays. `value` and `derivative` accept scalars or arrays."""

    kind: str = "abstract"
    tau_star: float
    tau_b: float

    @abstractmethod
    def value(self, t):
        ...

    @abstractmethod
    def derivative(self, t):
        ...

    def lookup_time(self, t):
        """Argument of the delayed state, t - tau(t)."""
        return t - self.value(t)


class ConstantDelay(DelayFunction):
    kind = "constant"

    def __init__(self, c: float):
        if not c > 0:
            raise ConfigurationError(f"constant delay must be positive, got {c}", key="delay.c")
        self.c = float(c)
        self.tau_star = self.c
        # sup over t >= 0 of c - t is attained at t = 0
        self.tau_b = self.c

    def value(self, t):
        return np.full_like(np.asarray(t, dtype=float), self.c)[()]

    def derivative(self, t):
        return np.zeros_like(np.asarray(t, dtype=float))[()]


class AffineDelay(DelayFunction):
    """tau(t) = a t + b. Slopes outside [0, 1) need `allow_fast=True`."""

    kind = "affine"

    def __init__(self, a: float, b: float, allow_fast: bool = False):
        if not b > 0:
            raise ConfigurationError(f"affine delay intercept must be positive, got {b}", key="delay.b")
        if a < 0:
            raise ConfigurationError(f"affine delay slope must be non-negative, got {a}", key="delay.a")
        if a >= 1 and not allow_fast:
            raise ConfigurationError(f"affine delay slope {a} >= 1 requires allow_fast", key="delay.a")
        self.a = float(a)
        self.b = float(b)
        self.allow_fast = allow_fast
        self.tau_star = self.b
        # (a - 1) t + b is maximal at t = 0 unless a > 1
        self.tau_b = self.b if self.a <= 1 else math.inf

    def value(self, t):
        return self.a * np.asarray(t, dtype=float)[()] + self.b

    def derivative(self, t):
        return np.full_like(np.asarray(t, dtype=float), self.a)[()]


class CustomDelay(DelayFunction):
    """User-supplied tau and tau'. Declared constants are checked by `validate_delay`."""

    kind = "custom"

    def __init__(
        self,
        tau: Callable[[np.ndarray], np.ndarray],
        tau_prime: Callable[[np.ndarray], np.ndarray],
        tau_star: float,
        tau_b: float,
    ):
        if not (tau_star > 0 and tau_b > 0):
            raise ConfigurationError("custom delay needs positive tau_star and tau_b", key="delay")
        self._tau = tau
        self._tau_prime = tau_prime
        self.tau_star = float(tau_star)
        self.tau_b = float(tau_b)

    def value(self, t):
        return np.asarray(self._tau(np.asarray(t, dtype=float)), dtype=float)[()]

    def derivative(self, t):
        return np.asarray(self._tau_prime(np.asarray(t, dtype=float)), dtype=float)[()]


class DelayReport(BaseModel):
    """Outcome of `validate_delay`; a fast-varying delay does not pass."""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    passed: bool = Field(alias="pass")
    kind: str
    tau_star: float
    tau_b: float
    tau_star_est: float
    tau_b_est: float
    max_discrepancy: float
    max_tau_prime: float
    fast_varying: bool = Field(description="tau'(t) >= 1 somewhere on the grid")
    grid_spacing: float
    grid_points: int


def default_grid(horizon: float, points: int = DEFAULT_GRID_POINTS) -> np.ndarray:
    """Uniform validation grid on [0, horizon]."""
    if horizon < 0:
        raise ConfigurationError(f"grid horizon must be non-negative, got {horizon}")
    return np.linspace(0.0, horizon, points)


def _check_grid(grid) -> np.ndarray:
    grid = np.asarray(grid, dtype=float).reshape(-1)
    if grid.size == 0:
        raise ConfigurationError("validation grid is empty")
    if np.any(grid < 0):
        raise ConfigurationError("validation grid must lie in [0, horizon]")
    return grid


def validate_delay(delay: DelayFunction, grid) -> DelayReport:
    """
    Confirm the declared tau_star and tau_b against grid extrema.

    The grid supremum of tau(t) - t is a lower estimate of tau_b; the
    discrepancy is reported, not enforced, because the true sup can sit
    off-grid or at infinity.

    Raises:
        ValidationFailure: If tau(t) <= 0 somewhere on the grid.
    """
    grid = _check_grid(grid)
    tau = np.asarray(delay.value(grid), dtype=float) * np.ones_like(grid)
    tau_prime = np.asarray(delay.derivative(grid), dtype=float) * np.ones_like(grid)

    bad = np.flatnonzero(~(tau > 0))
    if bad.size:
        t_bad = float(grid[bad[0]])
        raise ValidationFailure(f"tau(t) must be positive; tau({t_bad}) = {tau[bad[0]]}", witness={"t": t_bad})

    tau_star_est = float(tau.min())
    tau_b_est = float((tau - grid).max())
    discrepancies = [abs(delay.tau_star - tau_star_est)]
    if math.isfinite(delay.tau_b):
        discrepancies.append(abs(delay.tau_b - tau_b_est))
    max_tau_prime = float(tau_prime.max())
    fast = bool(max_tau_prime >= 1.0)
    if fast:
        logger.warning(f"[validate_delay] tau' reaches {max_tau_prime} >= 1; the Theorem-4 beta_nu is non-positive")

    spacing = float(np.max(np.diff(grid))) if grid.size > 1 else 0.0
    return DelayReport(
        passed=not fast,
        kind=delay.kind,
        tau_star=delay.tau_star,
        tau_b=delay.tau_b,
        tau_star_est=tau_star_est,
        tau_b_est=tau_b_est,
        max_discrepancy=float(max(discrepancies)),
        max_tau_prime=max_tau_prime,
        fast_varying=fast,
        grid_spacing=spacing,
        grid_points=int(grid.size),
    )


def build_delay(kind: str, c: Optional[float] = None, a: Optional[float] = None,
                b: Optional[float] = None, allow_fast: bool = False) -> DelayFunction:
    """Construct a built-in delay from configuration values."""
    if kind == "constant":
        if c is None:
            raise ConfigurationError("constant delay requires c", key="delay.c")
        return ConstantDelay(c)
    if kind == "affine":
        if a is None or b is None:
            raise ConfigurationError("affine delay requires a and b", key="delay")
        return AffineDelay(a, b, allow_fast=allow_fast)
    raise ConfigurationError(f"unknown delay kind '{kind}'", key="delay.kind")
