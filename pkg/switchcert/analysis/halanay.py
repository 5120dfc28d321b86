# FILE: switchcert/analysis/halanay.py

"""
Comparison dynamics  u' = -alpha(t) u + beta(t) max_{[t - tau(t), t]} u + J0,
integrated by explicit Euler, and the bound sup u <= max(J0 / eta, u0).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from switchcert.dynamics.delays import DelayFunction
from switchcert.exceptions import ConfigurationError, DomainError, ValidationFailure

logger = logging.getLogger(__name__)

SLACK_FACTOR = 10.0


@dataclass(frozen=True)
class HalanayProblem:
    """
    Attributes:
        alpha, beta (Callable[[float], float]): Positive rate functions.
        eta (float): Claimed lower bound of alpha - beta.
        j0 (float): Constant forcing, >= 0.
        delay (DelayFunction): Window length tau(t).
        u0 (float): History value on [-tau_b, 0].
    """
    alpha: Callable[[float], float]
    beta: Callable[[float], float]
    eta: float
    j0: float
    delay: DelayFunction
    u0: float

    def __post_init__(self) -> None:
        if not self.eta > 0:
            raise ConfigurationError(f"eta must be positive, got {self.eta}", key="halanay.eta")
        if self.j0 < 0:
            raise ConfigurationError(f"J0 must be non-negative, got {self.j0}", key="halanay.j0")
        if self.u0 < 0:
            raise ConfigurationError(f"u0 must be non-negative, got {self.u0}", key="halanay.u0")

    @classmethod
    def constant(cls, alpha: float, beta: float, j0: float, delay: DelayFunction, u0: float,
                 eta: float = None) -> HalanayProblem:
        """Constant rates; eta defaults to alpha - beta."""
        return cls(
            alpha=lambda t: alpha,
            beta=lambda t: beta,
            eta=alpha - beta if eta is None else eta,
            j0=j0,
            delay=delay,
            u0=u0,
        )

    @property
    def bound(self) -> float:
        return max(self.j0 / self.eta, self.u0)


@dataclass(frozen=True)
class HalanaySeries:
    times: np.ndarray
    u: np.ndarray


class HalanayReport(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    passed: bool = Field(alias="pass")
    bound: float
    sup_u: float
    final_u: float
    max_violation: float
    allowed: float
    min_gap: float = Field(description="min over the grid of alpha - beta")
    eta: float
    step: float
    horizon: float


def _grid(h: float, horizon: float) -> np.ndarray:
    if not h > 0:
        raise ConfigurationError(f"step must be positive, got {h}", key="halanay.h")
    steps = max(int(math.ceil(horizon / h - 1e-9)), 0)
    return np.minimum(np.arange(steps + 1) * h, horizon)


def halanay_integrate(p: HalanayProblem, h: float, horizon: float) -> HalanaySeries:
    """
    Explicit Euler for the comparison dynamics with equality.

    The window maximum runs over all stored grid points in [t - tau(t), t],
    plus u0 when the window reaches below 0.

    Raises:
        DomainError: If a window starts before -tau_b.
    """
    times = _grid(h, horizon)
    u = np.empty_like(times)
    u[0] = p.u0
    tau_b = p.delay.tau_b
    for k in range(len(times) - 1):
        t = times[k]
        start = float(p.delay.lookup_time(t))
        if start < -tau_b:
            raise DomainError(f"window at t={t} starts at {start} < -tau_b={-tau_b}")
        first = int(np.searchsorted(times, start, side="left"))
        window = float(np.max(u[first:k + 1]))
        if start < 0:
            window = max(window, p.u0)
        u[k + 1] = u[k] + (times[k + 1] - t) * (-p.alpha(t) * u[k] + p.beta(t) * window + p.j0)
    return HalanaySeries(times=times, u=u)


def halanay_bound_check(p: HalanayProblem, h: float, horizon: float) -> HalanayReport:
    """
    Integrate and compare against max(J0 / eta, u0).

    Raises:
        ValidationFailure: If alpha - beta < eta somewhere on the grid.
    """
    times = _grid(h, horizon)
    alpha = np.array([p.alpha(t) for t in times], dtype=float)
    beta = np.array([p.beta(t) for t in times], dtype=float)
    gap = alpha - beta
    if np.any(gap < p.eta):
        j = int(np.argmin(gap))
        raise ValidationFailure(
            f"alpha - beta = {gap[j]:.6g} < eta = {p.eta} at t={times[j]}",
            witness={"t": float(times[j]), "alpha": float(alpha[j]), "beta": float(beta[j])},
        )

    series = halanay_integrate(p, h, horizon)
    bound = p.bound
    sup_u = float(np.max(series.u))
    violation = sup_u - bound
    allowed = SLACK_FACTOR * h * float(np.max(alpha)) * max(sup_u, bound)
    passed = violation <= allowed
    log = logger.info if passed else logger.warning
    log(f"[halanay_bound_check] sup u={sup_u:.6g} bound={bound:.6g} pass={passed}")
    return HalanayReport(
        passed=passed,
        bound=bound,
        sup_u=sup_u,
        final_u=float(series.u[-1]),
        max_violation=float(violation),
        allowed=allowed,
        min_gap=float(np.min(gap)),
        eta=p.eta,
        step=float(h),
        horizon=float(horizon),
    )
