# FILE: switchcert/dynamics/nu.py

"""
Weight functions nu(t) for nu-stability and their certificate constants.

alpha_nu bounds nu'/nu from above. The Theorem-4 beta_nu bounds
(1 - tau') nu(t - tau) / nu(t) from below; the Theorem-5 beta_nu bounds
nu(t) / nu(t - tau) from above.
"""

from __future__ import annotations

import logging
import math
from abc import ABC, abstractmethod
from typing import Callable, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from switchcert.dynamics.delays import AffineDelay, ConstantDelay, DelayFunction, _check_grid
from switchcert.exceptions import ConfigurationError, ValidationFailure

logger = logging.getLogger(__name__)

CLOSED_FORM_RTOL = 1e-6


class NuFunction(ABC):
    kind: str = "abstract"

    @abstractmethod
    def value(self, t):
        ...

    @abstractmethod
    def derivative(self, t):
        ...

    def log_derivative(self, t):
        """nu'(t) / nu(t)."""
        return np.asarray(self.derivative(t)) / np.asarray(self.value(t))

    def delay_ratio(self, t, delay: DelayFunction):
        """nu(t - tau(t)) / nu(t)."""
        return np.asarray(self.value(delay.lookup_time(t))) / np.asarray(self.value(t))

    def diverges(self) -> bool:
        return True

    def closed_form(self, delay: DelayFunction, horizon: float) -> Optional[dict]:
        """Analytic constants on [0, horizon], when known."""
        return None


class ExponentialNu(NuFunction):
    """nu(t) = exp(alpha t)."""

    kind = "exp"

    def __init__(self, alpha: float, allow_degenerate: bool = False):
        if alpha < 0 or (alpha == 0 and not allow_degenerate):
            raise ConfigurationError(f"exponential nu needs alpha > 0, got {alpha}", key="nu.alpha")
        self.alpha = float(alpha)

    def value(self, t):
        return np.exp(self.alpha * np.asarray(t, dtype=float))[()]

    def derivative(self, t):
        return self.alpha * self.value(t)

    def log_derivative(self, t):
        return np.full_like(np.asarray(t, dtype=float), self.alpha)[()]

    def delay_ratio(self, t, delay: DelayFunction):
        return np.exp(-self.alpha * np.asarray(delay.value(t), dtype=float))[()]

    def diverges(self) -> bool:
        return self.alpha > 0

    def closed_form(self, delay: DelayFunction, horizon: float) -> Optional[dict]:
        if not isinstance(delay, (ConstantDelay, AffineDelay)):
            return None
        return _monotone_closed_form(self, delay, horizon, alpha_nu=self.alpha)


class PowerNu(NuFunction):
    """nu(t) = (t + tau_b + 1)^alpha, so nu(-tau_b) = 1."""

    kind = "power"

    def __init__(self, alpha: float, tau_b: float):
        if not alpha > 0:
            raise ConfigurationError(f"power nu needs alpha > 0, got {alpha}", key="nu.alpha")
        if not (tau_b > 0 and math.isfinite(tau_b)):
            raise ConfigurationError(f"power nu needs a finite positive tau_b, got {tau_b}", key="nu.tau_b")
        self.alpha = float(alpha)
        self.tau_b = float(tau_b)

    def _shift(self, t):
        return np.asarray(t, dtype=float) + self.tau_b + 1.0

    def value(self, t):
        return (self._shift(t) ** self.alpha)[()]

    def derivative(self, t):
        return (self.alpha * self._shift(t) ** (self.alpha - 1.0))[()]

    def log_derivative(self, t):
        return (self.alpha / self._shift(t))[()]

    def delay_ratio(self, t, delay: DelayFunction):
        return ((self._shift(delay.lookup_time(t)) / self._shift(t)) ** self.alpha)[()]

    def closed_form(self, delay: DelayFunction, horizon: float) -> Optional[dict]:
        if not isinstance(delay, (ConstantDelay, AffineDelay)):
            return None
        return _monotone_closed_form(self, delay, horizon, alpha_nu=self.alpha / (self.tau_b + 1.0))


class LogNu(NuFunction):
    """nu(t) = ln(t + tau_b + offset)."""

    kind = "log"

    def __init__(self, tau_b: float, offset: float = 1.0):
        if not (tau_b > 0 and math.isfinite(tau_b)):
            raise ConfigurationError(f"log nu needs a finite positive tau_b, got {tau_b}", key="nu.tau_b")
        self.tau_b = float(tau_b)
        self.offset = float(offset)

    def _shift(self, t):
        return np.asarray(t, dtype=float) + self.tau_b + self.offset

    def value(self, t):
        return np.log(self._shift(t))[()]

    def derivative(self, t):
        return (1.0 / self._shift(t))[()]


class LogLogNu(NuFunction):
    """nu(t) = ln ln(t + tau_b + offset)."""

    kind = "loglog"

    def __init__(self, tau_b: float, offset: float = 3.0):
        if not (tau_b > 0 and math.isfinite(tau_b)):
            raise ConfigurationError(f"log-log nu needs a finite positive tau_b, got {tau_b}", key="nu.tau_b")
        self.tau_b = float(tau_b)
        self.offset = float(offset)

    def _shift(self, t):
        return np.asarray(t, dtype=float) + self.tau_b + self.offset

    def value(self, t):
        return np.log(np.log(self._shift(t)))[()]

    def derivative(self, t):
        s = self._shift(t)
        return (1.0 / (s * np.log(s)))[()]


class CustomNu(NuFunction):
    kind = "custom"

    def __init__(self, nu: Callable[[np.ndarray], np.ndarray], nu_prime: Callable[[np.ndarray], np.ndarray]):
        self._nu = nu
        self._nu_prime = nu_prime

    def value(self, t):
        return np.asarray(self._nu(np.asarray(t, dtype=float)), dtype=float)[()]

    def derivative(self, t):
        return np.asarray(self._nu_prime(np.asarray(t, dtype=float)), dtype=float)[()]


class NuConstants(BaseModel):
    """Grid estimates of the certificate constants, plus closed forms when known."""
    model_config = ConfigDict(frozen=True)

    kind: str
    alpha_nu: float
    beta_nu_thm4: float
    beta_nu_thm5: float
    closed_form: Optional[dict] = None
    nu_growth: float
    grid_spacing: float


def _monotone_closed_form(nu: NuFunction, delay: DelayFunction, horizon: float, alpha_nu: float) -> dict:
    # for these families both ratios are monotone in t, so the extrema sit at t = 0 or t = horizon
    ends = np.array([0.0, float(horizon)])
    ratio = np.asarray(nu.delay_ratio(ends, delay), dtype=float)
    slack = 1.0 - np.asarray(delay.derivative(ends), dtype=float) * np.ones(2)
    return {
        "alpha_nu": float(alpha_nu),
        "beta_nu_thm4": float(np.min(slack * ratio)),
        "beta_nu_thm5": float(np.max(1.0 / ratio)),
    }


def _close(a: float, b: float) -> bool:
    return abs(a - b) <= CLOSED_FORM_RTOL * max(abs(a), abs(b), 1e-300)


def nu_constants(nu: NuFunction, delay: DelayFunction, grid) -> NuConstants:
    """
    Estimate alpha_nu and both beta_nu on `grid`.

    Args:
        nu (NuFunction): Weight function.
        delay (DelayFunction): Delay entering the ratios.
        grid (array-like): Non-negative time grid.

    Returns:
        NuConstants: Grid estimates with closed forms for exp/power families.

    Raises:
        ConfigurationError: If t - tau(t) < -tau_b somewhere on the grid.
        ValidationFailure: If nu <= 0, nu does not diverge, or a closed form disagrees.
    """
    grid = _check_grid(grid)
    lookup = np.asarray(delay.lookup_time(grid), dtype=float) * np.ones_like(grid)
    if np.any(lookup < -delay.tau_b - 1e-12):
        t_bad = float(grid[np.argmin(lookup + delay.tau_b)])
        raise ConfigurationError(f"t - tau(t) drops below -tau_b at t={t_bad}", key="delay")

    if not nu.diverges():
        raise ValidationFailure(f"{nu.kind} nu does not tend to infinity", witness={"kind": nu.kind})

    values = np.asarray(nu.value(grid), dtype=float) * np.ones_like(grid)
    delayed = np.asarray(nu.value(lookup), dtype=float) * np.ones_like(grid)
    for label, series, times in (("nu(t)", values, grid), ("nu(t - tau(t))", delayed, lookup)):
        bad = np.flatnonzero(~(series > 0))
        if bad.size:
            t_bad = float(times[bad[0]])
            raise ValidationFailure(f"{label} must be positive; got {series[bad[0]]} at {t_bad}", witness={"t": t_bad})

    if isinstance(nu, CustomNu) and not values[-1] > values[0]:
        raise ValidationFailure("custom nu does not grow on the grid", witness={"t": float(grid[-1])})

    ratio = np.asarray(nu.delay_ratio(grid, delay), dtype=float) * np.ones_like(grid)
    tau_prime = np.asarray(delay.derivative(grid), dtype=float) * np.ones_like(grid)
    alpha_nu = float(np.max(np.asarray(nu.log_derivative(grid), dtype=float)))
    beta4 = float(np.min((1.0 - tau_prime) * ratio))
    beta5 = float(np.max(1.0 / ratio))

    closed = nu.closed_form(delay, float(grid[-1]))
    if closed is not None:
        for key, estimate in (("alpha_nu", alpha_nu), ("beta_nu_thm4", beta4), ("beta_nu_thm5", beta5)):
            if not _close(closed[key], estimate):
                raise ValidationFailure(
                    f"{key}: grid estimate {estimate!r} disagrees with closed form {closed[key]!r}",
                    witness={"key": key, "grid": estimate, "closed_form": closed[key]},
                )

    if beta4 <= 0:
        logger.warning(f"[nu_constants] Theorem-4 beta_nu = {beta4:.6g} is not positive")
    logger.debug(f"[nu_constants] {nu.kind}: alpha={alpha_nu:.6g} beta4={beta4:.6g} beta5={beta5:.6g}")
    return NuConstants(
        kind=nu.kind,
        alpha_nu=alpha_nu,
        beta_nu_thm4=beta4,
        beta_nu_thm5=beta5,
        closed_form=closed,
        nu_growth=float(values[-1] / values[0]),
        grid_spacing=float(np.max(np.diff(grid))) if grid.size > 1 else 0.0,
    )


def suggest_nu(delay: DelayFunction, alpha: float = 0.01) -> NuFunction:
    """
    Pick a weight family suited to the delay: exponential for a constant
    delay, power for a slowly growing affine one, logarithmic otherwise.
    """
    if isinstance(delay, ConstantDelay):
        return ExponentialNu(alpha)
    if isinstance(delay, AffineDelay) and delay.a < 1:
        return PowerNu(alpha, delay.tau_b)
    if not math.isfinite(delay.tau_b):
        raise ConfigurationError("no weight family fits a delay with infinite tau_b", key="delay")
    # offset e keeps nu(-tau_b) = 1 > 0
    return LogNu(delay.tau_b, offset=math.e)


def build_nu(kind: str, alpha: Optional[float], tau_b: float, offset: Optional[float] = None) -> NuFunction:
    """Construct a built-in weight function from configuration values."""
    if kind in ("exp", "power") and alpha is None:
        raise ConfigurationError(f"{kind} nu requires alpha", key="nu.alpha")
    if kind == "exp":
        return ExponentialNu(alpha)
    if kind == "power":
        return PowerNu(alpha, tau_b)
    if kind == "log":
        return LogNu(tau_b, offset=1.0 if offset is None else offset)
    if kind == "loglog":
        return LogLogNu(tau_b, offset=3.0 if offset is None else offset)
    raise ConfigurationError(f"unknown nu kind '{kind}'", key="nu.kind")
