# FILE: switchcert/analysis/martingale.py

"""
Monte Carlo checks of the expectation identities behind the stability proofs:
E[V1] non-increasing, and Dynkin's formula E[V(T)] - V(0) = E int_0^T AV dt.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from switchcert.analysis.ensemble import McStats
from switchcert.analysis.lyapunov import LyapunovV1Spec, V1_series, generator_V1_series
from switchcert.dynamics.delays import DelayFunction
from switchcert.dynamics.network import StochasticSystem
from switchcert.exceptions import ConfigurationError
from switchcert.simulation.integrator import integrate
from switchcert.simulation.segments import InitialSegment
from switchcert.switching.families import RateMap, SwitchingFamily
from switchcert.switching.paths import sample_path
from switchcert.utils.numerics import compensated_mean
from switchcert.utils.rng import trial_generators

logger = logging.getLogger(__name__)

DEFAULT_SLACK_FACTOR = 10.0
DEFAULT_DYNKIN_CONSTANT = 1.0


class SupermartingaleReport(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    passed: bool = Field(alias="pass")
    max_increment: float = Field(description="largest rise of mean V over an earlier running minimum")
    worst_violation: float = Field(description="max of rise minus allowance; <= 0 on pass")
    worst_time: Optional[float] = None
    discretization_slack: float
    trials: int


class DynkinReport(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    passed: bool = Field(alias="pass")
    residual: float
    standard_error: float
    bound: float
    mean_V0: float
    mean_VT: float
    mean_integral: float
    trials: int
    step: float


def supermartingale_check(stats: McStats, slack_factor: float = DEFAULT_SLACK_FACTOR) -> SupermartingaleReport:
    """
    Check that the ensemble mean of V1 never rises above its running minimum
    by more than 3 combined standard errors plus slack_factor * h * max(mean V).

    Raises:
        ConfigurationError: If the statistics carry no V series.
    """
    if not stats.has_V:
        raise ConfigurationError("supermartingale check needs V1 statistics (certificate section)")
    mean, se = stats.mean_V, stats.se_V
    slack = slack_factor * stats.step * float(np.max(np.abs(mean))) if mean.size else 0.0

    best, best_se = mean[0], se[0]
    max_increment = 0.0
    worst = -math.inf
    worst_time = None
    for j in range(1, len(mean)):
        rise = mean[j] - best
        allowed = 3.0 * math.hypot(se[j], best_se) + slack
        max_increment = max(max_increment, float(rise))
        if rise - allowed > worst:
            worst = float(rise - allowed)
            worst_time = float(stats.times[j])
        if mean[j] < best:
            best, best_se = mean[j], se[j]
    if worst == -math.inf:
        worst = 0.0

    passed = worst <= 0.0
    log = logger.info if passed else logger.warning
    log(f"[supermartingale_check] pass={passed} worst={worst:.6g} max rise={max_increment:.6g}")
    return SupermartingaleReport(
        passed=passed,
        max_increment=max_increment,
        worst_violation=worst,
        worst_time=worst_time if not passed else None,
        discretization_slack=slack,
        trials=stats.trials,
    )


def dynkin_residual(
    spec: LyapunovV1Spec,
    model: StochasticSystem,
    family: SwitchingFamily,
    rates: RateMap,
    delay: DelayFunction,
    init: InitialSegment,
    h: float,
    horizon: float,
    trials: int,
    seed: int,
    initial_mode: int = 0,
    constant: float = DEFAULT_DYNKIN_CONSTANT,
    threads: int = 1,
) -> DynkinReport:
    """
    Estimate E[V1(T)] - V1(0) - E[int_0^T AV1 dt].

    The time integral is the trapezoid rule on each trajectory grid, with
    both endpoints of a step evaluated in that step's mode. The check passes
    iff |residual| <= 3 SE + constant * sqrt(h) * max(|mean V1(0)|, |mean V1(T)|).
    """
    if trials < 2:
        raise ConfigurationError("trials must be ≥ 2", key="simulation.trials")
    if delay is not spec.delay:
        spec = LyapunovV1Spec(spec.P, spec.Z, spec.Q, spec.nu, spec.nonlinearity, delay)

    def run_trial(trial: int):
        switching_rng, noise_rng = trial_generators(seed, trial)
        path = sample_path(family, rates, initial_mode, horizon, seed, rng=switching_rng)
        traj = integrate(model, path, delay, init, h, horizon, seed, rng=noise_rng, trial=trial)
        V = V1_series(spec, traj, np.array([0, len(traj.times) - 1]))
        left, right = generator_V1_series(spec, model, family, rates, traj)
        integral = float(np.sum(0.5 * np.diff(traj.times) * (left + right)))
        return V[0], V[1], integral

    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = np.array(list(pool.map(run_trial, range(trials))))

    V0, VT, integral = results[:, 0], results[:, 1], results[:, 2]
    per_trial = VT - V0 - integral
    residual = float(compensated_mean(per_trial))
    se = float(np.std(per_trial, ddof=1) / math.sqrt(trials))
    scale = max(abs(float(np.mean(V0))), abs(float(np.mean(VT))))
    bound = 3.0 * se + constant * math.sqrt(h) * scale
    passed = abs(residual) <= bound
    log = logger.info if passed else logger.warning
    log(f"[dynkin_residual] residual={residual:.6g} bound={bound:.6g} pass={passed}")
    return DynkinReport(
        passed=passed,
        residual=residual,
        standard_error=se,
        bound=bound,
        mean_V0=float(np.mean(V0)),
        mean_VT=float(np.mean(VT)),
        mean_integral=float(np.mean(integral)),
        trials=trials,
        step=float(h),
    )
