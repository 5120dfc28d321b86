# FILE: switchcert/analysis/ensemble.py

"""
Monte Carlo ensembles of (switching path, trajectory) pairs.

Trial i draws its switching path and its Brownian increments from two
substreams keyed by i, and results are reduced in trial order, so the
statistics do not depend on the worker count.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from tqdm import tqdm

from switchcert.analysis.lyapunov import LyapunovV1Spec, V1_series
from switchcert.dynamics.delays import DelayFunction
from switchcert.dynamics.network import StochasticSystem
from switchcert.dynamics.nu import NuFunction
from switchcert.exceptions import ConfigurationError, DivergenceError
from switchcert.simulation.integrator import integrate
from switchcert.simulation.segments import InitialSegment
from switchcert.switching.families import RateMap, SwitchingFamily
from switchcert.switching.paths import sample_path
from switchcert.utils.numerics import compensated_mean
from switchcert.utils.rng import trial_generators

logger = logging.getLogger(__name__)


@dataclass
class TrialResult:
    trial: int
    x2: Optional[np.ndarray] = None
    V: Optional[np.ndarray] = None
    exceed: Optional[np.ndarray] = None
    divergence: Optional[DivergenceError] = None


@dataclass
class McStats:
    """
    Ensemble statistics on the recording grid.

    Attributes:
        times (np.ndarray): Recording grid.
        mean_x2, se_x2 (np.ndarray): Mean of |x|^2 and its standard error.
        nu_mean_x2 (np.ndarray): nu(t) * mean_x2.
        mean_V, se_V, sup_V (np.ndarray, optional): V1 mean, standard error and
            maximum over trials, when a V1 spec was supplied.
        exceedance (dict[float, np.ndarray]): Frequency of |x(t)| > eps per eps.
        trials (int): Trials entering the means.
        diverged (int): Trials excluded after a divergence.
        diverged_trials (list[int]): Their indices.
        step (float): Integration step h.
    """
    times: np.ndarray
    mean_x2: np.ndarray
    se_x2: np.ndarray
    nu_mean_x2: np.ndarray
    trials: int
    step: float
    mean_V: Optional[np.ndarray] = None
    se_V: Optional[np.ndarray] = None
    sup_V: Optional[np.ndarray] = None
    exceedance: Dict[float, np.ndarray] = field(default_factory=dict)
    diverged: int = 0
    diverged_trials: List[int] = field(default_factory=list)

    @property
    def has_V(self) -> bool:
        return self.mean_V is not None

    def to_frame(self) -> pd.DataFrame:
        """Columns t, mean_x2, se_x2, nu_mean_x2[, mean_V, se_V, sup_V], exceed_eps1, ..."""
        columns = {
            "t": self.times,
            "mean_x2": self.mean_x2,
            "se_x2": self.se_x2,
            "nu_mean_x2": self.nu_mean_x2,
        }
        if self.has_V:
            columns.update(mean_V=self.mean_V, se_V=self.se_V, sup_V=self.sup_V)
        for i, eps in enumerate(sorted(self.exceedance), start=1):
            columns[f"exceed_eps{i}"] = self.exceedance[eps]
        return pd.DataFrame(columns)

    def window(self, start: float) -> pd.DataFrame:
        """Rows with t >= start."""
        frame = self.to_frame()
        return frame[frame["t"] >= start].reset_index(drop=True)

    def summary(self) -> Dict:
        return {
            "trials": self.trials,
            "diverged": self.diverged,
            "diverged_trials": list(self.diverged_trials),
            "step": self.step,
            "horizon": float(self.times[-1]),
            "final_mean_x2": float(self.mean_x2[-1]),
            "epsilons": sorted(self.exceedance),
            "sup_nu_mean_x2": float(np.max(self.nu_mean_x2)),
            "sup_V": None if self.sup_V is None else float(np.max(self.sup_V)),
        }


def recording_stride(h: float, record_step: Optional[float]) -> int:
    """Number of integration steps per recorded point."""
    if record_step is None:
        return 1
    ratio = record_step / h
    stride = int(round(ratio))
    if stride < 1 or abs(ratio - stride) > 1e-9 * max(1.0, ratio):
        raise ConfigurationError(f"record step {record_step} must be a multiple of h={h}",
                                 key="simulation.record_step")
    return stride


def _standard_error(values: np.ndarray) -> np.ndarray:
    return np.std(values, axis=0, ddof=1) / math.sqrt(values.shape[0])


def mc_ensemble(
    model: StochasticSystem,
    family: SwitchingFamily,
    rates: RateMap,
    delay: DelayFunction,
    init: InitialSegment,
    nu: NuFunction,
    h: float,
    horizon: float,
    trials: int,
    seed: int,
    epsilons: Sequence[float] = (),
    initial_mode: int = 0,
    v1_spec: Optional[LyapunovV1Spec] = None,
    threads: int = 1,
    record_step: Optional[float] = None,
    progress: bool = False,
) -> McStats:
    """
    Run `trials` independent simulations and aggregate their statistics.

    Args:
        model (StochasticSystem): System to integrate.
        family (SwitchingFamily): Mode-sequence law.
        rates (RateMap): Cox intensities.
        delay (DelayFunction): tau(t).
        init (InitialSegment): phi.
        nu (NuFunction): Weight for nu * mean |x|^2.
        h (float): Integration step.
        horizon (float): End time.
        trials (int): Ensemble size, at least 2.
        seed (int): Root seed.
        epsilons (Sequence[float]): Exceedance levels.
        initial_mode (int): xi^0 of every trial.
        v1_spec (LyapunovV1Spec, optional): Adds V1 statistics.
        threads (int): Worker threads.
        record_step (float, optional): Recording grid spacing, a multiple of h.
        progress (bool): Show a tqdm progress bar.

    Returns:
        McStats: Aggregated statistics over the non-diverged trials.

    Raises:
        ConfigurationError: If trials < 2 or threads < 1.
        DivergenceError: If fewer than two trials stay finite.
    """
    if trials < 2:
        raise ConfigurationError("trials must be ≥ 2", key="simulation.trials")
    if threads < 1:
        raise ConfigurationError(f"threads must be >= 1, got {threads}")
    eps = sorted(float(e) for e in epsilons)
    if any(e <= 0 for e in eps):
        raise ConfigurationError("exceedance levels must be positive", key="simulation.epsilons")
    stride = recording_stride(h, record_step)

    def run_trial(trial: int) -> TrialResult:
        switching_rng, noise_rng = trial_generators(seed, trial)
        path = sample_path(family, rates, initial_mode, horizon, seed, rng=switching_rng)
        try:
            traj = integrate(model, path, delay, init, h, horizon, seed, rng=noise_rng, trial=trial)
        except DivergenceError as e:
            return TrialResult(trial=trial, divergence=e)
        idx = traj.uniform_index[::stride]
        states = traj.states[idx]
        norms2 = np.einsum("ij,ij->i", states, states)
        result = TrialResult(trial=trial, x2=norms2)
        if eps:
            result.exceed = np.sqrt(norms2)[None, :] > np.asarray(eps)[:, None]
        if v1_spec is not None:
            result.V = V1_series(v1_spec, traj, idx)
        return result

    logger.info(f"[mc_ensemble] {trials} trials, h={h}, horizon={horizon}, threads={threads}")
    with ThreadPoolExecutor(max_workers=threads) as pool:
        iterator = pool.map(run_trial, range(trials))
        results = list(tqdm(iterator, total=trials, desc="trials", disable=not progress))

    finite = [r for r in results if r.divergence is None]
    diverged = [r for r in results if r.divergence is not None]
    for r in diverged:
        logger.warning(f"[mc_ensemble] trial {r.trial} diverged at t={r.divergence.time:.6g}")
    if len(finite) < 2:
        first = diverged[0].divergence
        raise DivergenceError(time=first.time, trial=first.trial, norm=first.norm)

    steps = max(int(math.ceil(horizon / h - 1e-9)), 0)
    times = np.minimum(np.arange(steps + 1) * h, horizon)[::stride]
    x2 = np.stack([r.x2 for r in finite])
    mean_x2 = compensated_mean(x2, axis=0)
    stats = McStats(
        times=times,
        mean_x2=mean_x2,
        se_x2=_standard_error(x2),
        nu_mean_x2=np.asarray(nu.value(times), dtype=float) * mean_x2,
        trials=len(finite),
        step=float(h),
        exceedance={
            e: compensated_mean(np.stack([r.exceed[i] for r in finite]).astype(float), axis=0)
            for i, e in enumerate(eps)
        },
        diverged=len(diverged),
        diverged_trials=[r.trial for r in diverged],
    )
    if v1_spec is not None:
        V = np.stack([r.V for r in finite])
        stats.mean_V = compensated_mean(V, axis=0)
        stats.se_V = _standard_error(V)
        stats.sup_V = np.max(V, axis=0)
    logger.info(f"[mc_ensemble] final mean |x|^2 = {mean_x2[-1]:.6g} ({stats.diverged} diverged)")
    return stats
