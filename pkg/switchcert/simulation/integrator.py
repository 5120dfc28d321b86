# FILE: switchcert/simulation/integrator.py

"""
Euler-Maruyama for delayed switched systems.

The uniform grid k*h is refined with every switch instant so each step runs
in a single mode; Brownian increments are drawn with the actual step length.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np

from switchcert.dynamics.delays import DelayFunction
from switchcert.dynamics.network import StochasticSystem
from switchcert.exceptions import ConfigurationError, DivergenceError
from switchcert.simulation.segments import InitialSegment
from switchcert.simulation.trajectory import Trajectory, history_lookup
from switchcert.switching.paths import SwitchingPath, family_states_on_grid, modes_on_grid
from switchcert.utils.rng import trial_generators

logger = logging.getLogger(__name__)

DIVERGENCE_THRESHOLD = 1e8


def build_grid(path: SwitchingPath, h: float, horizon: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Uniform grid on [0, horizon] merged with the switch instants.

    Returns:
        tuple: (times, uniform_index) where times[uniform_index] are the uniform points.
    """
    steps = max(int(math.ceil(horizon / h - 1e-9)), 0)
    uniform = np.minimum(np.arange(steps + 1) * h, horizon)
    jumps = path.jump_times[path.jump_times <= horizon]
    times = np.union1d(uniform, jumps)
    return times, np.searchsorted(times, uniform)


def integrate(
    system: StochasticSystem,
    path: SwitchingPath,
    delay: DelayFunction,
    init: InitialSegment,
    h: float,
    horizon: float,
    seed: int,
    rng: Optional[np.random.Generator] = None,
    trial: Optional[int] = None,
) -> Trajectory:
    """
    Integrate one trajectory along a fixed switching path.

    Args:
        system (StochasticSystem): Network model or general system.
        path (SwitchingPath): Realized switching signal.
        delay (DelayFunction): tau(t).
        init (InitialSegment): phi on [-tau_b, 0].
        h (float): Uniform step.
        horizon (float): End time, at most `path.horizon`.
        seed (int): Root seed; the noise stream of trial 0 is used when `rng` is None.
        rng (np.random.Generator, optional): Explicit noise stream.
        trial (int, optional): Ensemble index, reported on divergence.

    Returns:
        Trajectory: States and modes on the refined grid.

    Raises:
        ConfigurationError: Bad step, horizon, dimensions, or a lookup before -tau_b.
        DivergenceError: If |x| exceeds 1e8 or becomes non-finite.
    """
    if not h > 0:
        raise ConfigurationError(f"step must be positive, got {h}", key="simulation.h")
    if horizon < 0 or horizon > path.horizon:
        raise ConfigurationError(f"horizon {horizon} outside [0, {path.horizon}]", key="simulation.horizon")
    if init.dimension != system.dimension:
        raise ConfigurationError(
            f"initial segment has dimension {init.dimension}, system has {system.dimension}",
            key="simulation.init",
        )
    if not math.isfinite(delay.tau_b):
        raise ConfigurationError("cannot simulate with an unbounded history depth", key="delay")
    if not init.covers(delay.tau_b):
        raise ConfigurationError(f"initial segment does not reach back to -tau_b={-delay.tau_b}",
                                 key="simulation.init")

    times, uniform_index = build_grid(path, h, horizon)
    lookup = np.asarray(delay.lookup_time(times), dtype=float) * np.ones_like(times)
    too_early = np.flatnonzero(lookup < -delay.tau_b)
    if too_early.size:
        t_bad = float(times[too_early[0]])
        raise ConfigurationError(f"delayed argument t - tau(t) = {lookup[too_early[0]]} < -tau_b at t={t_bad}",
                                 key="delay")

    modes = modes_on_grid(path, times)
    if modes.size and int(modes.max()) >= system.mode_count:
        raise ConfigurationError(f"path visits mode {int(modes.max())} but the system defines "
                                 f"{system.mode_count}", key="switching")

    rng = rng if rng is not None else trial_generators(seed, 0)[1]
    count = len(times)
    states = np.empty((count, system.dimension))
    states[0] = init(0.0)
    dts = np.diff(times)
    dW = rng.standard_normal((count - 1, system.noise_dim)) * np.sqrt(dts)[:, None]

    logger.debug(f"[integrate] {count} grid points, {path.jump_count} switches, h={h}")
    for j in range(count - 1):
        x = states[j]
        y = history_lookup(times, states, j, init, lookup[j], delay.tau_b)
        mode = int(modes[j])
        t = times[j]
        x_next = x + system.drift(x, y, mode, t) * dts[j] + system.diffusion(x, y, mode, t) @ dW[j]
        norm = float(np.max(np.abs(x_next)))
        if not norm <= DIVERGENCE_THRESHOLD:
            logger.warning(f"[integrate] divergence at t={times[j + 1]:.6g} (|x|={norm})")
            raise DivergenceError(time=float(times[j + 1]), trial=trial, norm=norm)
        states[j + 1] = x_next

    states.setflags(write=False)
    return Trajectory(
        times=times,
        states=states,
        modes=modes,
        seed=int(seed),
        step=float(h),
        uniform_index=uniform_index,
        initial_segment=init,
        tau_b=float(delay.tau_b),
        family_states=family_states_on_grid(path, times),
    )
