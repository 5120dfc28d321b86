# FILE: switchcert/operations/simulation_operations.py

import logging
import sys
from typing import Any, Dict, Optional

from switchcert.analysis.classification import classify_stability
from switchcert.analysis.ensemble import mc_ensemble
from switchcert.analysis.lyapunov import LyapunovV1Spec
from switchcert.analysis.martingale import supermartingale_check
from switchcert.config.models import GeneralSettings
from switchcert.operations.common import (
    finish_run,
    load_run,
    resolve_output_dir,
    write_frame,
    write_report,
)
from switchcert.simulation.integrator import integrate
from switchcert.switching.paths import sample_path
from switchcert.utils.error_handler import exception_response, success_response
from switchcert.utils.mixed_helpers import to_jsonable
from switchcert.utils.rng import trial_generators

logger = logging.getLogger(__name__)


def simulate_operation(
    config_path: str,
    output_dir: Optional[str] = None,
    seed: Optional[int] = None,
    step: Optional[float] = None,
) -> Dict[str, Any]:
    """
    Sample one switching path, integrate one trajectory along it and write
    'trajectory.csv' and 'switching_path.csv'.

    The streams are those of ensemble trial 0, so the trajectory equals the
    first trial of an `mc` run with the same seed.

    Args:
        config_path (str): Experiment JSON file.
        output_dir (str, optional): Overrides the configured output directory.
        seed (int, optional): Overrides simulation.seed.
        step (float, optional): Overrides simulation.h.

    Returns:
        Dict[str, Any]: Standard response; `result` holds the artifact paths,
        the jump count and the final state.
    """
    try:
        experiment = load_run(config_path, seed=seed, step=step)
        sim = experiment.config.simulation
        directory = resolve_output_dir(experiment.config, output_dir)

        switching_rng, noise_rng = trial_generators(sim.seed, 0)
        path = sample_path(experiment.family, experiment.rates, experiment.config.switching.initial_mode,
                           sim.horizon, sim.seed, rng=switching_rng)
        traj = integrate(experiment.model, path, experiment.delay, experiment.init, sim.h, sim.horizon,
                         sim.seed, rng=noise_rng, trial=0)

        artifacts = write_frame(experiment.config, directory, "trajectory", traj.to_frame())
        artifacts += write_frame(experiment.config, directory, "switching_path", path.to_table())
        finish_run(directory, "simulate", config_path, experiment.config, artifacts)
        return success_response(
            f"[simulate] {path.jump_count} jumps, {len(traj.times)} grid points written to '{directory}'",
            {
                "artifacts": artifacts,
                "jumps": path.jump_count,
                "final_state": traj.states[-1].tolist(),
            },
        )
    except Exception as e:
        return exception_response(e, "simulate")


def run_ensemble(experiment, threads: Optional[int] = None, progress: Optional[bool] = None,
                 with_v1: bool = True):
    """Run `mc_ensemble` for an experiment, adding V1 statistics when a Theorem-4 certificate exists."""
    settings = GeneralSettings()
    sim = experiment.config.simulation
    v1_spec = None
    if with_v1 and experiment.thm4 is not None:
        v1_spec = LyapunovV1Spec.from_certificate(experiment.thm4, experiment.nu,
                                                  experiment.model.nonlinearity, experiment.delay)
    return mc_ensemble(
        experiment.model,
        experiment.family,
        experiment.rates,
        experiment.delay,
        experiment.init,
        experiment.nu,
        h=sim.h,
        horizon=sim.horizon,
        trials=sim.trials,
        seed=sim.seed,
        epsilons=sim.epsilons,
        initial_mode=experiment.config.switching.initial_mode,
        v1_spec=v1_spec,
        threads=threads or settings.THREADS,
        record_step=sim.record_step,
        progress=(settings.PROGRESS and sys.stderr.isatty()) if progress is None else progress,
    )


def mc_operation(
    config_path: str,
    output_dir: Optional[str] = None,
    seed: Optional[int] = None,
    step: Optional[float] = None,
    trials: Optional[int] = None,
    threads: Optional[int] = None,
) -> Dict[str, Any]:
    """
    Run the Monte Carlo ensemble and write 'mc_stats.csv' and 'mc_summary.json'.

    The summary carries the ensemble statistics, the advisory stability
    classification and, when the experiment has a Theorem-4 certificate,
    the supermartingale check of E[V1].

    Returns:
        Dict[str, Any]: Standard response; `result` holds the summary and the artifact paths.
    """
    try:
        experiment = load_run(config_path, seed=seed, step=step, trials=trials)
        sim = experiment.config.simulation
        directory = resolve_output_dir(experiment.config, output_dir)

        stats = run_ensemble(experiment, threads=threads)
        classification = classify_stability(stats, experiment.nu, threshold=sim.threshold, levels=sim.level)
        summary: Dict[str, Any] = {
            "statistics": stats.summary(),
            "classification": classification,
        }
        if stats.has_V:
            summary["supermartingale"] = supermartingale_check(stats)

        artifacts = write_frame(experiment.config, directory, "mc_stats", stats.to_frame())
        artifacts += write_report(experiment.config, directory, "mc_summary", summary)
        finish_run(directory, "mc", config_path, experiment.config, artifacts)
        return success_response(
            f"[mc] {stats.trials} trials, final mean |x|^2 = {stats.mean_x2[-1]:.6g}",
            {"summary": to_jsonable(summary), "artifacts": artifacts},
        )
    except Exception as e:
        return exception_response(e, "mc")
