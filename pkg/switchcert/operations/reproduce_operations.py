# FILE: switchcert/operations/reproduce_operations.py

"""
End-to-end reproduction of the two-mode network example: certificate check,
convergence ensemble, stability classification and the unswitched mode-0
instability run.
"""

import logging
from typing import Any, Dict, Optional

import numpy as np

from switchcert.analysis.classification import classify_stability
from switchcert.analysis.ensemble import McStats, mc_ensemble
from switchcert.analysis.martingale import supermartingale_check
from switchcert.certificates.theorem4 import check_thm4
from switchcert.config.builders import Experiment, build_experiment
from switchcert.config.experiment import load_experiment
from switchcert.config.models import GeneralSettings
from switchcert.exceptions import ConfigurationError
from switchcert.operations.common import (
    apply_overrides,
    bundled_experiment_path,
    finish_run,
    resolve_output_dir,
    write_frame,
    write_report,
)
from switchcert.operations.simulation_operations import run_ensemble
from switchcert.switching.families import FixedSequence, RateMap
from switchcert.utils.error_handler import exception_response, success_response
from switchcert.utils.file_handler import get_full_path, write_json
from switchcert.utils.mixed_helpers import to_jsonable

logger = logging.getLogger(__name__)

REFERENCE_LAMBDA_MAX = {"constant": -0.8913, "affine": -1.8069}
LAMBDA_TOLERANCE = 0.05
FAST_STEP = 0.01

# affine curves are also written from t = 10 on
DECAY_WINDOW_START = {"constant": None, "affine": 10.0}

INSTABILITY_TRIALS = 50
INSTABILITY_HORIZON = 1000.0
INSTABILITY_STEP = 0.01
INSTABILITY_RECORD_STEP = 0.1
INSTABILITY_WINDOW_START = 500.0
INSTABILITY_FLOOR = 1e-3


def instability_run(experiment: Experiment, trials: int = INSTABILITY_TRIALS,
                    horizon: float = INSTABILITY_HORIZON, h: float = INSTABILITY_STEP,
                    record_step: Optional[float] = INSTABILITY_RECORD_STEP,
                    threads: int = 1) -> McStats:
    """
    Ensemble of the mode-0 subsystem without switching, same initial segment and delay.

    Args:
        experiment (Experiment): Built two-mode experiment.
        trials (int): Ensemble size.
        horizon (float): End time.
        h (float): Integration step.
        record_step (float, optional): Recording grid spacing.
        threads (int): Worker threads.

    Returns:
        McStats: Statistics of the frozen-mode ensemble.
    """
    logger.info(f"[instability_run] mode 0 frozen, {trials} trials to t={horizon}")
    return mc_ensemble(
        experiment.model.subsystem(0),
        FixedSequence([0], mode_count=1),
        RateMap.constant(1.0, 1),
        experiment.delay,
        experiment.init,
        experiment.nu,
        h=h,
        horizon=horizon,
        trials=trials,
        seed=experiment.config.simulation.seed,
        threads=threads,
        record_step=record_step,
    )


def reproduce_example(
    case: str,
    output_dir: Optional[str] = None,
    fast: bool = False,
    threads: Optional[int] = None,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
    include_instability: bool = True,
) -> Dict[str, Any]:
    """
    Reproduce the bundled example `case` and write the report bundle.

    Artifacts: 'thm4_report', 'decay_curve.csv' (plus 'decay_curve_window.csv'
    for the affine case), 'classification.json', 'instability.csv' (the
    mode-0 run from t = 500 on) and 'reproduce_summary.json'.

    Args:
        case (str): 'constant' or 'affine'.
        output_dir (str, optional): Overrides the configured output directory.
        fast (bool): Integrate with h = 0.01 instead of the reference 0.001.
        threads (int, optional): Worker threads, defaults to settings.
        trials (int, optional): Overrides the ensemble size.
        seed (int, optional): Overrides the root seed.
        include_instability (bool): Run the mode-0 ensemble.

    Returns:
        Dict[str, Any]: Standard response; `result["pass"]` is true iff the
        certificate passes and lambda_max matches the reference value.
    """
    try:
        if case not in REFERENCE_LAMBDA_MAX:
            raise ConfigurationError(f"unknown case '{case}', expected constant or affine", key="case")
        config_path = bundled_experiment_path(case)
        if fast:
            logger.warning(f"[reproduce] fast mode: h={FAST_STEP} instead of the reference step")
        config = apply_overrides(load_experiment(config_path), seed=seed,
                                 step=FAST_STEP if fast else None, trials=trials)
        experiment = build_experiment(config)
        directory = resolve_output_dir(config, output_dir)
        threads = threads or GeneralSettings().THREADS

        thm4 = check_thm4(experiment.model, experiment.thm4, experiment.family, experiment.rates,
                          tolerance=config.certificate.tolerance, relative_slack=config.certificate.relative_slack)
        expected = REFERENCE_LAMBDA_MAX[case]
        matches = abs(thm4.worst_lambda_max - expected) <= LAMBDA_TOLERANCE
        log = logger.info if matches else logger.warning
        log(f"[reproduce] lambda_max={thm4.worst_lambda_max:.4f}, reference {expected}")
        artifacts = write_report(config, directory, "thm4_report", thm4)

        stats = run_ensemble(experiment, threads=threads)
        classification = classify_stability(stats, experiment.nu, threshold=config.simulation.threshold,
                                            levels=config.simulation.level)
        artifacts += write_frame(config, directory, "decay_curve", stats.to_frame())
        window_start = DECAY_WINDOW_START[case]
        if window_start is not None:
            artifacts += write_frame(config, directory, "decay_curve_window", stats.window(window_start))
        artifacts.append(write_json(classification, get_full_path(directory, "classification.json")))

        summary: Dict[str, Any] = {
            "case": case,
            "fast": fast,
            "step": config.simulation.h,
            "lambda_max": thm4.worst_lambda_max,
            "reference_lambda_max": expected,
            "lambda_matches": matches,
            "thm4_pass": thm4.passed,
            "mc": stats.summary(),
            "classification": classification,
        }
        if stats.has_V:
            summary["supermartingale"] = supermartingale_check(stats)

        if include_instability:
            unstable = instability_run(experiment, threads=threads)
            tail = unstable.window(INSTABILITY_WINDOW_START)
            artifacts += write_frame(config, directory, "instability", tail)
            tail_min = float(np.min(tail["mean_x2"])) if len(tail) else float("nan")
            summary["instability"] = {
                "min_mean_x2_after_500": tail_min,
                "stays_away_from_zero": tail_min > INSTABILITY_FLOOR,
                "statistics": unstable.summary(),
            }

        passed = thm4.passed and matches
        summary["pass"] = passed
        artifacts.append(write_json(summary, get_full_path(directory, "reproduce_summary.json")))
        finish_run(directory, f"reproduce-{case}", config_path, config, artifacts)
        return success_response(f"[reproduce] case={case} lambda_max={thm4.worst_lambda_max:.4f} pass={passed}",
                                {"pass": passed, "summary": to_jsonable(summary), "artifacts": artifacts})
    except Exception as e:
        return exception_response(e, "reproduce")
