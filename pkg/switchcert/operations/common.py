# FILE: switchcert/operations/common.py

import logging
import os
from typing import Any, Dict, List, Optional

from switchcert.config.builders import Experiment, build_experiment
from switchcert.config.experiment import ExperimentConfig, load_experiment
from switchcert.config.models import GeneralSettings
from switchcert.utils.file_handler import (
    ensure_output_dir,
    get_full_path,
    write_json,
    write_run_metadata,
    write_table,
    write_text_report,
)

logger = logging.getLogger(__name__)

BUNDLED_EXPERIMENTS = os.path.join(os.path.dirname(os.path.dirname(__file__)), "data", "experiments")


def bundled_experiment_path(case: str) -> str:
    """Path of a configuration shipped with the package."""
    return os.path.join(BUNDLED_EXPERIMENTS, f"{case}_delay.json")


def apply_overrides(
    config: ExperimentConfig,
    seed: Optional[int] = None,
    step: Optional[float] = None,
    trials: Optional[int] = None,
) -> ExperimentConfig:
    """Return a copy with command-line overrides applied to the simulation section."""
    update: Dict[str, Any] = {}
    if seed is not None:
        update["seed"] = seed
    if trials is not None:
        update["trials"] = trials
    if step is not None:
        update["h"] = step
        record = config.simulation.record_step
        if record is not None and record <= step:
            update["record_step"] = None
    if not update:
        return config
    simulation = config.simulation.model_copy(update=update)
    return config.model_copy(update={"simulation": simulation})


def load_run(
    config_path: str,
    seed: Optional[int] = None,
    step: Optional[float] = None,
    trials: Optional[int] = None,
) -> Experiment:
    """Load, override and build an experiment."""
    config = apply_overrides(load_experiment(config_path), seed=seed, step=step, trials=trials)
    return build_experiment(config)


def resolve_output_dir(config: ExperimentConfig, output_dir: Optional[str]) -> str:
    """Command line first, then the config's output section, then settings."""
    directory = output_dir or config.output.directory or GeneralSettings().OUTPUT_DIR
    return ensure_output_dir(directory)


def write_report(config: ExperimentConfig, directory: str, stem: str, report: Any) -> List[str]:
    """Write `report` in every configured structured format."""
    written = []
    formats = config.output.formats
    if "json" in formats:
        written.append(write_json(report, get_full_path(directory, f"{stem}.json")))
    if "text" in formats:
        written.append(write_text_report(report, get_full_path(directory, f"{stem}.txt")))
    return written


def write_frame(config: ExperimentConfig, directory: str, stem: str, frame) -> List[str]:
    if "csv" not in config.output.formats:
        return []
    return [write_table(frame, get_full_path(directory, f"{stem}.csv"))]


def finish_run(directory: str, operation: str, config_path: str, config: ExperimentConfig, artifacts: List[str]) -> str:
    """Write the metadata sidecar, the only file that carries a timestamp."""
    return write_run_metadata(
        get_full_path(directory, "run_metadata.json"),
        {
            "operation": operation,
            "config": os.path.abspath(config_path),
            "seed": config.simulation.seed,
            "step": config.simulation.h,
            "artifacts": [os.path.basename(a) for a in artifacts],
        },
    )
