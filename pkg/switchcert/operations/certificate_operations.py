# FILE: switchcert/operations/certificate_operations.py

import logging
from typing import Any, Dict, List, Optional

from switchcert.certificates.chi import chi_term
from switchcert.certificates.theorem4 import assemble_pi, check_thm4
from switchcert.certificates.theorem5 import check_thm5
from switchcert.config.builders import Experiment
from switchcert.exceptions import ConfigurationError
from switchcert.operations.common import finish_run, load_run, resolve_output_dir, write_report
from switchcert.utils.error_handler import exception_response, success_response
from switchcert.utils.file_handler import get_full_path, write_matrix
from switchcert.utils.mixed_helpers import to_jsonable

logger = logging.getLogger(__name__)


def _dump_pi(experiment: Experiment, directory: str) -> List[str]:
    """Write Pi^k of every mode as 'pi_mode_<k>.txt', one file per family state."""
    written = []
    cert = experiment.thm4
    for mode in range(experiment.family.mode_count):
        states = experiment.family.states_for_mode(mode)
        for index, state in enumerate(states):
            chi = chi_term(experiment.family, cert.P, mode, experiment.rates, state=state)
            pi = assemble_pi(experiment.model, cert, chi.matrix, mode)
            name = f"pi_mode_{mode}.txt" if len(states) == 1 else f"pi_mode_{mode}_{index}.txt"
            written.append(write_matrix(pi, get_full_path(directory, name)))
    logger.debug(f"[verify_thm4] dumped {len(written)} matrices")
    return written


def verify_thm4_operation(
    config_path: str,
    output_dir: Optional[str] = None,
    dump_pi: bool = False,
) -> Dict[str, Any]:
    """
    Check the Theorem-4 certificate of an experiment and write 'thm4_report'.

    Args:
        config_path (str): Experiment JSON file with a certificate.thm4 section.
        output_dir (str, optional): Overrides the configured output directory.
        dump_pi (bool): Also write every assembled Pi^k as a plain-text matrix.

    Returns:
        Dict[str, Any]: Standard response; the verdict is `result["pass"]`.
    """
    try:
        experiment = load_run(config_path)
        if experiment.thm4 is None:
            raise ConfigurationError("no Theorem-4 certificate configured", key="certificate.thm4")
        section = experiment.config.certificate
        directory = resolve_output_dir(experiment.config, output_dir)

        report = check_thm4(experiment.model, experiment.thm4, experiment.family, experiment.rates,
                            tolerance=section.tolerance, relative_slack=section.relative_slack)
        artifacts = write_report(experiment.config, directory, "thm4_report", report)
        if dump_pi:
            artifacts += _dump_pi(experiment, directory)
        finish_run(directory, "verify-thm4", config_path, experiment.config, artifacts)
        return success_response(
            f"[verify_thm4] worst lambda_max = {report.worst_lambda_max:.6g} (mode {report.worst_mode}), "
            f"pass={report.passed}",
            {
                "pass": report.passed,
                "worst_lambda_max": report.worst_lambda_max,
                "report": to_jsonable(report),
                "artifacts": artifacts,
            },
        )
    except Exception as e:
        return exception_response(e, "verify_thm4")


def verify_thm5_operation(config_path: str, output_dir: Optional[str] = None) -> Dict[str, Any]:
    """
    Check the Theorem-5 certificate of an experiment and write 'thm5_report'.

    Returns:
        Dict[str, Any]: Standard response; the verdict is `result["pass"]` and
        `result["halanay"]` holds the induced comparison constants.
    """
    try:
        experiment = load_run(config_path)
        if experiment.thm5 is None:
            raise ConfigurationError("no Theorem-5 certificate configured", key="certificate.thm5")
        directory = resolve_output_dir(experiment.config, output_dir)

        report = check_thm5(experiment.model, experiment.thm5, experiment.family, experiment.rates,
                            tolerance=experiment.config.certificate.tolerance)
        artifacts = write_report(experiment.config, directory, "thm5_report", report)
        finish_run(directory, "verify-thm5", config_path, experiment.config, artifacts)
        return success_response(
            f"[verify_thm5] worst lambda_max = {report.worst_lambda_max:.6g}, pass={report.passed}",
            {
                "pass": report.passed,
                "worst_lambda_max": report.worst_lambda_max,
                "halanay": to_jsonable(report.halanay),
                "report": to_jsonable(report),
                "artifacts": artifacts,
            },
        )
    except Exception as e:
        return exception_response(e, "verify_thm5")
