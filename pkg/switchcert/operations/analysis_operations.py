# FILE: switchcert/operations/analysis_operations.py

import logging
from typing import Any, Callable, Dict, Optional

from switchcert.analysis.halanay import HalanayProblem, halanay_bound_check
from switchcert.certificates.theorem5 import check_thm5
from switchcert.config.builders import build_model
from switchcert.config.experiment import load_experiment
from switchcert.dynamics.delays import build_delay, default_grid, validate_delay
from switchcert.dynamics.nu import build_nu, nu_constants
from switchcert.dynamics.validation import validate_hypotheses
from switchcert.exceptions import ConfigurationError, ValidationFailure
from switchcert.operations.common import finish_run, load_run, resolve_output_dir, write_report
from switchcert.utils.error_handler import exception_response, success_response
from switchcert.utils.mixed_helpers import to_jsonable

logger = logging.getLogger(__name__)


def _failure_entry(error: ValidationFailure) -> Dict[str, Any]:
    return {"pass": False, "message": error.message, "witness": to_jsonable(error.witness)}


def halanay_operation(config_path: str, output_dir: Optional[str] = None) -> Dict[str, Any]:
    """
    Integrate the Halanay comparison equation and check the bound max(J0/eta, u0).

    Rates come from the `halanay` section; when it leaves alpha or beta unset
    they are taken from the Theorem-5 certificate (alpha=kappa, beta=kappa',
    eta=kappa-kappa'). The window length is the experiment's delay.

    Returns:
        Dict[str, Any]: Standard response; the verdict is `result["pass"]`.
    """
    try:
        experiment = load_run(config_path)
        section = experiment.config.halanay
        if section is None:
            raise ConfigurationError("no halanay section configured", key="halanay")
        directory = resolve_output_dir(experiment.config, output_dir)

        alpha, beta, eta = section.alpha, section.beta, section.eta
        source = "config"
        if alpha is None or beta is None:
            if experiment.thm5 is None:
                raise ConfigurationError("alpha and beta need values or a Theorem-5 certificate", key="halanay")
            thm5 = check_thm5(experiment.model, experiment.thm5, experiment.family, experiment.rates,
                              tolerance=experiment.config.certificate.tolerance)
            if not thm5.passed:
                logger.warning("[halanay] Theorem-5 certificate fails; its constants prove nothing")
            alpha, beta = thm5.halanay.alpha, thm5.halanay.beta
            eta = thm5.halanay.eta if eta is None else eta
            source = "thm5"

        problem = HalanayProblem.constant(alpha, beta, section.j0, experiment.delay, section.u0, eta=eta)
        try:
            report = to_jsonable(halanay_bound_check(problem, section.h, section.horizon))
        except ValidationFailure as e:
            report = _failure_entry(e)
        report["source"] = source

        artifacts = write_report(experiment.config, directory, "halanay_report", report)
        finish_run(directory, "halanay", config_path, experiment.config, artifacts)
        return success_response(f"[halanay] alpha={alpha}, beta={beta}, pass={report['pass']}",
                                {"pass": report["pass"], "report": report, "artifacts": artifacts})
    except Exception as e:
        return exception_response(e, "halanay")


def _guarded(name: str, check: Callable[[], Any]) -> Dict[str, Any]:
    """Run one validation step; a ValidationFailure becomes a failing entry."""
    try:
        entry = to_jsonable(check())
    except ValidationFailure as e:
        logger.warning(f"[validate] {name}: {e.message}")
        return _failure_entry(e)
    entry.setdefault("pass", True)
    return entry


def validate_operation(config_path: str, output_dir: Optional[str] = None) -> Dict[str, Any]:
    """
    Validate the delay, the nu weight and the model hypotheses of an experiment.

    The experiment is not built through the certificate path, so a weight
    that fails its checks is reported instead of aborting the run. The
    hypothesis check uses P from the Theorem-4 certificate, else from the
    Theorem-5 certificate, else runs without the weighted bound.

    Returns:
        Dict[str, Any]: Standard response; `result["pass"]` is the conjunction
        of the delay, nu and hypothesis verdicts.
    """
    try:
        config = load_experiment(config_path)
        sim, checks = config.simulation, config.validation
        grid = default_grid(sim.horizon, checks.grid_points)

        d = config.delay
        delay = build_delay(d.kind, c=d.c, a=d.a, b=d.b, allow_fast=d.allow_fast)
        nu = build_nu(config.nu.kind, config.nu.alpha, delay.tau_b, config.nu.offset)
        model = build_model(config.model)

        report: Dict[str, Any] = {
            "delay": _guarded("delay", lambda: validate_delay(delay, grid)),
            "nu": _guarded("nu", lambda: nu_constants(nu, delay, grid)),
        }
        if model.noise_bounds is None:
            logger.info("[validate] no noise bounds configured; hypotheses skipped")
        else:
            P = None
            if config.certificate is not None and config.certificate.thm4 is not None:
                P = config.certificate.thm4.P
            elif config.certificate is not None and config.certificate.thm5 is not None:
                P = config.certificate.thm5.P
            hypotheses = to_jsonable(validate_hypotheses(model, checks.sample_count, checks.radius, sim.seed, P=P))
            report["hypotheses"] = hypotheses
        report["pass"] = all(entry["pass"] for entry in report.values())

        directory = resolve_output_dir(config, output_dir)
        artifacts = write_report(config, directory, "validation_report", report)
        finish_run(directory, "validate", config_path, config, artifacts)
        return success_response(f"[validate] pass={report['pass']}",
                                {"pass": report["pass"], "report": report, "artifacts": artifacts})
    except Exception as e:
        return exception_response(e, "validate")
