# FILE: switchcert/experiment_entrypoint.py

import logging
from typing import Any, Dict, Optional

from switchcert.exceptions import ConfigurationError, OperationNotSupportedError
from switchcert.operations.analysis_operations import halanay_operation, validate_operation
from switchcert.operations.certificate_operations import verify_thm4_operation, verify_thm5_operation
from switchcert.operations.reproduce_operations import reproduce_example
from switchcert.operations.simulation_operations import mc_operation, simulate_operation
from switchcert.utils.error_handler import exception_response

logger = logging.getLogger(__name__)

OPERATIONS = ("simulate", "mc", "verify-thm4", "verify-thm5", "halanay", "validate", "reproduce")


def experiment_entrypoint(
    operation: str,
    config_path: Optional[str] = None,
    output_dir: Optional[str] = None,
    seed: Optional[int] = None,
    step: Optional[float] = None,
    trials: Optional[int] = None,
    threads: Optional[int] = None,
    dump_pi: bool = False,
    case: Optional[str] = None,
    fast: bool = False,
) -> Dict[str, Any]:
    """
    Entrypoint for experiment operations.
    Supported operations:
      - simulate, mc, verify-thm4, verify-thm5, halanay, validate, reproduce
    """
    try:
        # Everything except reproduce reads a configuration file
        if operation != "reproduce" and operation in OPERATIONS and not config_path:
            raise ConfigurationError(f"Parameter 'config_path' is required for '{operation}'.", key="config")

        # 1. ONE TRAJECTORY
        if operation == "simulate":
            return simulate_operation(config_path, output_dir=output_dir, seed=seed, step=step)

        # 2. ENSEMBLE
        if operation == "mc":
            return mc_operation(config_path, output_dir=output_dir, seed=seed, step=step,
                                trials=trials, threads=threads)

        # 3. CERTIFICATES
        if operation == "verify-thm4":
            return verify_thm4_operation(config_path, output_dir=output_dir, dump_pi=dump_pi)

        if operation == "verify-thm5":
            return verify_thm5_operation(config_path, output_dir=output_dir)

        # 4. COMPARISON PRINCIPLE
        if operation == "halanay":
            return halanay_operation(config_path, output_dir=output_dir)

        # 5. HYPOTHESES
        if operation == "validate":
            return validate_operation(config_path, output_dir=output_dir)

        # 6. BUNDLED EXAMPLE
        if operation == "reproduce":
            if not case:
                raise ConfigurationError("Parameter 'case' is required for 'reproduce'.", key="case")
            return reproduce_example(case, output_dir=output_dir, fast=fast, threads=threads,
                                     trials=trials, seed=seed)

        raise OperationNotSupportedError(operation)

    except Exception as e:
        return exception_response(e, operation)
