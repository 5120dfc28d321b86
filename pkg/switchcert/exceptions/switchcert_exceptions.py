# FILE: switchcert/exceptions/switchcert_exceptions.py

from typing import Any, Dict, Optional


class SwitchCertError(Exception):
    """
    Base class for all switchcert exceptions.
    """
    def __init__(self, message: str):
        """
        Initialize a SwitchCertError.

        Args:
            message (str): Explanation of the error.
        """
        super().__init__(message)
        self.message = message


class ConfigurationError(SwitchCertError):
    """
    Exception raised for invalid experiment or model configuration.
    """
    def __init__(self, message: str, key: Optional[str] = None):
        """
        Initialize a ConfigurationError.

        Args:
            message (str): Explanation of the error.
            key (str, optional): Dotted path of the offending configuration key.
        """
        if key:
            message = f"{key}: {message}"
        super().__init__(message)
        self.key = key


class DomainError(SwitchCertError):
    """
    Exception raised when an argument lies outside a function's domain
    (time out of range, history underflow).
    """
    pass


class DivergenceError(SwitchCertError):
    """
    Exception raised when a simulated state leaves the finite range.
    """
    def __init__(self, time: float, trial: Optional[int] = None, norm: Optional[float] = None):
        """
        Initialize a DivergenceError.

        Args:
            time (float): Grid time at which the blow-up was detected.
            trial (int, optional): Ensemble trial index, if any.
            norm (float, optional): State norm at detection.
        """
        where = f" in trial {trial}" if trial is not None else ""
        message = f"State diverged at t={time:.6g}{where} (|x|={norm})."
        super().__init__(message)
        self.time = time
        self.trial = trial
        self.norm = norm


class CertificateStructureError(SwitchCertError):
    """
    Exception raised when a certificate is structurally unusable
    (missing Loewner precondition, singular scaling, kappa <= kappa').
    """
    pass


class ValidationFailure(SwitchCertError):
    """
    Exception raised when a hypothesis, delay or weight-function check fails.
    """
    def __init__(self, message: str, witness: Optional[Dict[str, Any]] = None):
        """
        Initialize a ValidationFailure.

        Args:
            message (str): Explanation of the failure.
            witness (dict, optional): Data locating the violation.
        """
        super().__init__(message)
        self.witness = witness or {}


class InputError(SwitchCertError):
    """
    Exception raised for malformed numeric input (e.g. a non-symmetric matrix
    handed to a symmetric primitive).
    """
    pass


class OperationNotSupportedError(SwitchCertError):
    """
    Exception raised for unsupported entrypoint operations.
    """
    def __init__(self, operation: str):
        """
        Initialize an OperationNotSupportedError.

        Args:
            operation (str): Name of the unsupported operation.
        """
        message = f"Operation '{operation}' is not supported."
        super().__init__(message)
