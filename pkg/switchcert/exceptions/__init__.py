from switchcert.exceptions.switchcert_exceptions import (
    SwitchCertError,
    ConfigurationError,
    DomainError,
    DivergenceError,
    CertificateStructureError,
    ValidationFailure,
    InputError,
    OperationNotSupportedError,
)

__all__ = [
    "SwitchCertError",
    "ConfigurationError",
    "DomainError",
    "DivergenceError",
    "CertificateStructureError",
    "ValidationFailure",
    "InputError",
    "OperationNotSupportedError",
]
