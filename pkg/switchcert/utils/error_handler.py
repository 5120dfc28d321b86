# FILE: switchcert/utils/error_handler.py

import logging
from typing import Any, Dict, Optional
from pydantic import BaseModel, Field

from switchcert.exceptions import ConfigurationError, SwitchCertError

logger = logging.getLogger(__name__)

CONFIGURATION_ERROR = "configuration"
RUNTIME_ERROR = "runtime"


class OperationResponse(BaseModel):
    """
    Standard response model for switchcert operations.
    """
    status: bool = Field(..., description="True if the operation ran to completion.")
    message: str = Field(..., description="Description of the result or error.")
    result: Optional[Any] = Field(None, description="Data returned by the operation, if any.")
    error_type: Optional[str] = Field(None, description="'configuration' or 'runtime' on failure.")

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert the response model to a plain dict.

        Returns:
            Dict[str, Any]: The response as a dictionary.
        """
        return self.model_dump()


def success_response(message: str, result: Any = None) -> Dict[str, Any]:
    """
    Build a standardized success response.

    Args:
        message (str): Summary of what was done.
        result (Any): Operation payload.

    Returns:
        Dict[str, Any]: A dict with status=True.
    """
    logger.info(message)
    return OperationResponse(status=True, message=message, result=result).to_dict()


def handle_error_response(message: str, error_type: str = RUNTIME_ERROR) -> Dict[str, Any]:
    """
    Build a standardized error response.

    Args:
        message (str): Error message.
        error_type (str): 'configuration' for bad input, 'runtime' otherwise.

    Returns:
        Dict[str, Any]: A dict with status=False, the error message, and result=None.
    """
    logger.error(message)
    response = OperationResponse(status=False, message=message, result=None, error_type=error_type)
    return response.to_dict()


def exception_response(error: Exception, operation: str) -> Dict[str, Any]:
    """
    Map an exception raised inside an operation to an error response.

    ConfigurationError becomes a 'configuration' failure; every other
    exception is a 'runtime' failure. Unexpected exceptions are logged with
    their traceback.

    Args:
        error (Exception): The caught exception.
        operation (str): Operation name used as log tag.

    Returns:
        Dict[str, Any]: A dict with status=False.
    """
    if isinstance(error, ConfigurationError):
        return handle_error_response(f"[{operation}] {error.message}", CONFIGURATION_ERROR)
    if isinstance(error, SwitchCertError):
        return handle_error_response(f"[{operation}] {error.message}", RUNTIME_ERROR)
    logger.exception(f"[{operation}] unexpected error")
    return handle_error_response(f"Unexpected error in '{operation}': {error}", RUNTIME_ERROR)
