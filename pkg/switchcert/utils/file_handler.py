# FILE: switchcert/utils/file_handler.py

import json
import os
import platform
from datetime import datetime, timezone
from typing import Any, Dict

import numpy as np
import pandas as pd

from switchcert import __version__
from switchcert.exceptions import ConfigurationError
from switchcert.utils.mixed_helpers import dumps_report, format_key_value_report

# 17 significant digits round-trip every 64-bit float
FLOAT_FORMAT = "%.17g"


def ensure_output_dir(path: str) -> str:
    """
    Create the output directory if needed and check that it is writable.

    Args:
        path (str): Directory path.

    Returns:
        str: The absolute directory path.

    Raises:
        ConfigurationError: If the directory cannot be created or written.
    """
    full_path = os.path.abspath(path)
    try:
        os.makedirs(full_path, exist_ok=True)
    except OSError as e:
        raise ConfigurationError(f"Cannot create output directory '{full_path}': {e}", key="output.directory") from e
    if not os.access(full_path, os.W_OK):
        raise ConfigurationError(f"Output directory '{full_path}' is not writable.", key="output.directory")
    return full_path


def get_full_path(path: str, file_name: str) -> str:
    """
    Constructs the absolute path to an artifact file.

    Args:
        path (str): Directory path.
        file_name (str): File name.

    Returns:
        str: Full filesystem path.
    """
    return os.path.join(path, file_name)


def check_file_exists(path: str) -> bool:
    """
    Checks that a configuration file exists and is a '.json' file.

    Args:
        path (str): Path to the file.

    Returns:
        bool: True if the file is usable.

    Raises:
        ConfigurationError: If the file is missing or has the wrong extension.
    """
    if not os.path.isfile(path):
        raise ConfigurationError(f"Configuration file '{path}' not found.")
    if not path.lower().endswith(".json"):
        raise ConfigurationError(f"Configuration file '{path}' must have a '.json' extension.")
    return True


def write_table(frame: pd.DataFrame, path: str) -> str:
    """Write a DataFrame as CSV with round-trip exact floats."""
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    return path


def write_json(report: Any, path: str) -> str:
    """Write a report as sorted, indented JSON."""
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps_report(report))
    return path


def write_text_report(report: Any, path: str) -> str:
    """Write a report as 'key: value' lines."""
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(format_key_value_report(report))
    return path


def write_matrix(matrix: np.ndarray, path: str) -> str:
    """Write a matrix as whitespace-separated rows with 17 significant digits."""
    np.savetxt(path, np.atleast_2d(matrix), fmt=FLOAT_FORMAT)
    return path


def write_run_metadata(path: str, extra: Dict[str, Any]) -> str:
    """
    Write the timestamp sidecar. Timestamps live only here so that data files
    stay byte-for-byte reproducible.
    """
    payload = {
        "created_utc": datetime.now(timezone.utc).isoformat(),
        "switchcert_version": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "pandas": pd.__version__,
        **extra,
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True, default=str)
    return path
