# FILE: switchcert/utils/mixed_helpers.py

import json
import logging
import math
from typing import Any

import numpy as np
from pydantic import BaseModel

logger = logging.getLogger(__name__)


def to_jsonable(data: Any) -> Any:
    """
    Recursively convert numpy and pydantic values to JSON-compatible types.

    Supported types: numpy arrays and scalars, pydantic models, tuples, sets,
    and non-finite floats (rendered as the strings 'inf', '-inf', 'nan').

    Args:
        data (Any): The input data structure.

    Returns:
        Any: Data with all values converted to JSON-serializable types.
    """
    if isinstance(data, BaseModel):
        return to_jsonable(data.model_dump(by_alias=True))
    if isinstance(data, dict):
        return {str(key): to_jsonable(value) for key, value in data.items()}
    if isinstance(data, (list, tuple, set)):
        return [to_jsonable(item) for item in data]
    if isinstance(data, np.ndarray):
        return to_jsonable(data.tolist())
    if isinstance(data, np.bool_):
        return bool(data)
    if isinstance(data, np.integer):
        return int(data)
    if isinstance(data, (float, np.floating)):
        value = float(data)
        if math.isfinite(value):
            return value
        return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")
    return data


def dumps_report(report: Any) -> str:
    """
    Serialize a report to deterministic JSON text (sorted keys, 2-space indent).

    Args:
        report (Any): Dict, pydantic model, or nested structure.

    Returns:
        str: JSON text terminated by a newline.
    """
    try:
        return json.dumps(to_jsonable(report), indent=2, sort_keys=True) + "\n"
    except (TypeError, ValueError) as e:
        logger.error(f"Error serializing report: {e}")
        raise


def format_key_value_report(report: Any, prefix: str = "") -> str:
    """
    Render a nested report as 'key: value' lines with dotted keys.

    Args:
        report (Any): Dict or pydantic model.
        prefix (str): Key prefix used during recursion.

    Returns:
        str: One 'key: value' line per leaf.
    """
    data = to_jsonable(report)
    lines = []
    if isinstance(data, dict):
        for key in sorted(data):
            value = data[key]
            dotted = f"{prefix}.{key}" if prefix else key
            if isinstance(value, dict):
                lines.append(format_key_value_report(value, dotted).rstrip("\n"))
            else:
                lines.append(f"{dotted}: {value}")
    else:
        lines.append(f"{prefix or 'value'}: {data}")
    return "\n".join(line for line in lines if line) + "\n"
