# FILE: switchcert/certificates/loewner.py

"""
Loewner-order primitive: A <= B iff lambda_max(A - B) <= 0.
"""

import logging
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.linalg import eigh

from switchcert.exceptions import InputError
from switchcert.utils.numerics import require_symmetric

logger = logging.getLogger(__name__)

RELATIVE_SLACK = 1e-9


class SemidefReport(BaseModel):
    """Verdict of one semidefinite check."""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    lambda_max: float
    passed: bool = Field(alias="pass")
    tolerance: float
    witness: List[float] = Field(description="unit eigenvector of lambda_max")
    eigenvalues: List[float]
    label: Optional[str] = None
    mode: Optional[int] = None
    conservative: bool = False


def _normalized(vector: np.ndarray) -> np.ndarray:
    # sign fixed so the largest-magnitude entry is positive
    pivot = vector[int(np.argmax(np.abs(vector)))]
    return vector if pivot >= 0 else -vector


def loewner_leq(
    A,
    B,
    tolerance: float = 0.0,
    label: Optional[str] = None,
    mode: Optional[int] = None,
    conservative: bool = False,
) -> SemidefReport:
    """
    Check A <= B in the Loewner order.

    Args:
        A, B (array-like): Symmetric matrices of equal size.
        tolerance (float): Pass iff lambda_max(A - B) <= tolerance.
        label (str, optional): Name carried into the report.
        mode (int, optional): Mode carried into the report.
        conservative (bool): Marks checks built from an upper bound.

    Returns:
        SemidefReport: lambda_max, verdict, witness and the full spectrum.

    Raises:
        InputError: On asymmetric input or mismatched shapes.
    """
    a = require_symmetric(A, "A")
    b = require_symmetric(B, "B")
    if a.shape != b.shape:
        raise InputError(f"Loewner comparison of shapes {a.shape} and {b.shape}")
    if a.size == 0:
        raise InputError("Loewner comparison of empty matrices")
    eigenvalues, vectors = eigh(a - b)
    lambda_max = float(eigenvalues[-1])
    return SemidefReport(
        lambda_max=lambda_max,
        passed=lambda_max <= tolerance,
        tolerance=float(tolerance),
        witness=_normalized(vectors[:, -1]).tolist(),
        eigenvalues=eigenvalues.tolist(),
        label=label,
        mode=mode,
        conservative=conservative,
    )


def check_negative_semidefinite(
    M,
    tolerance: float = 0.0,
    relative_slack: bool = False,
    label: Optional[str] = None,
    mode: Optional[int] = None,
    conservative: bool = False,
) -> SemidefReport:
    """
    M <= 0 check. With `relative_slack`, ||M||_2 * 1e-9 is added to the
    tolerance to absorb assembly rounding.
    """
    m = np.asarray(M, dtype=float)
    if relative_slack and m.size:
        tolerance = tolerance + RELATIVE_SLACK * float(np.linalg.norm(m, 2))
    return loewner_leq(m, np.zeros_like(m), tolerance, label=label, mode=mode, conservative=conservative)
