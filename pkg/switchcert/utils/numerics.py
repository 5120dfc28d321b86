# FILE: switchcert/utils/numerics.py

import numpy as np

from switchcert.exceptions import InputError

SYMMETRY_TOLERANCE = 1e-10


def as_square(matrix, name: str = "matrix") -> np.ndarray:
    """Return `matrix` as a float 2-D square array or raise InputError."""
    arr = np.asarray(matrix, dtype=float)
    if arr.size == 0:
        return np.zeros((0, 0))
    arr = np.atleast_2d(arr)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InputError(f"{name} must be square, got shape {arr.shape}.")
    return arr


def relative_asymmetry(matrix: np.ndarray) -> float:
    """max|M - M^T| relative to max(1, max|M|)."""
    scale = max(1.0, float(np.max(np.abs(matrix)))) if matrix.size else 1.0
    return float(np.max(np.abs(matrix - matrix.T))) / scale if matrix.size else 0.0


def require_symmetric(matrix, name: str = "matrix", tolerance: float = SYMMETRY_TOLERANCE) -> np.ndarray:
    """
    Validate near-symmetry and return the exactly symmetric part.

    Raises:
        InputError: If the relative asymmetry exceeds `tolerance`.
    """
    arr = as_square(matrix, name)
    asym = relative_asymmetry(arr)
    if asym > tolerance:
        raise InputError(f"{name} is not symmetric (relative asymmetry {asym:.3e} > {tolerance:.1e}).")
    return 0.5 * (arr + arr.T)


def is_positive_definite(matrix: np.ndarray) -> bool:
    """True iff the symmetric part of `matrix` has a Cholesky factor."""
    try:
        np.linalg.cholesky(0.5 * (matrix + matrix.T))
        return True
    except np.linalg.LinAlgError:
        return False


def compensated_sum(values, axis: int = 0) -> np.ndarray:
    """
    Order-independent compensated (Neumaier) sum along `axis`.

    Values are sorted along the summation axis first, so any permutation of
    the inputs yields the identical result.
    """
    arr = np.sort(np.moveaxis(np.asarray(values, dtype=float), axis, 0), axis=0)
    total = np.zeros(arr.shape[1:])
    compensation = np.zeros(arr.shape[1:])
    for row in arr:
        running = total + row
        compensation += np.where(
            np.abs(total) >= np.abs(row),
            (total - running) + row,
            (row - running) + total,
        )
        total = running
    return total + compensation


def compensated_mean(values, axis: int = 0) -> np.ndarray:
    """Mean along `axis` using `compensated_sum`."""
    arr = np.asarray(values, dtype=float)
    return compensated_sum(arr, axis=axis) / arr.shape[axis]
