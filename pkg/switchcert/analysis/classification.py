# FILE: switchcert/analysis/classification.py

"""
Finite-horizon proxies for mean-square, nu-mean-square and in-probability
stability. Verdicts are advisory and always travel with the raw curves.
"""

import logging
import math
from typing import Any, Dict, Mapping, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from switchcert.analysis.ensemble import McStats
from switchcert.dynamics.nu import NuFunction

logger = logging.getLogger(__name__)

DEFAULT_THRESHOLD = 1e-2
DEFAULT_LEVEL = 0.05
TAIL_FRACTION = 0.1
MIN_NU_GROWTH = 10.0


class StabilityClassification(BaseModel):
    model_config = ConfigDict(frozen=True)

    mean_square: bool
    nu_mean_square: bool
    in_probability: Dict[str, bool] = Field(default_factory=dict, description="keyed by epsilon")
    M: float = Field(description="sup over the grid of nu(t) * mean |x(t)|^2")
    M_time: float
    diagnostics: Dict[str, Any] = Field(default_factory=dict)


def classify_stability(
    stats: McStats,
    nu: NuFunction,
    threshold: float = DEFAULT_THRESHOLD,
    levels: Union[float, Mapping[float, float]] = DEFAULT_LEVEL,
    tail_fraction: float = TAIL_FRACTION,
) -> StabilityClassification:
    """
    Classify an ensemble.

    Args:
        stats (McStats): Ensemble statistics.
        nu (NuFunction): Weight used for the nu-mean-square proxy.
        threshold (float): Upper limit of mean |x|^2 over the final tail.
        levels (float | Mapping[float, float]): Exceedance limit, global or per epsilon.
        tail_fraction (float): Share of the grid used as head and tail windows.

    Returns:
        StabilityClassification: Verdicts, the empirical M and diagnostics.
    """
    count = len(stats.times)
    width = max(1, int(math.ceil(tail_fraction * count)))
    head_mean = float(np.mean(stats.mean_x2[:width]))
    tail_mean = float(np.mean(stats.mean_x2[-width:]))
    mean_square = tail_mean < threshold and tail_mean <= head_mean

    weighted = np.asarray(nu.value(stats.times), dtype=float) * stats.mean_x2
    finite = bool(np.all(np.isfinite(weighted)))
    j = int(np.argmax(weighted)) if finite else count - 1
    nu_mean_square = finite and j <= (count - 1) / 2

    in_probability: Dict[str, bool] = {}
    for eps, freq in sorted(stats.exceedance.items()):
        level = levels.get(eps, DEFAULT_LEVEL) if isinstance(levels, Mapping) else levels
        p = float(freq[-1])
        upper = p + 3.0 * math.sqrt(p * (1.0 - p) / stats.trials)
        in_probability[repr(float(eps))] = upper <= level

    nu_growth = float(nu.value(stats.times[-1]) / nu.value(stats.times[0]))
    warnings = []
    if nu_growth < MIN_NU_GROWTH:
        message = f"nu grows only {nu_growth:.3g}x over the horizon; nu-stability verdicts are weak"
        logger.warning(f"[classify_stability] {message}")
        warnings.append(message)

    return StabilityClassification(
        mean_square=mean_square,
        nu_mean_square=nu_mean_square,
        in_probability=in_probability,
        M=float(weighted[j]) if finite else math.inf,
        M_time=float(stats.times[j]),
        diagnostics={
            "head_mean_x2": head_mean,
            "tail_mean_x2": tail_mean,
            "threshold": threshold,
            "nu_growth": nu_growth,
            "trials": stats.trials,
            "diverged": stats.diverged,
            "warnings": warnings,
        },
    )
