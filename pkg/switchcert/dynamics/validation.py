# FILE: switchcert/dynamics/validation.py

"""
Sampled checks of the activation and noise-intensity hypotheses.

Nothing here raises on a violated hypothesis; the report carries the verdict
and the first witness so callers can decide.
"""

import logging
from typing import Any, Dict, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from switchcert.dynamics.network import SwitchedNetworkModel, per_mode
from switchcert.exceptions import ConfigurationError
from switchcert.utils.rng import make_generator

logger = logging.getLogger(__name__)

# spawn key reserved for hypothesis sampling
HYPOTHESIS_STREAM = 7
ACTIVATION_GRID_POINTS = 2001
RELATIVE_TOLERANCE = 1e-12


class HypothesisReport(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    passed: bool = Field(alias="pass")
    activation_passed: bool
    trace_bound_slack: float = Field(description="min over samples of u'Eu + v'Fv - tr[s's]")
    weighted_bound_slack: Optional[float] = Field(default=None, description="min of a(u'Pu + v'Pv) - tr[s'Ps]")
    c1: Optional[float] = None
    c2: Optional[float] = None
    witness: Optional[Dict[str, Any]] = None
    sample_count: int
    radius: float


def sample_ball(rng: np.random.Generator, count: int, dimension: int, radius: float) -> np.ndarray:
    """Uniform samples in the closed ball of `radius` in R^dimension."""
    directions = rng.standard_normal((count, dimension))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    radii = radius * rng.random(count) ** (1.0 / dimension)
    return directions * radii[:, None]


def _check_activation(model: SwitchedNetworkModel, radius: float) -> Optional[Dict[str, Any]]:
    nl = model.nonlinearity
    zero = np.zeros(model.dimension)
    if np.any(nl(zero) != 0):
        return {"hypothesis": "activation", "reason": "g(0) != 0"}
    grid = np.linspace(-radius, radius, ACTIVATION_GRID_POINTS)
    slopes = np.asarray(nl.derivative(np.repeat(grid[:, None], model.dimension, axis=1)))
    low = slopes < 0
    high = slopes > nl.G[None, :] * (1 + RELATIVE_TOLERANCE)
    if np.any(low | high):
        row, col = np.argwhere(low | high)[0]
        return {"hypothesis": "activation", "x": float(grid[row]), "component": int(col),
                "slope": float(slopes[row, col])}
    return None


def validate_hypotheses(
    model: SwitchedNetworkModel,
    sample_count: int,
    radius: float,
    seed: int,
    P: Optional[Sequence] = None,
) -> HypothesisReport:
    """
    Check g(0) = 0, 0 <= g' <= G and the noise trace bounds on random samples.

    Args:
        model (SwitchedNetworkModel): Model carrying `noise_bounds`.
        sample_count (int): Number of (u, v) samples per mode.
        radius (float): Radius of the sampling ball in R^{2n}.
        seed (int): Root seed of the sampling stream.
        P (Sequence, optional): Per-mode P(xi) for the weighted bound and C1, C2.

    Returns:
        HypothesisReport: Verdict, minimum slacks and the first violating sample.
    """
    if sample_count < 1:
        raise ConfigurationError(f"sample_count must be >= 1, got {sample_count}")
    if not radius > 0:
        raise ConfigurationError(f"radius must be positive, got {radius}")
    if model.noise_bounds is None:
        raise ConfigurationError("model has no noise bounds to validate", key="model.noise_bounds")

    n = model.dimension
    bounds = model.noise_bounds
    P_list = per_mode(P, n, "P") if P is not None else None
    if P_list is not None and len(P_list) != model.mode_count:
        raise ConfigurationError("P needs one matrix per mode", key="certificate.P")

    rng = make_generator(seed, HYPOTHESIS_STREAM)
    witness = _check_activation(model, radius)
    activation_passed = witness is None

    trace_slack = np.inf
    weighted_slack = np.inf if P_list is not None else None
    for mode in range(model.mode_count):
        samples = sample_ball(rng, sample_count, 2 * n, radius)
        for uv in samples:
            u, v = uv[:n], uv[n:]
            s = model.noise.sigma(u, v, mode)
            lhs = float(np.trace(s.T @ s))
            rhs = float(u @ bounds.E[mode] @ u + v @ bounds.F[mode] @ v)
            slack = rhs - lhs
            trace_slack = min(trace_slack, slack)
            if slack < -RELATIVE_TOLERANCE * max(1.0, abs(rhs)) and witness is None:
                witness = {"hypothesis": "trace_bound", "u": u, "v": v, "mode": mode, "lhs": lhs, "rhs": rhs}
            if P_list is not None:
                Pm = P_list[mode]
                lhs_p = float(np.trace(s.T @ Pm @ s))
                rhs_p = bounds.a[mode] * float(u @ Pm @ u + v @ Pm @ v)
                weighted_slack = min(weighted_slack, rhs_p - lhs_p)
                if rhs_p - lhs_p < -RELATIVE_TOLERANCE * max(1.0, abs(rhs_p)) and witness is None:
                    witness = {"hypothesis": "weighted_trace_bound", "u": u, "v": v, "mode": mode,
                               "lhs": lhs_p, "rhs": rhs_p}

    c1 = c2 = None
    if P_list is not None:
        eigs = [np.linalg.eigvalsh(0.5 * (p + p.T)) for p in P_list]
        c1 = float(min(e[0] for e in eigs))
        c2 = float(max(e[-1] for e in eigs))
        if c1 <= 0 and witness is None:
            witness = {"hypothesis": "P_positive", "c1": c1}

    passed = witness is None
    log = logger.info if passed else logger.warning
    log(f"[validate_hypotheses] passed={passed} trace_slack={trace_slack:.3e}")
    return HypothesisReport(
        passed=passed,
        activation_passed=activation_passed,
        trace_bound_slack=float(trace_slack),
        weighted_bound_slack=None if weighted_slack is None else float(weighted_slack),
        c1=c1,
        c2=c2,
        witness=witness,
        sample_count=sample_count,
        radius=float(radius),
    )
