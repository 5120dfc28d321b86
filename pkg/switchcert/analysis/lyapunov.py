# FILE: switchcert/analysis/lyapunov.py

"""
Lyapunov functionals along trajectories and their infinitesimal generators.

    V1(x_t, t, r) = nu(t) [x'P(r)x + 2 sum_i Z_i int_0^{x_i} g_i]
                    + int_{t - tau(t)}^{t} nu(s) g(x(s))' Q g(x(s)) ds
    V2(x, t, r)   = nu(t) x'P(r)x
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from scipy.integrate import cumulative_trapezoid

from switchcert.certificates.chi import chi_term
from switchcert.certificates.models import CertificateThm4, CertificateThm5
from switchcert.certificates.theorem5 import assemble_MN
from switchcert.dynamics.delays import DelayFunction
from switchcert.dynamics.network import StochasticSystem, SwitchedNetworkModel, TanhNonlinearity
from switchcert.dynamics.nu import NuFunction
from switchcert.exceptions import DomainError
from switchcert.simulation.trajectory import Trajectory
from switchcert.switching.families import FamilyState, RateMap, SwitchingFamily

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LyapunovV1Spec:
    """
    Data of V1. Z and Q may be zero here; positivity is a certificate concern.

    Attributes:
        P (list[np.ndarray]): Per-mode P(xi).
        Z (np.ndarray): Diagonal entries of Z.
        Q (np.ndarray): Integral weight.
        nu (NuFunction): Weight function.
        nonlinearity: Activation g with `integral` and `derivative`.
        delay (DelayFunction): tau(t).
    """
    P: List[np.ndarray]
    Z: np.ndarray
    Q: np.ndarray
    nu: NuFunction
    nonlinearity: TanhNonlinearity
    delay: DelayFunction

    @classmethod
    def from_certificate(cls, cert: CertificateThm4, nu: NuFunction, nonlinearity: TanhNonlinearity,
                         delay: DelayFunction) -> LyapunovV1Spec:
        return cls(P=list(cert.P), Z=np.asarray(cert.Z), Q=cert.Q, nu=nu, nonlinearity=nonlinearity, delay=delay)

    @classmethod
    def build(cls, P: Sequence, Z, Q, nu: NuFunction, delay: DelayFunction,
              nonlinearity: Optional[TanhNonlinearity] = None) -> LyapunovV1Spec:
        P = [np.atleast_2d(np.asarray(p, dtype=float)) for p in P]
        n = P[0].shape[0]
        Z = np.asarray(Z, dtype=float)
        Z = np.diag(Z) if Z.ndim == 2 else np.broadcast_to(Z, (n,)).astype(float)
        Q = float(Q) * np.eye(n) if np.ndim(Q) == 0 else np.atleast_2d(np.asarray(Q, dtype=float))
        return cls(P=P, Z=Z, Q=Q, nu=nu, nonlinearity=nonlinearity or TanhNonlinearity(n), delay=delay)

    def instantaneous(self, x: np.ndarray, mode: int) -> float:
        """x'P(mode)x + 2 sum_i Z_i int_0^{x_i} g_i, without the nu factor."""
        return float(x @ self.P[mode] @ x + 2.0 * self.Z @ self.nonlinearity.integral(x))


@dataclass(frozen=True)
class LyapunovV2Spec:
    P: List[np.ndarray]
    nu: NuFunction

    @classmethod
    def from_certificate(cls, cert: CertificateThm5, nu: NuFunction) -> LyapunovV2Spec:
        return cls(P=list(cert.P), nu=nu)


def _extended_times(traj: Trajectory) -> np.ndarray:
    """History nodes at spacing h on [-tau_b, 0) followed by the trajectory grid."""
    if not math.isfinite(traj.tau_b):
        raise DomainError("unbounded history depth")
    count = int(math.ceil(traj.tau_b / traj.step - 1e-9))
    negative = np.maximum(-np.arange(count, 0, -1) * traj.step, -traj.tau_b)
    return np.concatenate((np.unique(negative), traj.times))


def _states_at(traj: Trajectory, query: np.ndarray) -> np.ndarray:
    """Vectorized history lookup: phi for s <= 0, linear interpolation otherwise."""
    query = np.asarray(query, dtype=float)
    if np.any(query < -traj.tau_b) or np.any(query > traj.times[-1]):
        raise DomainError("history lookup outside [-tau_b, horizon]")
    out = np.empty((query.size, traj.dimension))
    neg = query <= 0.0
    for i in np.flatnonzero(neg):
        out[i] = traj.initial_segment(query[i])
    pos = np.flatnonzero(~neg)
    if pos.size:
        last = len(traj.times) - 1
        j = np.searchsorted(traj.times, query[pos], side="right") - 1
        k = np.minimum(j + 1, last)
        span = traj.times[k] - traj.times[j]
        w = np.where(span > 0, (query[pos] - traj.times[j]) / np.where(span > 0, span, 1.0), 0.0)
        a, b = traj.states[j], traj.states[k]
        out[pos] = a + w[:, None] * (b - a)
    return out


def _q_integrand(spec: LyapunovV1Spec, s: np.ndarray, x: np.ndarray) -> np.ndarray:
    gx = spec.nonlinearity(x)
    return np.asarray(spec.nu.value(s), dtype=float) * np.einsum("ij,jk,ik->i", gx, spec.Q, gx)


def V1_series(spec: LyapunovV1Spec, traj: Trajectory, indices: Optional[np.ndarray] = None) -> np.ndarray:
    """
    V1 at the given trajectory indices (all grid points by default).

    The Q-integral is the trapezoid rule on the trajectory grid, extended
    below 0 with nodes at spacing h, and cut at t - tau(t) by interpolation.
    """
    indices = np.arange(len(traj.times)) if indices is None else np.asarray(indices, dtype=int)
    nodes = _extended_times(traj)
    node_states = np.concatenate((_states_at(traj, nodes[nodes < 0]), traj.states))
    integrand = _q_integrand(spec, nodes, node_states)
    cumulative = cumulative_trapezoid(integrand, nodes, initial=0.0)

    t = traj.times[indices]
    lower = np.asarray(spec.delay.lookup_time(t), dtype=float) * np.ones_like(t)
    if np.any(lower < nodes[0]):
        bad = float(t[np.argmin(lower)])
        raise DomainError(f"V1 needs history before -tau_b at t={bad}")
    k = np.clip(np.searchsorted(nodes, lower, side="right") - 1, 0, len(nodes) - 1)
    lower_values = _q_integrand(spec, lower, _states_at(traj, lower))
    # F(lower) = F(s_k) + trapezoid on [s_k, lower]
    head = cumulative[k] + 0.5 * (lower - nodes[k]) * (integrand[k] + lower_values)
    top = cumulative[indices + (len(nodes) - len(traj.times))]
    integral = top - head

    states = traj.states[indices]
    modes = traj.modes[indices]
    quadratic = np.array([spec.instantaneous(x, int(m)) for x, m in zip(states, modes)])
    return np.asarray(spec.nu.value(t), dtype=float) * quadratic + integral


def eval_V1(spec: LyapunovV1Spec, traj: Trajectory, t: float) -> float:
    """
    V1 at grid time t.

    Raises:
        DomainError: If t is off-grid or the history window is unavailable.
    """
    return float(V1_series(spec, traj, np.array([traj.index_of(t)]))[0])


def eval_V2(spec: LyapunovV2Spec, traj: Trajectory, t: float) -> float:
    j = traj.index_of(t)
    x = traj.states[j]
    return float(spec.nu.value(t) * (x @ spec.P[int(traj.modes[j])] @ x))


def eval_generator_V1(
    spec: LyapunovV1Spec,
    model: StochasticSystem,
    family: SwitchingFamily,
    rates: RateMap,
    x_now: np.ndarray,
    x_delayed: np.ndarray,
    mode: int,
    t: float,
    delay: Optional[DelayFunction] = None,
    state: Optional[FamilyState] = None,
) -> float:
    """
    Pointwise generator of V1 at (x(t), x(t - tau(t)), r(t) = mode).

    With a conservative chi the value is an upper bound.

    Args:
        spec (LyapunovV1Spec): Functional data.
        model (StochasticSystem): Supplies drift and diffusion.
        family (SwitchingFamily): Supplies the next-mode law for chi.
        rates (RateMap): Cox intensities.
        x_now, x_delayed (np.ndarray): Current and delayed state.
        mode (int): Current mode.
        t (float): Time.
        delay (DelayFunction, optional): Defaults to `spec.delay`.
        state (FamilyState, optional): Family state for chi.

    Returns:
        float: The generator value.
    """
    delay = delay or spec.delay
    x = np.asarray(x_now, dtype=float)
    y = np.asarray(x_delayed, dtype=float)
    P = spec.P[mode]
    g = spec.nonlinearity
    gx, gy = g(x), g(y)
    f = model.drift(x, y, mode, t)
    s = model.diffusion(x, y, mode, t)
    chi = chi_term(family, spec.P, mode, rates, state=state).matrix

    nu_t = float(spec.nu.value(t))
    hessian_half = P + np.diag(spec.Z * g.derivative(x))
    value = (
        float(spec.nu.derivative(t)) * spec.instantaneous(x, mode)
        + nu_t * (2.0 * (x @ P + gx * spec.Z) @ f
                  + float(np.trace(s.T @ hessian_half @ s))
                  + x @ chi @ x
                  + gx @ spec.Q @ gx)
        - (1.0 - float(delay.derivative(t))) * float(spec.nu.value(delay.lookup_time(t))) * (gy @ spec.Q @ gy)
    )
    return float(value)


def eval_generator_V2(
    spec: LyapunovV2Spec,
    model: StochasticSystem,
    family: SwitchingFamily,
    rates: RateMap,
    x_now: np.ndarray,
    x_delayed: np.ndarray,
    mode: int,
    t: float,
    state: Optional[FamilyState] = None,
) -> float:
    """Pointwise generator of V2."""
    x = np.asarray(x_now, dtype=float)
    y = np.asarray(x_delayed, dtype=float)
    P = spec.P[mode]
    f = model.drift(x, y, mode, t)
    s = model.diffusion(x, y, mode, t)
    chi = chi_term(family, spec.P, mode, rates, state=state).matrix
    return float(
        float(spec.nu.derivative(t)) * (x @ P @ x)
        + float(spec.nu.value(t)) * (2.0 * x @ P @ f + float(np.trace(s.T @ P @ s)) + x @ chi @ x)
    )


def eval_generator_V2_bound(
    spec: LyapunovV2Spec,
    model: SwitchedNetworkModel,
    cert: CertificateThm5,
    family: SwitchingFamily,
    rates: RateMap,
    x_now: np.ndarray,
    x_delayed: np.ndarray,
    mode: int,
    t: float,
    delay: DelayFunction,
    state: Optional[FamilyState] = None,
) -> float:
    """nu(t) x'M_k x + nu(t - tau(t)) x_tau' N_k x_tau."""
    x = np.asarray(x_now, dtype=float)
    y = np.asarray(x_delayed, dtype=float)
    chi = chi_term(family, cert.P, mode, rates, state=state).matrix
    M, N = assemble_MN(model, cert, chi, mode)
    return float(spec.nu.value(t) * (x @ M @ x) + spec.nu.value(delay.lookup_time(t)) * (y @ N @ y))


def generator_V1_series(
    spec: LyapunovV1Spec,
    model: StochasticSystem,
    family: SwitchingFamily,
    rates: RateMap,
    traj: Trajectory,
) -> tuple:
    """
    Generator of V1 along a trajectory for trapezoid integration.

    Returns:
        tuple: (left, right) where left[j] is the value at times[j] and
        right[j] the value at times[j+1], both in the mode of step j.
        chi uses the family state recorded on the trajectory when present.
    """
    times = traj.times
    lookups = np.asarray(spec.delay.lookup_time(times), dtype=float) * np.ones_like(times)
    delayed = _states_at(traj, lookups)
    modes = traj.modes
    family_states = traj.family_states or (None,) * len(times)
    values = np.array([
        eval_generator_V1(spec, model, family, rates, traj.states[j], delayed[j], int(modes[j]), float(times[j]),
                          state=family_states[j])
        for j in range(len(times))
    ])
    left = values[:-1]
    right = values[1:].copy()
    for j in np.flatnonzero(modes[1:] != modes[:-1]):
        right[j] = eval_generator_V1(spec, model, family, rates, traj.states[j + 1], delayed[j + 1],
                                     int(modes[j]), float(times[j + 1]), state=family_states[j])
    return left, right
