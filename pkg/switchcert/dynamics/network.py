# FILE: switchcert/dynamics/network.py

"""
Switched delayed networks

    dx = [-D(r) x + A(r) g(x) + B(r) g(x(t - tau))] dt + sigma(g(x), g(x(t - tau)), r) dW

and the general drift/diffusion system they specialize.
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, List, Optional, Protocol, Sequence

import numpy as np

from switchcert.exceptions import ConfigurationError, InputError
from switchcert.utils.numerics import as_square, require_symmetric

logger = logging.getLogger(__name__)

LN2 = float(np.log(2.0))


class StochasticSystem(Protocol):
    """Anything `integrate` can step: drift f(x, y, mode, t) and diffusion g(x, y, mode, t) of shape (n, m)."""

    dimension: int
    noise_dim: int
    mode_count: int

    def drift(self, x: np.ndarray, y: np.ndarray, mode: int, t: float) -> np.ndarray:
        ...

    def diffusion(self, x: np.ndarray, y: np.ndarray, mode: int, t: float) -> np.ndarray:
        ...


class TanhNonlinearity:
    """g_i = tanh with G_i = 1."""

    kind = "tanh"

    def __init__(self, dimension: int):
        self.dimension = int(dimension)
        self.G = np.ones(self.dimension)

    def __call__(self, x):
        return np.tanh(x)

    def derivative(self, x):
        return 1.0 - np.tanh(x) ** 2

    def integral(self, x):
        """Component-wise integral from 0 to x of tanh, i.e. ln cosh x."""
        ax = np.abs(np.asarray(x, dtype=float))
        return ax + np.log1p(np.exp(-2.0 * ax)) - LN2


class NoiseSpec(ABC):
    kind: str = "abstract"
    noise_dim: int = 1

    @abstractmethod
    def sigma(self, u: np.ndarray, v: np.ndarray, mode: int) -> np.ndarray:
        """Diffusion matrix (n, m) at output values u = g(x), v = g(x(t - tau))."""
        ...


class DelayedOutputNoise(NoiseSpec):
    """sigma(u, v, xi) = v as a single column."""

    kind = "delayed_output"

    def sigma(self, u, v, mode):
        return np.asarray(v, dtype=float).reshape(-1, 1)


class LinearMixNoise(NoiseSpec):
    """sigma(u, v, xi) = C1(xi) u + C2(xi) v as a single column."""

    kind = "linear_mix"

    def __init__(self, C1: Sequence, C2: Sequence):
        self.C1 = [as_square(c, "noise.C1") for c in C1]
        self.C2 = [as_square(c, "noise.C2") for c in C2]
        if len(self.C1) != len(self.C2):
            raise ConfigurationError("C1 and C2 need the same number of modes", key="model.noise")

    def sigma(self, u, v, mode):
        return (self.C1[mode] @ u + self.C2[mode] @ v).reshape(-1, 1)


class ZeroNoise(NoiseSpec):
    kind = "zero"

    def sigma(self, u, v, mode):
        return np.zeros((np.asarray(u).shape[0], 1))


class CustomNoise(NoiseSpec):
    """User diffusion. Lipschitz and growth bounds are attested, never checked."""

    kind = "custom"

    def __init__(self, fn: Callable[[np.ndarray, np.ndarray, int], np.ndarray], noise_dim: int, attested: bool = False):
        if not attested:
            logger.warning("[CustomNoise] Lipschitz/growth bounds are not attested for this diffusion")
        self.fn = fn
        self.noise_dim = int(noise_dim)
        self.attested = attested

    def sigma(self, u, v, mode):
        return np.asarray(self.fn(u, v, mode), dtype=float).reshape(np.asarray(u).shape[0], self.noise_dim)


@dataclass(frozen=True)
class NoiseBounds:
    """
    Constants of tr[s^T s] <= u^T E u + v^T F v and tr[s^T P s] <= a (u^T P u + v^T P v).

    Attributes:
        a (tuple[float, ...]): Per-mode a(xi) >= 0.
        E (tuple[np.ndarray, ...]): Per-mode positive semidefinite E(xi).
        F (tuple[np.ndarray, ...]): Per-mode positive semidefinite F(xi).
    """
    a: tuple
    E: tuple
    F: tuple

    def __post_init__(self) -> None:
        if not (len(self.a) == len(self.E) == len(self.F)):
            raise ConfigurationError("noise bounds need a, E and F for every mode", key="model.noise_bounds")
        if any(not a >= 0 for a in self.a):
            raise ConfigurationError("noise bound a(xi) must be non-negative", key="model.noise_bounds.a")
        object.__setattr__(self, "a", tuple(float(a) for a in self.a))
        object.__setattr__(self, "E", tuple(require_symmetric(e, "E") for e in self.E))
        object.__setattr__(self, "F", tuple(require_symmetric(f, "F") for f in self.F))
        for name, mats in (("E", self.E), ("F", self.F)):
            for mode, mat in enumerate(mats):
                if mat.size and np.linalg.eigvalsh(mat)[0] < -1e-12:
                    raise ConfigurationError(f"{name}({mode}) must be positive semidefinite",
                                             key=f"model.noise_bounds.{name}")


class SwitchedNetworkModel:
    """
    Per-mode network data with a shared nonlinearity.

    Args:
        D, A, B (Sequence): Per-mode n x n matrices.
        nonlinearity: Component-wise activation with `G`, `derivative`, `integral`.
        noise (NoiseSpec): Diffusion variant.
        noise_bounds (NoiseBounds): Bounds used by the certificates.
        check_hypotheses (bool): Enforce a positive diagonal D. Disabled only
            to build deliberately broken systems.
    """

    def __init__(
        self,
        D: Sequence,
        A: Sequence,
        B: Sequence,
        nonlinearity: Optional[TanhNonlinearity] = None,
        noise: Optional[NoiseSpec] = None,
        noise_bounds: Optional[NoiseBounds] = None,
        check_hypotheses: bool = True,
    ):
        self.D = [as_square(d, "model.D") for d in D]
        self.A = [as_square(a, "model.A") for a in A]
        self.B = [as_square(b, "model.B") for b in B]
        if not (len(self.D) == len(self.A) == len(self.B)) or not self.D:
            raise ConfigurationError("D, A and B need the same non-zero number of modes", key="model")
        n = self.D[0].shape[0]
        if n == 0:
            raise ConfigurationError("state dimension must be at least 1", key="model")
        for name, mats in (("D", self.D), ("A", self.A), ("B", self.B)):
            if any(m.shape != (n, n) for m in mats):
                raise ConfigurationError(f"every {name}(xi) must be {n} x {n}", key=f"model.{name}")
        if check_hypotheses:
            for mode, d in enumerate(self.D):
                if np.any(d != np.diag(np.diag(d))) or np.any(np.diag(d) <= 0):
                    raise ConfigurationError(f"D({mode}) must be diagonal with positive entries", key="model.D")

        self.nonlinearity = nonlinearity if nonlinearity is not None else TanhNonlinearity(n)
        if self.nonlinearity.dimension != n:
            raise ConfigurationError("nonlinearity dimension does not match the state", key="model.nonlinearity")
        self.noise = noise if noise is not None else ZeroNoise()
        if noise_bounds is not None and len(noise_bounds.a) != len(self.D):
            raise ConfigurationError("noise bounds mode count does not match the model", key="model.noise_bounds")
        if noise_bounds is not None and any(e.shape != (n, n) for e in noise_bounds.E + noise_bounds.F):
            raise ConfigurationError(f"E and F must be {n} x {n}", key="model.noise_bounds")
        self.noise_bounds = noise_bounds
        self.dimension = n
        self.mode_count = len(self.D)
        self.noise_dim = self.noise.noise_dim

    @property
    def G(self) -> np.ndarray:
        """Diagonal matrix of derivative bounds."""
        return np.diag(self.nonlinearity.G)

    def g(self, x):
        return self.nonlinearity(x)

    def drift(self, x, y, mode, t=0.0):
        return -self.D[mode] @ x + self.A[mode] @ self.g(x) + self.B[mode] @ self.g(y)

    def diffusion(self, x, y, mode, t=0.0):
        return self.noise.sigma(self.g(x), self.g(y), mode)

    def subsystem(self, mode: int) -> SwitchedNetworkModel:
        """Single-mode model frozen in `mode`."""
        bounds = None
        if self.noise_bounds is not None:
            nb = self.noise_bounds
            bounds = NoiseBounds(a=(nb.a[mode],), E=(nb.E[mode],), F=(nb.F[mode],))
        noise = self.noise
        if isinstance(noise, LinearMixNoise):
            noise = LinearMixNoise([noise.C1[mode]], [noise.C2[mode]])
        return SwitchedNetworkModel([self.D[mode]], [self.A[mode]], [self.B[mode]],
                                    self.nonlinearity, noise, bounds, check_hypotheses=False)


class GeneralSDS:
    """Delayed switched SDE given by user callables f(x, y, mode, t) and g(x, y, mode, t)."""

    def __init__(
        self,
        drift: Callable[[np.ndarray, np.ndarray, int, float], np.ndarray],
        diffusion: Callable[[np.ndarray, np.ndarray, int, float], np.ndarray],
        dimension: int,
        noise_dim: int = 1,
        mode_count: int = 1,
    ):
        if dimension < 1:
            raise ConfigurationError("state dimension must be at least 1")
        self._drift = drift
        self._diffusion = diffusion
        self.dimension = int(dimension)
        self.noise_dim = int(noise_dim)
        self.mode_count = int(mode_count)

    def drift(self, x, y, mode, t=0.0):
        return np.asarray(self._drift(x, y, mode, t), dtype=float).reshape(self.dimension)

    def diffusion(self, x, y, mode, t=0.0):
        return np.asarray(self._diffusion(x, y, mode, t), dtype=float).reshape(self.dimension, self.noise_dim)


def check_mode_count(system: StochasticSystem, mode_count: int) -> None:
    """Raise when a switching family can emit modes the system has no data for."""
    if mode_count > system.mode_count:
        raise ConfigurationError(
            f"switching emits {mode_count} modes but the model defines {system.mode_count}",
            key="switching",
        )


def per_mode(matrices: Sequence, n: int, name: str) -> List[np.ndarray]:
    """Coerce a per-mode list of n x n matrices."""
    out = [as_square(m, name) for m in matrices]
    if any(m.shape != (n, n) for m in out):
        raise InputError(f"every {name} must be {n} x {n}")
    return out
