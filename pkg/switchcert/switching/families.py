# FILE: switchcert/switching/families.py

"""
Discrete adapted mode sequences {xi^k} and the Cox rate map.

A `SwitchingFamily` is a strategy object: it creates a mutable
`FamilyState`, draws the next mode from it, and reports the conditional law
of the next mode given the state (exact, or a conservative-bound marker when
the law is history dependent and only bounded).
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Union

import numpy as np

from switchcert.exceptions import ConfigurationError, DomainError

logger = logging.getLogger(__name__)

PROBABILITY_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ConservativeBound:
    """Marker returned instead of a distribution when only a bound is known."""
    description: str


BOUND = ConservativeBound(
    "next-mode law depends on the full walk history; certify with "
    "(1/2) mu(1) [P(0) - P(1)] under P(0) >= P(1)"
)

NextModeLaw = Union[np.ndarray, ConservativeBound]


@dataclass
class FamilyState:
    """
    Internal state of a mode sequence.

    Attributes:
        mode (int): Current mode xi^k.
        hidden (int, optional): Hidden chain state zeta^k (HiddenMarkov).
        partial_sum (int): Walk partial sum S_k (ReflectedMaxWalk).
        running_max (int): Running maximum Y_k (ReflectedMaxWalk).
        position (int): Index into an explicit sequence (FixedSequence).
    """
    mode: int
    hidden: Optional[int] = None
    partial_sum: int = 0
    running_max: int = 0
    position: int = 0


@dataclass(frozen=True)
class RateMap:
    """
    Mode-dependent Cox intensities mu(xi) with the uniform bound mu0.

    Attributes:
        rates (tuple[float, ...]): Positive rate per mode (1/time).
        mu0 (float): Upper bound on every rate.
    """
    rates: tuple
    mu0: float

    def __post_init__(self) -> None:
        rates = tuple(float(r) for r in self.rates)
        object.__setattr__(self, "rates", rates)
        if not rates:
            raise ConfigurationError("rate map is empty", key="switching.rates")
        if not self.mu0 > 0:
            raise ConfigurationError(f"mu0 must be positive, got {self.mu0}", key="switching.mu0")
        for mode, rate in enumerate(rates):
            if not rate > 0:
                raise ConfigurationError(f"rate of mode {mode} must be positive, got {rate}", key="switching.rates")
            if rate > self.mu0:
                raise ConfigurationError(f"rate of mode {mode} ({rate}) exceeds mu0={self.mu0}", key="switching.rates")

    @classmethod
    def constant(cls, rate: float, mode_count: int) -> RateMap:
        """Same rate for every mode, mu0 = rate."""
        return cls(rates=tuple([rate] * mode_count), mu0=rate)

    @property
    def mode_count(self) -> int:
        return len(self.rates)

    def rate(self, mode: int) -> float:
        """Return mu(mode).

        Raises:
            ConfigurationError: If the mode is not covered by the map.
        """
        if not 0 <= mode < len(self.rates):
            raise ConfigurationError(f"unknown mode {mode} (rate map covers {len(self.rates)} modes)",
                                     key="switching.rates")
        return self.rates[mode]


def _check_distribution(row: np.ndarray, name: str) -> None:
    if np.any(row < 0) or abs(float(row.sum()) - 1.0) > PROBABILITY_TOLERANCE:
        raise ConfigurationError(f"{name} must be a probability vector (sum={row.sum()!r})")


def _check_stochastic(matrix: np.ndarray, name: str) -> None:
    if matrix.ndim != 2:
        raise ConfigurationError(f"{name} must be a matrix, got shape {matrix.shape}")
    for i, row in enumerate(matrix):
        _check_distribution(row, f"{name}[{i}]")


class SwitchingFamily(ABC):
    """Abstract base class for discrete mode-sequence laws."""

    kind: str = "abstract"

    @property
    @abstractmethod
    def mode_count(self) -> int:
        """Number of modes the family can emit."""
        ...

    @abstractmethod
    def initial_state(self, initial_mode: int) -> FamilyState:
        """Build the state in which xi^0 = initial_mode."""
        ...

    @abstractmethod
    def next_mode(self, state: FamilyState, rng: np.random.Generator) -> int:
        """Draw xi^{k+1}, update `state` in place, and return the new mode."""
        ...

    @abstractmethod
    def conditional_next_distribution(self, state: FamilyState) -> NextModeLaw:
        """Law of xi^{k+1} given the state, or `BOUND`."""
        ...

    def states_for_mode(self, mode: int) -> List[FamilyState]:
        """
        Representative states covering every conditional law the family can
        have while in `mode`. Certificates must hold for each of them.
        """
        return [self.initial_state(mode)]

    def has_next(self, state: FamilyState) -> bool:
        """False once the sequence has no further switches."""
        return True

    def _check_mode(self, mode: int) -> None:
        if not 0 <= mode < self.mode_count:
            raise ConfigurationError(f"mode {mode} outside 0..{self.mode_count - 1}", key="switching.initial_mode")


class IndependentIID(SwitchingFamily):
    """xi^k i.i.d. with a fixed distribution over modes."""

    kind = "iid"

    def __init__(self, dist: Sequence[float]):
        self.dist = np.asarray(dist, dtype=float)
        _check_distribution(self.dist, "dist")

    @property
    def mode_count(self) -> int:
        return len(self.dist)

    def initial_state(self, initial_mode: int) -> FamilyState:
        self._check_mode(initial_mode)
        return FamilyState(mode=initial_mode)

    def next_mode(self, state: FamilyState, rng: np.random.Generator) -> int:
        state.mode = int(rng.choice(self.mode_count, p=self.dist))
        return state.mode

    def conditional_next_distribution(self, state: FamilyState) -> NextModeLaw:
        return self.dist.copy()


class FiniteMarkov(SwitchingFamily):
    """Homogeneous Markov chain with row-stochastic transition matrix R."""

    kind = "markov"

    def __init__(self, transition: Sequence[Sequence[float]]):
        self.transition = np.asarray(transition, dtype=float)
        _check_stochastic(self.transition, "R")
        if self.transition.shape[0] != self.transition.shape[1]:
            raise ConfigurationError(f"R must be square, got shape {self.transition.shape}")

    @property
    def mode_count(self) -> int:
        return self.transition.shape[0]

    def initial_state(self, initial_mode: int) -> FamilyState:
        self._check_mode(initial_mode)
        return FamilyState(mode=initial_mode)

    def next_mode(self, state: FamilyState, rng: np.random.Generator) -> int:
        state.mode = int(rng.choice(self.mode_count, p=self.transition[state.mode]))
        return state.mode

    def conditional_next_distribution(self, state: FamilyState) -> NextModeLaw:
        return self.transition[state.mode].copy()


class HiddenMarkov(SwitchingFamily):
    """
    Hidden chain zeta^k with transition T; the observed mode is drawn from
    emission[zeta^k]. The initial hidden state must be supplied.
    """

    kind = "hidden_markov"

    def __init__(
        self,
        transition: Sequence[Sequence[float]],
        emission: Sequence[Sequence[float]],
        initial_hidden: int,
    ):
        self.transition = np.asarray(transition, dtype=float)
        self.emission = np.asarray(emission, dtype=float)
        _check_stochastic(self.transition, "T")
        _check_stochastic(self.emission, "emission")
        if self.transition.shape[0] != self.transition.shape[1]:
            raise ConfigurationError(f"T must be square, got shape {self.transition.shape}")
        if self.emission.shape[0] != self.transition.shape[0]:
            raise ConfigurationError("emission needs one row per hidden state")
        if not 0 <= initial_hidden < self.transition.shape[0]:
            raise ConfigurationError(f"initial_hidden {initial_hidden} out of range",
                                     key="switching.family.initial_hidden")
        self.initial_hidden = int(initial_hidden)

    @property
    def mode_count(self) -> int:
        return self.emission.shape[1]

    @property
    def hidden_count(self) -> int:
        return self.transition.shape[0]

    def initial_state(self, initial_mode: int) -> FamilyState:
        self._check_mode(initial_mode)
        if self.emission[self.initial_hidden, initial_mode] == 0:
            raise ConfigurationError(
                f"mode {initial_mode} cannot be emitted by hidden state {self.initial_hidden}",
                key="switching.initial_mode",
            )
        return FamilyState(mode=initial_mode, hidden=self.initial_hidden)

    def next_mode(self, state: FamilyState, rng: np.random.Generator) -> int:
        state.hidden = int(rng.choice(self.hidden_count, p=self.transition[state.hidden]))
        state.mode = int(rng.choice(self.mode_count, p=self.emission[state.hidden]))
        return state.mode

    def conditional_next_distribution(self, state: FamilyState) -> NextModeLaw:
        # sum over the hidden successor zeta' of T(zeta, zeta') * P(xi | zeta')
        return self.transition[state.hidden] @ self.emission

    def states_for_mode(self, mode: int) -> List[FamilyState]:
        self._check_mode(mode)
        return [
            FamilyState(mode=mode, hidden=h)
            for h in range(self.hidden_count)
            if self.emission[h, mode] > 0
        ]


class ReflectedMaxWalk(SwitchingFamily):
    """
    Mode 0 iff the running maximum of a fair +-1 walk is attained now.

    The state is (S, Y); S = Y = 0 initially. The sequence is not Markov:
    leaving mode 1 depends on the distance Y - S.
    """

    kind = "reflected_max_walk"

    @property
    def mode_count(self) -> int:
        return 2

    def initial_state(self, initial_mode: int) -> FamilyState:
        self._check_mode(initial_mode)
        if initial_mode == 0:
            return FamilyState(mode=0, partial_sum=0, running_max=0)
        return FamilyState(mode=1, partial_sum=-1, running_max=0)

    def next_mode(self, state: FamilyState, rng: np.random.Generator) -> int:
        step = 1 if rng.random() < 0.5 else -1
        return self.apply_step(state, step)

    @staticmethod
    def apply_step(state: FamilyState, step: int) -> int:
        """Advance the walk by `step` (+1 or -1) and return the new mode."""
        if step not in (-1, 1):
            raise DomainError(f"walk step must be +1 or -1, got {step}")
        state.partial_sum += step
        state.running_max = max(state.running_max, state.partial_sum)
        state.mode = 0 if state.running_max == state.partial_sum else 1
        return state.mode

    def conditional_next_distribution(self, state: FamilyState) -> NextModeLaw:
        if state.mode == 0:
            return np.array([0.5, 0.5])
        return BOUND


class FixedSequence(SwitchingFamily):
    """Explicit mode list; no switches occur once it is exhausted."""

    kind = "fixed"

    def __init__(self, modes: Sequence[int], mode_count: Optional[int] = None):
        if not modes:
            raise ConfigurationError("fixed sequence needs at least one mode", key="switching.family.modes")
        self.modes = tuple(int(m) for m in modes)
        self._mode_count = int(mode_count) if mode_count is not None else max(self.modes) + 1
        if min(self.modes) < 0 or max(self.modes) >= self._mode_count:
            raise ConfigurationError("fixed sequence mode out of range", key="switching.family.modes")

    @property
    def mode_count(self) -> int:
        return self._mode_count

    def initial_state(self, initial_mode: int) -> FamilyState:
        if initial_mode != self.modes[0]:
            raise ConfigurationError(
                f"fixed sequence starts with mode {self.modes[0]}, not {initial_mode}",
                key="switching.initial_mode",
            )
        return FamilyState(mode=initial_mode, position=0)

    def has_next(self, state: FamilyState) -> bool:
        return state.position + 1 < len(self.modes)

    def next_mode(self, state: FamilyState, rng: np.random.Generator) -> int:
        if self.has_next(state):
            state.position += 1
            state.mode = self.modes[state.position]
        return state.mode

    def conditional_next_distribution(self, state: FamilyState) -> NextModeLaw:
        dist = np.zeros(self.mode_count)
        following = self.modes[state.position + 1] if self.has_next(state) else state.mode
        dist[following] = 1.0
        return dist

    def states_for_mode(self, mode: int) -> List[FamilyState]:
        return [
            FamilyState(mode=mode, position=i)
            for i, m in enumerate(self.modes)
            if m == mode
        ]


def next_mode(family: SwitchingFamily, state: FamilyState, rng: np.random.Generator) -> int:
    """Draw xi^{k+1} from `family` given `state`; `state` is updated."""
    return family.next_mode(state, rng)


def conditional_next_distribution(family: SwitchingFamily, state: FamilyState) -> NextModeLaw:
    """Exact law of the next mode, or the `BOUND` marker."""
    return family.conditional_next_distribution(state)
