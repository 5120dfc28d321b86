# FILE: switchcert/switching/__init__.py

from switchcert.switching.families import (
    BOUND,
    ConservativeBound,
    FamilyState,
    FiniteMarkov,
    FixedSequence,
    HiddenMarkov,
    IndependentIID,
    RateMap,
    ReflectedMaxWalk,
    SwitchingFamily,
    conditional_next_distribution,
    next_mode,
)
from switchcert.switching.paths import SwitchingPath, mode_at, modes_on_grid, sample_path

__all__ = [
    "BOUND",
    "ConservativeBound",
    "FamilyState",
    "FiniteMarkov",
    "FixedSequence",
    "HiddenMarkov",
    "IndependentIID",
    "RateMap",
    "ReflectedMaxWalk",
    "SwitchingFamily",
    "SwitchingPath",
    "conditional_next_distribution",
    "mode_at",
    "modes_on_grid",
    "next_mode",
    "sample_path",
]
