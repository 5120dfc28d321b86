# FILE: switchcert/dynamics/__init__.py

from switchcert.dynamics.delays import (
    AffineDelay,
    ConstantDelay,
    CustomDelay,
    DelayFunction,
    DelayReport,
    default_grid,
    validate_delay,
)
from switchcert.dynamics.network import (
    CustomNoise,
    DelayedOutputNoise,
    GeneralSDS,
    LinearMixNoise,
    NoiseBounds,
    StochasticSystem,
    SwitchedNetworkModel,
    TanhNonlinearity,
    ZeroNoise,
)
from switchcert.dynamics.nu import (
    CustomNu,
    ExponentialNu,
    LogLogNu,
    LogNu,
    NuConstants,
    NuFunction,
    PowerNu,
    nu_constants,
    suggest_nu,
)
from switchcert.dynamics.validation import HypothesisReport, validate_hypotheses
