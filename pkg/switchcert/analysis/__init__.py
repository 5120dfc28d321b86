# FILE: switchcert/analysis/__init__.py

from switchcert.analysis.classification import StabilityClassification, classify_stability
from switchcert.analysis.ensemble import McStats, mc_ensemble
from switchcert.analysis.halanay import (
    HalanayProblem,
    HalanayReport,
    HalanaySeries,
    halanay_bound_check,
    halanay_integrate,
)
from switchcert.analysis.lyapunov import (
    LyapunovV1Spec,
    LyapunovV2Spec,
    V1_series,
    eval_generator_V1,
    eval_generator_V2,
    eval_generator_V2_bound,
    eval_V1,
    eval_V2,
)
from switchcert.analysis.martingale import DynkinReport, SupermartingaleReport, dynkin_residual, supermartingale_check
