# FILE: tests/analysis/test_acceptance.py

"""
Long Monte Carlo runs on the bundled two-mode network. Run with `pytest -m slow`.
"""

import json

import numpy as np
import pytest

from switchcert.analysis.classification import classify_stability
from switchcert.analysis.ensemble import mc_ensemble
from switchcert.analysis.lyapunov import LyapunovV1Spec
from switchcert.analysis.martingale import supermartingale_check
from switchcert.operations.reproduce_operations import (
    FAST_STEP,
    INSTABILITY_FLOOR,
    INSTABILITY_WINDOW_START,
    instability_run,
    reproduce_example,
)
from switchcert.operations.simulation_operations import run_ensemble
from switchcert.switching.families import FixedSequence, RateMap

pytestmark = pytest.mark.slow


def fast_copy(experiment, horizon=None, trials=None):
    sim = experiment.config.simulation
    update = {"h": FAST_STEP, "record_step": 0.1}
    if horizon is not None:
        update["horizon"] = horizon
    if trials is not None:
        update["trials"] = trials
    experiment.config = experiment.config.model_copy(update={"simulation": sim.model_copy(update=update)})
    return experiment


def test_switched_network_converges_in_mean_square(constant_experiment):
    experiment = fast_copy(constant_experiment, horizon=100.0, trials=200)
    stats = run_ensemble(experiment, threads=4, progress=False)
    assert stats.diverged == 0
    assert stats.mean_x2[-1] < 1e-2
    assert supermartingale_check(stats).passed
    result = classify_stability(stats, experiment.nu)
    assert result.mean_square
    assert result.nu_mean_square
    assert np.isfinite(result.M)


def test_mode_zero_subsystem_does_not_converge(constant_experiment):
    stats = instability_run(constant_experiment, threads=4)
    window = stats.mean_x2[stats.times >= INSTABILITY_WINDOW_START]
    assert np.min(window) > INSTABILITY_FLOOR
    assert not classify_stability(stats, constant_experiment.nu).mean_square


def test_unswitched_subsystem_breaks_the_supermartingale_property(constant_experiment):
    e = constant_experiment
    spec = LyapunovV1Spec(P=[e.thm4.P[0]], Z=e.thm4.Z, Q=e.thm4.Q, nu=e.nu,
                          nonlinearity=e.model.nonlinearity, delay=e.delay)
    stats = mc_ensemble(e.model.subsystem(0), FixedSequence([0], mode_count=1), RateMap.constant(1.0, 1),
                        e.delay, e.init, e.nu, h=FAST_STEP, horizon=100.0, trials=50, seed=3,
                        v1_spec=spec, threads=4, record_step=0.1)
    report = supermartingale_check(stats)
    assert not report.passed
    assert report.worst_violation > 0


def test_affine_delay_example_is_nu_stable(affine_experiment):
    experiment = fast_copy(affine_experiment, trials=100)
    stats = run_ensemble(experiment, threads=4, progress=False)
    assert classify_stability(stats, experiment.nu).nu_mean_square


@pytest.mark.parametrize("case,reference", [("constant", -0.8913), ("affine", -1.8069)])
def test_reproduce_bundle(tmp_path, case, reference):
    response = reproduce_example(case, output_dir=str(tmp_path), fast=True, threads=4, trials=50,
                                 include_instability=(case == "constant"))
    assert response["status"], response["message"]
    assert response["result"]["pass"] is True
    summary = json.loads((tmp_path / "reproduce_summary.json").read_text(encoding="utf-8"))
    assert abs(summary["lambda_max"] - reference) <= 0.05
    assert summary["lambda_matches"] is True
    assert (tmp_path / "decay_curve.csv").exists()
    assert (tmp_path / "classification.json").exists()
    if case == "constant":
        assert summary["instability"]["stays_away_from_zero"] is True
    else:
        assert (tmp_path / "decay_curve_window.csv").exists()
