# FILE: tests/utils/test_numerics.py

import numpy as np
import pytest

from switchcert.exceptions import InputError
from switchcert.utils.numerics import compensated_mean, compensated_sum, require_symmetric


def test_compensated_sum_recovers_cancelled_term():
    assert compensated_sum([1e16, 1.0, -1e16]) == 1.0


def test_compensated_mean_ignores_trial_order():
    rng = np.random.default_rng(12)
    trials = rng.lognormal(0.0, 4.0, size=(5_000, 3)) * rng.choice([-1.0, 1.0], size=(5_000, 3))
    reference = compensated_mean(trials)
    for _ in range(5):
        shuffled = trials[rng.permutation(len(trials))]
        assert np.array_equal(compensated_mean(shuffled), reference)


def test_compensated_mean_along_second_axis():
    values = np.array([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]])
    assert np.array_equal(compensated_mean(values, axis=1), [2.0, 5.0])


def test_require_symmetric_returns_exact_symmetric_part():
    matrix = np.array([[1.0, 2.0], [2.0 + 1e-13, 1.0]])
    sym = require_symmetric(matrix)
    assert np.array_equal(sym, sym.T)
    with pytest.raises(InputError):
        require_symmetric([[1.0, 2.0], [0.0, 1.0]])
