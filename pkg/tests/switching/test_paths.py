# FILE: tests/switching/test_paths.py

import math

import numpy as np
import pytest

from switchcert.exceptions import ConfigurationError, DomainError, InputError
from switchcert.switching.families import (
    FiniteMarkov,
    FixedSequence,
    HiddenMarkov,
    IndependentIID,
    RateMap,
    ReflectedMaxWalk,
)
from switchcert.switching.paths import SwitchingPath, family_states_on_grid, mode_at, modes_on_grid, sample_path
from switchcert.utils.rng import make_generator


def test_mode_at_is_right_continuous():
    path = SwitchingPath(jump_times=np.array([1.0, 2.5]), modes=np.array([0, 1, 0]), horizon=4.0)
    assert mode_at(path, 0.0) == 0
    assert mode_at(path, 0.999) == 0
    assert mode_at(path, 1.0) == 1
    assert path.mode_at(2.5) == 0
    assert path.mode_at(4.0) == 0


def test_mode_at_outside_window_raises():
    path = SwitchingPath(jump_times=np.array([]), modes=np.array([0]), horizon=1.0)
    with pytest.raises(DomainError):
        mode_at(path, 1.5)
    with pytest.raises(DomainError):
        mode_at(path, -0.1)


def test_modes_on_grid_matches_scalar_lookup():
    path = SwitchingPath(jump_times=np.array([0.3, 0.7]), modes=np.array([1, 0, 1]), horizon=1.0)
    grid = np.linspace(0.0, 1.0, 11)
    assert list(modes_on_grid(path, grid)) == [mode_at(path, t) for t in grid]


def test_path_validation():
    with pytest.raises(InputError):
        SwitchingPath(jump_times=np.array([0.5]), modes=np.array([0]), horizon=1.0)
    with pytest.raises(InputError):
        SwitchingPath(jump_times=np.array([0.5, 0.4]), modes=np.array([0, 1, 0]), horizon=1.0)
    with pytest.raises(InputError):
        SwitchingPath(jump_times=np.array([2.0]), modes=np.array([0, 1]), horizon=1.0)


def test_path_arrays_are_read_only():
    path = SwitchingPath(jump_times=np.array([0.5]), modes=np.array([0, 1]), horizon=1.0)
    with pytest.raises(ValueError):
        path.modes[0] = 1


def test_table_round_trip():
    path = SwitchingPath(jump_times=np.array([0.25, 0.5]), modes=np.array([1, 0, 1]), horizon=2.0)
    table = path.to_table()
    assert list(table.columns) == ["jump_time", "new_mode"]
    assert table.iloc[0].tolist() == [0.0, 1]
    back = SwitchingPath.from_table(table, horizon=2.0)
    assert np.array_equal(back.jump_times, path.jump_times)
    assert np.array_equal(back.modes, path.modes)


def test_from_table_requires_initial_row():
    table = SwitchingPath(jump_times=np.array([0.5]), modes=np.array([0, 1]), horizon=1.0).to_table()
    with pytest.raises(InputError):
        SwitchingPath.from_table(table.iloc[1:], horizon=1.0)


def test_sojourns_drop_censored_interval():
    path = SwitchingPath(jump_times=np.array([1.0, 3.0]), modes=np.array([0, 1, 0]), horizon=10.0)
    durations, modes = path.sojourns()
    assert np.allclose(durations, [1.0, 2.0])
    assert list(modes) == [0, 1]


def test_zero_horizon_has_no_jumps():
    path = sample_path(ReflectedMaxWalk(), RateMap((50, 1), 50), 0, 0.0, seed=1)
    assert path.jump_count == 0
    assert path.initial_mode == 0


def test_negative_horizon_raises():
    with pytest.raises(DomainError):
        sample_path(ReflectedMaxWalk(), RateMap((50, 1), 50), 0, -1.0, seed=1)


def test_rate_map_must_cover_family():
    with pytest.raises(ConfigurationError):
        sample_path(IndependentIID([0.5, 0.5]), RateMap((1.0,), 1.0), 0, 1.0, seed=1)


def test_identity_markov_path_stays_in_initial_mode():
    path = sample_path(FiniteMarkov(np.eye(2)), RateMap.constant(5.0, 2), 1, 10.0, seed=3)
    assert set(path.modes.tolist()) == {1}


def test_fixed_sequence_stops_switching():
    path = sample_path(FixedSequence([0, 1]), RateMap.constant(100.0, 2), 0, 10.0, seed=3)
    assert path.jump_count == 1
    assert list(path.modes) == [0, 1]


def test_same_seed_same_path():
    family, rates = ReflectedMaxWalk(), RateMap((50, 1), 50)
    first = sample_path(family, rates, 0, 5.0, seed=11)
    second = sample_path(family, rates, 0, 5.0, seed=11)
    assert np.array_equal(first.jump_times, second.jump_times)
    assert np.array_equal(first.modes, second.modes)


def test_constant_rate_jump_count_is_poisson():
    rate, horizon, paths = 3.0, 2.0, 10_000
    family, rates = IndependentIID([0.5, 0.5]), RateMap.constant(rate, 2)
    counts = np.array([
        sample_path(family, rates, 0, horizon, seed=0, rng=make_generator(5, i)).jump_count
        for i in range(paths)
    ])
    mean = rate * horizon
    assert abs(counts.mean() - mean) <= 3 * math.sqrt(mean / paths)
    assert abs(counts.var(ddof=1) - mean) <= 0.2 * mean


def test_sojourn_means_follow_mode_rates():
    family, rates = IndependentIID([0.5, 0.5]), RateMap((4.0, 1.0), 4.0)
    path = sample_path(family, rates, 0, 4000.0, seed=8)
    durations, modes = path.sojourns()
    for mode, rate in enumerate(rates.rates):
        sample = durations[modes == mode]
        assert abs(sample.mean() - 1 / rate) <= 4 * (1 / rate) / math.sqrt(len(sample))


def linear_scan_mode(jumps, modes, t):
    k = 0
    while k < len(jumps) and jumps[k] <= t:
        k += 1
    return int(modes[k])


def test_mode_at_agrees_with_linear_scan():
    rng = np.random.default_rng(21)
    for _ in range(50):
        count = int(rng.integers(0, 12))
        jumps = np.sort(rng.uniform(0.0, 5.0, count))
        modes = rng.integers(0, 3, count + 1)
        path = SwitchingPath(jump_times=jumps, modes=modes, horizon=5.0)
        queries = np.concatenate((rng.uniform(0.0, 5.0, 40), jumps, [0.0, 5.0]))
        for t in queries:
            assert mode_at(path, t) == linear_scan_mode(jumps, modes, t)
        assert list(modes_on_grid(path, np.sort(queries))) == [
            linear_scan_mode(jumps, modes, t) for t in np.sort(queries)
        ]


def test_sampled_path_records_family_state_per_interval():
    family = HiddenMarkov([[0.0, 1.0], [1.0, 0.0]], [[1.0, 0.0], [0.5, 0.5]], initial_hidden=0)
    path = sample_path(family, RateMap.constant(5.0, 2), 0, 10.0, seed=4)
    assert len(path.family_states) == len(path.modes)
    assert [s.mode for s in path.family_states] == path.modes.tolist()
    # the hidden chain alternates deterministically
    assert [s.hidden for s in path.family_states] == [k % 2 for k in range(len(path.modes))]


def test_recorded_states_are_snapshots():
    path = sample_path(FixedSequence([0, 1, 0, 1]), RateMap.constant(100.0, 2), 0, 10.0, seed=2)
    assert [s.position for s in path.family_states] == [0, 1, 2, 3]
    grid = np.concatenate(([0.0], path.jump_times))
    assert [s.position for s in family_states_on_grid(path, grid)] == [0, 1, 2, 3]


def test_table_paths_carry_no_family_states():
    path = SwitchingPath(jump_times=np.array([0.5]), modes=np.array([0, 1]), horizon=1.0)
    back = SwitchingPath.from_table(path.to_table(), horizon=1.0)
    assert back.family_states is None
    assert family_states_on_grid(back, np.array([0.0, 1.0])) is None


def test_family_state_count_must_match_intervals():
    path = sample_path(FixedSequence([0, 1]), RateMap.constant(100.0, 2), 0, 10.0, seed=3)
    with pytest.raises(InputError):
        SwitchingPath(jump_times=path.jump_times, modes=path.modes, horizon=10.0,
                      family_states=path.family_states[:1])
