# -*- coding: utf-8 -*-

import numpy as np
import pytest

from stochheis.errors import InvalidInput, InvalidTimeChange, TimeRangeError
from stochheis.processes import (TimeChange, TimeGrid, generate, realized_quadratic_variation,
                                 quadratic_variation_at, BLOCK_SIZE)
from stochheis.utils import save_ensemble_to_file, load_ensemble_from_file
from stochheis.verify import Estimate


def test_time_changes():
    assert TimeChange.identity(2.0)(1.5) == 1.5
    assert TimeChange.power(0.5, 1.0)(0.25) == pytest.approx(0.5)
    h = TimeChange.piecewise_linear([(0, 0), (1, 2), (2, 2)])
    assert h(0.5) == pytest.approx(1.0)
    assert h(1.5) == pytest.approx(2.0)
    assert h.horizon == 2.0


def test_invalid_time_changes():
    with pytest.raises(InvalidTimeChange):
        TimeChange.piecewise_linear([(0, 0), (1, 2), (2, 1)])
    with pytest.raises(InvalidTimeChange):
        TimeChange.piecewise_linear([(0, 1), (1, 2)])
    with pytest.raises(InvalidTimeChange):
        TimeChange.power(-1.0, 1.0)
    with pytest.raises(InvalidTimeChange):
        TimeChange('cubic', 1.0)


def test_times_outside_horizon():
    h = TimeChange.identity(1.0)
    with pytest.raises(TimeRangeError):
        h(1.5)
    with pytest.raises(TimeRangeError):
        h(-0.1)


@pytest.mark.parametrize('h, t, expected', [
    (TimeChange.identity(1.0), 0.5, 0.5),
    (TimeChange.power(2.0, 3.0), 3.0, 9.0),
    (TimeChange.piecewise_linear([(0, 0), (1, 2)]), 0.5, 1.0),
])
def test_quadratic_variation_at(h, t, expected):
    assert quadratic_variation_at(h, t) == pytest.approx(expected, rel=1e-15)


def test_quadratic_variation_outside_horizon():
    with pytest.raises(TimeRangeError):
        quadratic_variation_at(TimeChange.power(2.0, 3.0), 3.5)


def test_grid():
    grid = TimeGrid.uniform(1.0, 4)
    assert grid.size == 4
    assert grid.max_step == pytest.approx(0.25)
    assert grid.index_of(0.75) == 3
    with pytest.raises(TimeRangeError):
        grid.index_of(0.3)
    assert grid.coarsen(2).size == 2
    with pytest.raises(InvalidInput):
        grid.coarsen(3)
    with pytest.raises(InvalidInput):
        TimeGrid([0.0, 0.5, 0.5, 1.0])


def test_generate_is_reproducible():
    h = TimeChange.identity(1.0)
    grid = TimeGrid.uniform(1.0, 8)
    first = generate(h, grid, 1000, seed=3)
    second = generate(h, grid, 1000, seed=3)
    other = generate(h, grid, 1000, seed=4)
    assert np.array_equal(first.paths, second.paths)
    assert not np.array_equal(first.paths, other.paths)


def test_generate_does_not_depend_on_workers():
    h = TimeChange.power(2.0, 1.0)
    grid = TimeGrid.uniform(1.0, 4)
    n_paths = 2 * BLOCK_SIZE + 5
    serial = generate(h, grid, n_paths, seed=11, workers=1)
    threaded = generate(h, grid, n_paths, seed=11, workers=3)
    assert np.array_equal(serial.paths, threaded.paths)


def test_paths_start_at_zero(ensemble):
    assert np.all(ensemble.paths[:, 0] == 0)
    with pytest.raises(ValueError):
        ensemble.paths[0, 1] = 1.0


def test_flat_time_change_gives_flat_paths():
    h = TimeChange.piecewise_linear([(0, 0), (1, 0)])
    ens = generate(h, TimeGrid.uniform(1.0, 4), 100, seed=1)
    assert np.all(ens.paths == 0)


def test_marginal_variances(ensemble):
    # Var(X_t) = h(t), checked through E[X_t^2]
    for t in (0.25, 0.5, 1.0):
        estimate = Estimate.from_samples(ensemble.at(t) ** 2)
        assert estimate.agrees(t, sigmas=4)


def test_time_changed_variance():
    h = TimeChange.power(2.0, 1.0)
    ens = generate(h, TimeGrid.uniform(1.0, 8), 20000, seed=5)
    estimate = Estimate.from_samples(ens.at(0.5) ** 2)
    assert estimate.agrees(0.25, sigmas=4)


def test_realized_quadratic_variation(ensemble):
    realized = Estimate.from_samples(realized_quadratic_variation(ensemble))
    assert realized.agrees(1.0, sigmas=4)


def test_coarsened_ensemble(ensemble):
    coarse = ensemble.coarsen(2)
    assert coarse.grid.size == ensemble.grid.size // 2
    assert np.array_equal(coarse.at(0.5), ensemble.at(0.5))


def test_invalid_generation_arguments(brownian, grid):
    with pytest.raises(InvalidInput):
        generate(brownian, grid, 0, seed=1)
    with pytest.raises(InvalidInput):
        generate(brownian, grid, 10, seed=-1)


def test_ensemble_file_roundtrip(tmp_path):
    h = TimeChange.identity(1.0)
    ens = generate(h, TimeGrid.uniform(1.0, 4), 50, seed=2)
    filename = str(tmp_path / 'ensemble.npz')
    save_ensemble_to_file(ens, filename)
    loaded = load_ensemble_from_file(filename, h)
    assert np.array_equal(loaded.paths, ens.paths)
    assert loaded.seed == 2
    assert loaded.rng_name == ens.rng_name
