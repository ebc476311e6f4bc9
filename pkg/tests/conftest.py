# -*- coding: utf-8 -*-

"""
Shared fixtures: small Brownian ensembles with fixed seeds.
"""

import numpy as np
import pytest

from stochheis.processes import TimeChange, TimeGrid, generate


@pytest.fixture(scope='session')
def brownian():
    """Standard Brownian motion on [0, 1]."""
    return TimeChange.identity(1.0)


@pytest.fixture(scope='session')
def grid():
    return TimeGrid.uniform(1.0, 64)


@pytest.fixture(scope='session')
def ensemble(brownian, grid):
    return generate(brownian, grid, 20000, seed=7)


@pytest.fixture
def rng():
    return np.random.default_rng(20260101)
