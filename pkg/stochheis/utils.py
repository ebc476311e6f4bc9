# -*- coding: utf-8 -*-

"""
Utility functions
"""

import logging

import numpy as np

from .errors import InvalidInput
from .processes import TimeGrid, PathEnsemble


def set_logger(level):
    """Sets the logger to be used throughout the system."""
    log_format = '%(message)s'
    logging.basicConfig(format=log_format)
    logger = logging.getLogger("Logger")
    logger.setLevel(level)


def save_ensemble_to_file(ens, filename):
    """
    Saves an ensemble as a numpy archive: one row per path, plus the grid,
    the seed and the name of the random generator.
    """
    logger = logging.getLogger("Logger")
    with open(filename, 'wb') as f:
        np.savez(f, paths=ens.paths, grid=ens.grid.points,
                 seed=np.array(ens.seed), rng_name=np.array(ens.rng_name))
    logger.info('Saved %d paths with %d points each to file %s' %
                (ens.n_paths, len(ens.grid), filename))


def load_ensemble_from_file(filename, h):
    """
    Reads an ensemble written by :func:`save_ensemble_to_file`.

    :param h: the time change the paths were simulated with (not stored).
    """
    with np.load(filename) as data:
        try:
            grid = TimeGrid(data['grid'])
            paths = np.array(data['paths'])
            seed = int(data['seed'])
            rng_name = str(data['rng_name'])
        except KeyError as e:
            raise InvalidInput('Not an ensemble file: %s (missing %s)' % (filename, e))
    h.check_on(grid)
    return PathEnsemble(grid, h, paths, seed, rng_name)
