# -*- coding: utf-8 -*-

"""
Simulation of continuous martingales with deterministic quadratic variation.

Such a martingale is a time-changed Brownian motion X_t = B_{h(t)}, so
paths are sampled on a grid with independent Gaussian increments of
variance h(t_{k+1}) - h(t_k).
"""

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .errors import InvalidInput, InvalidTimeChange, TimeRangeError

# number of paths drawn from one random stream; fixed so that the stream
# used by a path depends only on (seed, path index)
BLOCK_SIZE = 8192

RNG_NAME = 'Philox4x64-10/SeedSequence([seed, block])'

# relative slack when checking that a time lies in [0, T] or on the grid
_TIME_TOLERANCE = 1e-12


class TimeChange(object):
    """
    Deterministic nondecreasing time change h with h(0) = 0 on [0, T].

    Supported kinds are 'identity', 'power' (h(t) = t^alpha) and
    'piecewise' (linear interpolation between knots).
    """

    kinds = ('identity', 'power', 'piecewise')

    def __init__(self, kind, horizon, alpha=None, knots=None):
        if kind not in self.kinds:
            raise InvalidTimeChange('Unknown time change: %s' % kind)
        horizon = float(horizon)
        if not np.isfinite(horizon) or horizon <= 0:
            raise InvalidTimeChange('Horizon must be positive, got %r' % horizon)
        self.kind = kind
        self.horizon = horizon
        self.alpha = None
        self.knots = None

        if kind == 'power':
            if alpha is None or not np.isfinite(alpha) or alpha <= 0:
                raise InvalidTimeChange('Power time change needs alpha > 0, got %r' % alpha)
            self.alpha = float(alpha)

        elif kind == 'piecewise':
            knots = np.array(knots, dtype=float)
            if knots.ndim != 2 or knots.shape[1] != 2 or len(knots) < 2:
                raise InvalidTimeChange('Knots must be at least two (t, h) pairs')
            if not np.all(np.isfinite(knots)):
                raise InvalidTimeChange('Non-finite knot')
            if knots[0, 0] != 0 or knots[0, 1] != 0:
                raise InvalidTimeChange('First knot must be (0, 0), got %s' % knots[0])
            if np.any(np.diff(knots[:, 0]) <= 0):
                raise InvalidTimeChange('Knot times must be strictly increasing')
            if np.any(np.diff(knots[:, 1]) < 0):
                raise InvalidTimeChange('Time change decreases between knots')
            if abs(knots[-1, 0] - horizon) > _TIME_TOLERANCE * horizon:
                raise InvalidTimeChange('Last knot at %r does not match horizon %r'
                                        % (knots[-1, 0], horizon))
            knots.setflags(write=False)
            self.knots = knots

    @classmethod
    def identity(cls, horizon):
        """Brownian motion itself, h(t) = t."""
        return cls('identity', horizon)

    @classmethod
    def power(cls, alpha, horizon):
        return cls('power', horizon, alpha=alpha)

    @classmethod
    def piecewise_linear(cls, knots):
        """
        :param knots: sequence of (t, h(t)) pairs starting at (0, 0); the
            last knot time is the horizon.
        """
        knots = [tuple(k) for k in knots]
        if not knots:
            raise InvalidTimeChange('No knots given')
        return cls('piecewise', knots[-1][0], knots=knots)

    def values(self, times):
        """Evaluates h on an array of times, checking that they lie in [0, T]."""
        times = np.asarray(times, dtype=float)
        slack = _TIME_TOLERANCE * self.horizon
        if np.any(times < -slack) or np.any(times > self.horizon + slack):
            raise TimeRangeError('Time outside [0, %r]: %s' % (self.horizon, times))
        times = np.clip(times, 0, self.horizon)

        if self.kind == 'identity':
            return times.copy()
        if self.kind == 'power':
            return times ** self.alpha
        return np.interp(times, self.knots[:, 0], self.knots[:, 1])

    def __call__(self, t):
        return float(self.values(t))

    def check_on(self, grid):
        """Raises InvalidTimeChange if h is not zero at 0 or decreases on the grid."""
        values = self.values(grid.points)
        if values[0] != 0:
            raise InvalidTimeChange('Time change is %r at 0' % values[0])
        if np.any(np.diff(values) < 0):
            raise InvalidTimeChange('Time change decreases on the grid')
        return values

    def describe(self):
        if self.kind == 'power':
            return 'power(%r)' % self.alpha
        if self.kind == 'piecewise':
            return 'piecewise(%s)' % ', '.join('%r:%r' % tuple(k) for k in self.knots)
        return self.kind

    def __repr__(self):
        return 'TimeChange(%s, T=%r)' % (self.describe(), self.horizon)


def quadratic_variation_at(h, t):
    """
    Returns <X>_t = h(t), the variance used by algebra elements at time t.
    """
    return h(t)


class TimeGrid(object):
    """Strictly increasing time points 0 = t_0 < ... < t_M = T."""

    def __init__(self, points):
        points = np.array(points, dtype=float)
        if points.ndim != 1 or len(points) < 2:
            raise InvalidInput('A grid needs at least two points')
        if points[0] != 0:
            raise InvalidInput('Grid must start at 0, got %r' % points[0])
        if np.any(np.diff(points) <= 0):
            raise InvalidInput('Grid points must be strictly increasing')
        points.setflags(write=False)
        self.points = points

    @classmethod
    def uniform(cls, horizon, size):
        """
        :param size: the number of steps M (the grid has M + 1 points).
        """
        if size < 1:
            raise InvalidInput('Grid size must be positive, got %r' % size)
        return cls(np.linspace(0, horizon, int(size) + 1))

    @property
    def size(self):
        """Number of steps M."""
        return len(self.points) - 1

    @property
    def horizon(self):
        return float(self.points[-1])

    @property
    def max_step(self):
        return float(np.max(np.diff(self.points)))

    def index_of(self, t):
        """Position of time ``t`` on the grid."""
        slack = _TIME_TOLERANCE * max(self.horizon, 1.0)
        k = int(np.searchsorted(self.points, t - slack))
        if k >= len(self.points) or abs(self.points[k] - t) > slack:
            raise TimeRangeError('Time %r is not a grid point' % t)
        return k

    def coarsen(self, factor):
        """Keeps every ``factor``-th point; M must be divisible by ``factor``."""
        if factor < 1 or self.size % factor != 0:
            raise InvalidInput('Cannot coarsen %d steps by %d' % (self.size, factor))
        return TimeGrid(self.points[::factor])

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return 'TimeGrid(M=%d, T=%r)' % (self.size, self.horizon)


class PathEnsemble(object):
    """
    N simulated paths on a grid, stored as an N x (M+1) read-only array.
    """

    def __init__(self, grid, h, paths, seed, rng_name=RNG_NAME):
        paths = np.asarray(paths, dtype=float)
        if paths.shape[1] != len(grid):
            raise InvalidInput('Paths have %d columns for a grid of %d points'
                               % (paths.shape[1], len(grid)))
        paths.setflags(write=False)
        self.grid = grid
        self.h = h
        self.paths = paths
        self.seed = seed
        self.rng_name = rng_name

    @property
    def n_paths(self):
        return self.paths.shape[0]

    def increments(self):
        return np.diff(self.paths, axis=1)

    def at(self, t):
        """The column of values X_t for a grid time ``t``."""
        return self.paths[:, self.grid.index_of(t)]

    def variances(self):
        """h evaluated on the grid points."""
        return self.h.values(self.grid.points)

    def coarsen(self, factor):
        """
        The same paths seen on every ``factor``-th grid point. Increments
        over the coarse steps are sums of independent Gaussians, so the
        result is again a valid ensemble.
        """
        grid = self.grid.coarsen(factor)
        return PathEnsemble(grid, self.h, self.paths[:, ::factor], self.seed, self.rng_name)

    def __repr__(self):
        return 'PathEnsemble(N=%d, %r, %r, seed=%r)' % (self.n_paths, self.grid, self.h, self.seed)


def _block_generator(seed, block):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, block])))


def generate(h, grid, n_paths, seed, workers=1):
    """
    Simulates ``n_paths`` paths of X_t = B_{h(t)} on ``grid``.

    Paths are drawn in blocks of :data:`BLOCK_SIZE`; block b uses its own
    stream seeded by (seed, b). The output doesn't depend on ``workers``.

    :param h: the time change.
    :param grid: the time grid; must lie within the horizon of ``h``.
    :param n_paths: number of paths N.
    :param seed: non-negative integer seed.
    :param workers: maximum number of threads filling blocks.
    """
    logger = logging.getLogger("Logger")
    n_paths = int(n_paths)
    if n_paths < 1:
        raise InvalidInput('Number of paths must be positive, got %r' % n_paths)
    if int(seed) != seed or seed < 0:
        raise InvalidInput('Seed must be a non-negative integer, got %r' % seed)
    seed = int(seed)

    variances = h.check_on(grid)
    scales = np.sqrt(np.diff(variances))
    num_steps = grid.size
    paths = np.zeros((n_paths, num_steps + 1))

    def fill(block):
        start = block * BLOCK_SIZE
        stop = min(start + BLOCK_SIZE, n_paths)
        rng = _block_generator(seed, block)
        increments = rng.standard_normal((stop - start, num_steps)) * scales
        np.cumsum(increments, axis=1, out=paths[start:stop, 1:])

    num_blocks = (n_paths + BLOCK_SIZE - 1) // BLOCK_SIZE
    logger.info("Generating %d paths on %d grid points (seed %d)..."
                % (n_paths, num_steps + 1, seed))
    with ThreadPoolExecutor(max_workers=max(1, int(workers))) as pool:
        list(pool.map(fill, range(num_blocks)))
    logger.debug("Done. Used %d random blocks of %d paths" % (num_blocks, BLOCK_SIZE))

    return PathEnsemble(grid, h, paths, seed)


def realized_quadratic_variation(ens):
    """Per-path sum of squared increments over the whole grid."""
    return np.sum(ens.increments() ** 2, axis=1)
