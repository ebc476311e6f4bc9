# -*- coding: utf-8 -*-

"""
Left-point Ito sums over simulated paths and the isometry check.
"""

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.integrate import trapezoid

from ..processes import BLOCK_SIZE
from ..algebra import norm
from .elements import as_process
from .estimates import Estimate, evaluate_element

# allowance for the isometry check, in units of the largest grid step
ISOMETRY_ALLOWANCE = 10.0


def integrand_elements(Z, ens):
    """Z evaluated at t_0, ..., t_{M-1}; the last grid time is never used."""
    Z = as_process(Z)
    return [Z.at(t, ens.h) for t in ens.grid.points[:-1]]


def _integrate_block(elements, paths):
    total = np.zeros(paths.shape[0], dtype=complex)
    for k, f in enumerate(elements):
        if f.is_zero():
            continue
        left = paths[:, k]
        total += evaluate_element(f, left) * (paths[:, k + 1] - left)
    return total


def ito_integral(Z, ens, workers=1):
    """
    Per-path left-point sums  sum_k Z(t_k)(X_{t_k}) (X_{t_{k+1}} - X_{t_k}).

    Paths are processed in fixed blocks, so the result is the same for any
    number of workers.

    :param Z: a ProcessElement (or fixed element) giving the integrand.
    :param ens: the path ensemble.
    :returns: complex array with one value per path.
    """
    elements = integrand_elements(Z, ens)
    n_paths = ens.n_paths
    starts = range(0, n_paths, BLOCK_SIZE)

    def work(start):
        return _integrate_block(elements, ens.paths[start:start + BLOCK_SIZE])

    with ThreadPoolExecutor(max_workers=max(1, int(workers))) as pool:
        blocks = list(pool.map(work, starts))
    if not blocks:
        return np.zeros(0, dtype=complex)
    return np.concatenate(blocks)


def exact_energy(Z, ens, weight=None):
    """
    Trapezoid approximation of int_0^T E|Z_t|^2 w(t) d<X>_t on the grid,
    with E|Z_t|^2 computed exactly by the algebra.

    :param weight: optional array of weights w(t_k); defaults to 1.
    """
    Z = as_process(Z)
    variances = ens.variances()
    values = np.array([norm(Z.at(t, ens.h)) ** 2 for t in ens.grid.points])
    if weight is not None:
        values = values * weight
    return float(trapezoid(values, x=variances))


class IsometryReport(object):
    """Monte Carlo against exact side of the Ito isometry."""

    def __init__(self, estimate, exact, allowance, sigmas):
        self.estimate = estimate
        self.exact = exact
        self.allowance = allowance
        self.sigmas = sigmas
        self.z_score = estimate.z_score(exact)
        self.passed = estimate.agrees(exact, sigmas, allowance)

    def __repr__(self):
        return 'IsometryReport(mc=%r, exact=%r, z=%.2f, pass=%s)' % (
            self.estimate.real, self.exact, self.z_score, self.passed)


def verify_isometry(Z, ens, sigmas=4.0, discretization=ISOMETRY_ALLOWANCE, workers=1):
    """
    Compares the Monte Carlo E|int Z dX|^2 with int E|Z_t|^2 d<X>_t.

    :param discretization: allowance in units of the largest grid step.
    """
    logger = logging.getLogger("Logger")
    integrals = ito_integral(Z, ens, workers)
    estimate = Estimate.from_samples(np.abs(integrals) ** 2)
    exact = exact_energy(Z, ens)
    report = IsometryReport(estimate, exact, discretization * ens.grid.max_step, sigmas)
    logger.info("Isometry: MC %f +- %f, exact %f, z-score %.2f"
                % (estimate.real, estimate.stderr, exact, report.z_score))
    return report
