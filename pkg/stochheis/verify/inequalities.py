# -*- coding: utf-8 -*-

"""
The Heisenberg-type inequalities for an element and its G-transform.

The fixed-time inequality (h1) is checked exactly with the algebra. The
integrated inequality (h2) needs Monte Carlo Ito integrals for its left
side; its right side is exact in x and uses trapezoid quadrature in t.
"""

import logging
import math

import numpy as np
from scipy.integrate import trapezoid

from ..errors import InvalidInput, ContractViolation
from ..algebra import (apply_X, apply_D, apply_D_star, apply_G,
                       inner_product, norm, scale, sub, check_scalar)
from .elements import as_process, CenteringFunction
from .estimates import Estimate
from .ito import ito_integral

EQUALITY_LABEL = 'derived equality case'

# default number of standard errors for statistical checks
SIGMAS = 4.0

# default discretization allowance, in units of the largest grid step
DISCRETIZATION = 10.0

# relative tolerance of exact comparisons
EXACT_TOLERANCE = 1e-9


def centered(f, c):
    """(X - c) f."""
    return sub(apply_X(f), scale(f, c))


def _real_centering(value, name):
    value = check_scalar(value, name)
    if value.imag != 0:
        raise InvalidInput('Centering %s must be real, got %r' % (name, value))
    return value.real


class InequalityReport(object):
    """
    Outcome of one inequality check.

    ``passed`` is true iff lhs_product >= rhs - sigmas * stderr - allowance,
    where ``stderr`` is the standard error propagated to the product of the
    square roots (zero for exact checks).
    """

    def __init__(self, lhs_factor1, lhs_factor2, rhs, sigmas=SIGMAS, allowance=0.0,
                 tolerance=0.0, label=''):
        self.lhs_factor1 = lhs_factor1
        self.lhs_factor2 = lhs_factor2
        m1 = max(lhs_factor1.real, 0.0)
        m2 = max(lhs_factor2.real, 0.0)
        self.lhs_product = math.sqrt(m1) * math.sqrt(m2)
        self.rhs = float(rhs)
        self.slack = self.lhs_product - self.rhs
        self.stderr = propagated_stderr(lhs_factor1, lhs_factor2)
        self.sigmas = float(sigmas)
        self.allowance = float(allowance)
        self.tolerance = float(tolerance)
        self.label = label
        self.extras = {}
        threshold = self.rhs - self.sigmas * self.stderr - self.allowance - self.tolerance
        self.passed = self.lhs_product >= threshold

    def __repr__(self):
        return 'InequalityReport(lhs=%r, rhs=%r, slack=%r, pass=%s)' % (
            self.lhs_product, self.rhs, self.slack, self.passed)


def propagated_stderr(factor1, factor2):
    """
    Delta-method standard error of sqrt(m1) * sqrt(m2). Both factors come
    from the same paths, so their errors are added linearly.
    """
    m1 = factor1.real
    m2 = factor2.real
    if m1 <= 0 or m2 <= 0:
        # first order bound; the derivative of sqrt is unbounded at 0
        return math.sqrt(max(m1, 0) * factor2.stderr + max(m2, 0) * factor1.stderr)
    return 0.5 * (math.sqrt(m2 / m1) * factor1.stderr + math.sqrt(m1 / m2) * factor2.stderr)


def commutator_bound(f):
    """|<[D, D*] f, f>|, which equals q ||f||^2."""
    commutator = sub(apply_D(apply_D_star(f)), apply_D_star(apply_D(f)))
    return abs(inner_product(commutator, f))


def verify_h1(Y, c, c_tilde, q=None, tolerance=EXACT_TOLERANCE):
    """
    Checks ||(X - c) Y|| ||(X - c~) G Y|| >= q ||Y||^2 exactly.

    :param Y: an element; its variance is used when ``q`` is omitted.
    :param c: real centering of Y.
    :param c_tilde: real centering of the transform.
    :param tolerance: relative tolerance on the comparison.
    """
    if q is not None and float(q) != Y.q:
        raise ContractViolation('Element has variance %r, asked for q=%r' % (Y.q, q))
    c = _real_centering(c, 'c')
    c_tilde = _real_centering(c_tilde, 'c_tilde')
    q = Y.q

    first = centered(Y, c)
    second = centered(apply_G(Y), c_tilde)
    factor1 = Estimate.exact(inner_product(first, first).real)
    factor2 = Estimate.exact(inner_product(second, second).real)
    rhs = q * norm(Y) ** 2
    label = EQUALITY_LABEL if (Y.is_polynomial() and Y.degree() <= 0 and c == 0
                               and c_tilde == 0) else ''
    report = InequalityReport(factor1, factor2, rhs, sigmas=0.0,
                              tolerance=tolerance * max(1.0, abs(rhs)), label=label)
    report.extras['commutator_bound'] = commutator_bound(Y)
    return report


def _check_ensemble(grid, h, ens):
    if len(grid) != len(ens.grid) or not np.array_equal(grid.points, ens.grid.points):
        raise InvalidInput('Ensemble was simulated on %r, not on %r' % (ens.grid, grid))
    if h is not ens.h and h.describe() != ens.h.describe():
        raise InvalidInput('Ensemble was simulated with %r, not with %r' % (ens.h, h))


def _centered_processes(Y, g, g_tilde):
    Z1 = Y.transform(lambda f, t: centered(f, g(t)), 'centered')
    Z2 = Y.transform(lambda f, t: centered(apply_G(f), g_tilde(t)), 'centered transform')
    return Z1, Z2


def _factors(Z1, Z2, ens, workers):
    first = ito_integral(Z1, ens, workers)
    second = ito_integral(Z2, ens, workers)
    return (Estimate.from_samples(np.abs(first) ** 2),
            Estimate.from_samples(np.abs(second) ** 2))


def exact_chain(Y, g, g_tilde, ens):
    """
    The exact chain behind (h2), computed with the algebra on the grid:

        sqrt(A1 A2) >= int sqrt(e1 e2) dh >= int ||Y||^2 h dh,

    where e1, e2 are the pointwise energies of the two integrands and
    A1, A2 their integrals (the isometry images of the two factors).

    :returns: (sqrt(A1 A2), middle term, right side).
    """
    Y = as_process(Y)
    variances = ens.variances()
    energy1 = []
    energy2 = []
    weights = []
    for t in ens.grid.points:
        f = Y.at(t, ens.h)
        energy1.append(norm(centered(f, g(t))) ** 2)
        energy2.append(norm(centered(apply_G(f), g_tilde(t))) ** 2)
        weights.append(norm(f) ** 2)
    energy1 = np.array(energy1)
    energy2 = np.array(energy2)
    total1 = trapezoid(energy1, x=variances)
    total2 = trapezoid(energy2, x=variances)
    middle = trapezoid(np.sqrt(energy1 * energy2), x=variances)
    rhs = trapezoid(np.array(weights) * variances, x=variances)
    return math.sqrt(total1 * total2), float(middle), float(rhs)


def verify_h2(Y, g, g_tilde, h, grid, ens, sigmas=SIGMAS, discretization=DISCRETIZATION,
              workers=1, refine=True):
    """
    Checks the integrated inequality

        ||int (X - g) Y dX|| ||int (X - g~) G Y dX|| >= int E|Y_t|^2 <X>_t d<X>_t

    with Monte Carlo on the left and quadrature on the right.

    :param Y: the integrand process (or a fixed element).
    :param g: centering of Y, a CenteringFunction.
    :param g_tilde: centering of G Y.
    :param h: the time change; must be the one ``ens`` was simulated with.
    :param grid: the time grid of ``ens``.
    :param sigmas: number of propagated standard errors allowed.
    :param discretization: allowance in units of the largest grid step.
    :param refine: also recompute the left side on the grid coarsened by 2.
    """
    logger = logging.getLogger("Logger")
    _check_ensemble(grid, h, ens)
    Y = as_process(Y)
    g = g if g is not None else CenteringFunction.zero()
    g_tilde = g_tilde if g_tilde is not None else CenteringFunction.zero()

    Z1, Z2 = _centered_processes(Y, g, g_tilde)
    factor1, factor2 = _factors(Z1, Z2, ens, workers)
    exact_lhs, middle, rhs = exact_chain(Y, g, g_tilde, ens)

    times = ens.grid.points
    label = ''
    if g.is_zero() and g_tilde.is_zero() and Y.is_constant_one(ens.h, times):
        label = EQUALITY_LABEL
    report = InequalityReport(factor1, factor2, rhs, sigmas=sigmas,
                              allowance=discretization * grid.max_step, label=label)
    report.extras['exact_lhs'] = exact_lhs
    report.extras['schwarz_middle'] = middle
    scale_ = max(1.0, abs(rhs))
    report.extras['chain_holds'] = (exact_lhs >= middle - EXACT_TOLERANCE * scale_
                                    and middle >= rhs - EXACT_TOLERANCE * scale_)

    if refine and grid.size % 2 == 0:
        coarse = ens.coarsen(2)
        coarse1, coarse2 = _factors(Z1, Z2, coarse, workers)
        report.extras['coarse_lhs_product'] = (math.sqrt(max(coarse1.real, 0.0))
                                               * math.sqrt(max(coarse2.real, 0.0)))

    logger.info("h2: lhs %f (factors %f, %f) rhs %f slack %f -> %s"
                % (report.lhs_product, factor1.real, factor2.real, rhs, report.slack,
                   'pass' if report.passed else 'FAIL'))
    return report
