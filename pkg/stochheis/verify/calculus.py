# -*- coding: utf-8 -*-

"""
Deterministic checks: the heat-type equation satisfied by the exponential
family, and the L2 limit expressing X E_c through exponentials.
"""

import math

import numpy as np

from ..errors import InvalidInput
from ..algebra import (PolyExpElement, make_exponential, mul, sub, scale, apply_X,
                       norm, check_scalar, check_variance)

# default box of (x, y) sample points
PDE_X_RANGE = (-2.0, 2.0)
PDE_Y_RANGE = (0.5, 2.0)

# below this r the difference quotient is expanded as a series
SERIES_THRESHOLD = 2.0 ** -4

# degree at which the series is truncated; the first dropped term is
# below 1e-30 relative for r < SERIES_THRESHOLD
SERIES_DEGREE = 24


def exponential_family(c, x, y):
    """f_c(x, y) = exp(cx - c^2 y / 2)."""
    return np.exp(c * x - c * c * y / 2)


def compensated_family(c, x, y):
    """g_c(x, y) = (x - cy) exp(cx - c^2 y / 2)."""
    return (x - c * y) * np.exp(c * x - c * c * y / 2)


def default_points(num_x=21, num_y=16):
    """A regular grid of sample points covering the default box."""
    xs = np.linspace(PDE_X_RANGE[0], PDE_X_RANGE[1], num_x)
    ys = np.linspace(PDE_Y_RANGE[0], PDE_Y_RANGE[1], num_y)
    x, y = np.meshgrid(xs, ys)
    return np.column_stack([x.ravel(), y.ravel()])


def pde_residual(func, points, step=1e-4):
    """
    Central finite-difference values of (1/2) f_xx + f_y at each point.

    Evaluated in extended precision where the platform has it; with step
    1e-4 double rounding alone is of order 1e-6 on the default box.
    """
    points = np.asarray(points, dtype=float)
    x = points[:, 0].astype(np.clongdouble)
    y = points[:, 1].astype(np.clongdouble)
    step = np.longdouble(step)
    f_xx = (func(x + step, y) - 2 * func(x, y) + func(x - step, y)) / step ** 2
    f_y = (func(x, y + step) - func(x, y - step)) / (2 * step)
    return (0.5 * f_xx + f_y).astype(complex)


def verify_pde(c, points=None, step=1e-4):
    """
    Largest residual of (1/2) f_xx + f_y = 0 over f_c and g_c.

    :param c: complex parameter of the family.
    :param points: (x, y) pairs with y > 0; defaults to a grid on
        [-2, 2] x [0.5, 2].
    :param step: finite-difference step.
    """
    c = check_scalar(c, 'c')
    if points is None:
        points = default_points()
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] != 2:
        raise InvalidInput('Points must be (x, y) pairs')
    if np.any(points[:, 1] <= 0):
        raise InvalidInput('PDE sample points need y > 0')
    if step <= 0 or step >= float(np.min(points[:, 1])):
        raise InvalidInput('Step must be positive and below the smallest y, got %r' % step)

    worst = 0.0
    for family in (exponential_family, compensated_family):
        residual = pde_residual(lambda x, y: family(c, x, y), points, step)
        worst = max(worst, float(np.max(np.abs(residual))))
    return worst


def default_radii(count=20):
    """r = 2^-1, ..., 2^-count."""
    return [2.0 ** -k for k in range(1, count + 1)]


def l2_difference_direct(c, q, r):
    """(E_r - 1)/r E_c - X E_c, built literally from the algebra."""
    one = PolyExpElement.constant(1, q)
    quotient = scale(sub(make_exponential(r, q), one), 1.0 / r)
    return sub(mul(quotient, make_exponential(c, q)), apply_X(make_exponential(c, q)))


def l2_difference_series(c, q, r, degree=SERIES_DEGREE):
    """
    The same difference with (E_r - 1)/r - x expanded in powers of x, which
    avoids the cancellation of the direct form for small r.
    """
    damping = math.exp(-r * r * q / 2)
    shrink = math.expm1(-r * r * q / 2)
    coeffs = [shrink / r, shrink]
    factor = 1.0
    for k in range(2, degree + 1):
        factor *= r / k
        coeffs.append(damping * factor)
    remainder = PolyExpElement.polynomial(coeffs, q)
    return mul(remainder, make_exponential(c, q))


def verify_l2_limit(c, q, r_sequence=None):
    """
    Exact L2 norms of (E_r - 1)/r E_c - X E_c along ``r_sequence``.

    :returns: list of norms, one per radius.
    """
    c = check_scalar(c, 'c')
    q = check_variance(q)
    if q == 0:
        raise InvalidInput('The L2 limit needs q > 0')
    if r_sequence is None:
        r_sequence = default_radii()
    norms = []
    for r in r_sequence:
        r = float(r)
        if not 0 < r <= 1:
            raise InvalidInput('Radius must lie in (0, 1], got %r' % r)
        if r < SERIES_THRESHOLD:
            difference = l2_difference_series(c, q, r)
        else:
            difference = l2_difference_direct(c, q, r)
        norms.append(norm(difference))
    return norms


def convergence_ratios(norms):
    """Successive ratios norms[k+1] / norms[k]."""
    return [b / a if a > 0 else float('nan') for a, b in zip(norms, norms[1:])]
