# -*- coding: utf-8 -*-

"""
Monte Carlo estimates and pathwise evaluation of algebra elements.
"""

import logging
import math

import numpy as np
from numpy.polynomial import polynomial as P

from ..errors import InvalidInput, EvaluationOverflow
from ..algebra import PolyExpElement, make_exponential

# exponents whose real part exceeds this overflow exp() in double precision
OVERFLOW_LIMIT = 700.0

# relative rounding allowed between a sample mean and its exact target
ROUNDING_FLOOR = 1e-12


class Estimate(object):
    """
    A sample mean with its standard error and sample count.

    Exact quantities are stored with ``stderr = 0`` and ``n = 0``; Monte
    Carlo estimates always have ``n >= 2``.
    """

    __slots__ = ('mean', 'stderr', 'n')

    def __init__(self, mean, stderr, n):
        mean = complex(mean)
        stderr = float(stderr)
        n = int(n)
        if not (math.isfinite(mean.real) and math.isfinite(mean.imag)):
            raise InvalidInput('Non-finite estimate: %r' % mean)
        if not math.isfinite(stderr) or stderr < 0:
            raise InvalidInput('Standard error must be finite and non-negative, got %r' % stderr)
        if n != 0 and n < 2:
            raise InvalidInput('An estimate needs at least 2 samples, got %d' % n)
        self.mean = mean
        self.stderr = stderr
        self.n = n

    @classmethod
    def exact(cls, value):
        return cls(value, 0.0, 0)

    @classmethod
    def from_samples(cls, values):
        """
        Mean and standard error of a sample. Sums are numpy's pairwise
        reductions over the whole array, so they don't depend on how the
        samples were produced.
        """
        values = np.asarray(values)
        n = values.size
        if n < 2:
            raise InvalidInput('An estimate needs at least 2 samples, got %d' % n)
        mean = np.sum(values) / n
        spread = np.sum(np.abs(values - mean) ** 2) / (n - 1)
        return cls(mean, math.sqrt(spread / n), n)

    @property
    def is_exact(self):
        return self.n == 0

    @property
    def real(self):
        return self.mean.real

    def z_score(self, target):
        """Distance to ``target`` in standard errors."""
        distance = abs(self.mean - target)
        if self.stderr == 0:
            return 0.0 if distance == 0 else float('inf')
        return distance / self.stderr

    def agrees(self, target, sigmas=4.0, allowance=0.0):
        """
        True if ``target`` is within ``sigmas`` standard errors plus
        ``allowance``. The band is never narrower than ROUNDING_FLOOR times
        |target|, which matters when every sample is the same number.
        """
        band = max(sigmas * self.stderr, ROUNDING_FLOOR * abs(target))
        return abs(self.mean - target) <= band + allowance

    def __repr__(self):
        return 'Estimate(%r +- %r, n=%d)' % (self.mean, self.stderr, self.n)


def _overflow_point(c, x, exponent):
    """The sample where the exponential term is largest, for the error message."""
    position = int(np.argmax(np.maximum(np.abs(c * x), exponent.real)))
    return float(x.flat[position])


def evaluate_element(f, x):
    """
    Evaluates an element at the point(s) ``x`` of X.

    Local coefficient polynomials are evaluated by Horner's scheme at
    x - cq and each exponential factor once per term.

    :raises EvaluationOverflow: if some |c x|, or the real part of
        c x - c^2 q/2, exceeds 700.
    """
    x = np.asarray(x, dtype=float)
    total = np.zeros(x.shape, dtype=complex)
    if x.size == 0:
        return total
    largest = float(np.max(np.abs(x)))
    for c, coeffs in f.local_terms:
        # complex exp keeps results independent of array length and alignment
        exponent = c * x.astype(complex) - c * c * f.q / 2
        if abs(c) * largest > OVERFLOW_LIMIT or np.max(exponent.real) > OVERFLOW_LIMIT:
            raise EvaluationOverflow(c, _overflow_point(c, x, exponent))
        total += P.polyval(x - c * f.q, coeffs) * np.exp(exponent)
    return total


def mc_expectation(Y, t, ens):
    """
    Monte Carlo estimate of E[Y_t] over the ensemble.

    :param Y: a ProcessElement, or a PolyExpElement at variance h(t).
    :param t: a grid time.
    """
    from .elements import as_process
    f = as_process(Y).at(t, ens.h)
    if f.is_zero():
        return Estimate(0.0, 0.0, ens.n_paths)
    return Estimate.from_samples(evaluate_element(f, ens.at(t)))


def verify_martingale_normalization(exponents, t, ens, sigmas=4.0):
    """
    Checks E[E_{c,t}] = 1 for each exponent.

    :returns: a list of (exponent, estimate, agrees) triples.
    """
    logger = logging.getLogger("Logger")
    q = ens.h(t)
    results = []
    for c in exponents:
        estimate = mc_expectation(make_exponential(c, q), t, ens)
        agrees = estimate.agrees(1.0, sigmas)
        logger.debug("E[E_%s] = %r (z = %.2f)" % (c, estimate.mean, estimate.z_score(1.0)))
        results.append((c, estimate, agrees))
    return results


def martingale_covariance(ens, s, t):
    """
    Estimate of Cov(X_t - X_s, X_s); zero for a martingale.
    Both X_s and the increment have mean zero, so the plain product is used.
    """
    if s >= t:
        raise InvalidInput('Need s < t, got s=%r, t=%r' % (s, t))
    x_s = ens.at(s)
    return Estimate.from_samples((ens.at(t) - x_s) * x_s)


def exact_expectation(f):
    """Convenience wrapper returning the exact algebra expectation as an Estimate."""
    from ..algebra import expectation
    if not isinstance(f, PolyExpElement):
        raise InvalidInput('Expected an element, got %r' % (f,))
    return Estimate.exact(expectation(f))
