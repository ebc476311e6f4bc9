# -*- coding: utf-8 -*-

"""
Polynomial times exponential-martingale elements at a fixed time.

An element with variance ``q`` represents the random variable

    sum_k p_k(X) * exp(c_k X - c_k^2 q / 2)

where X ~ N(0, q). Elements are immutable; every operation returns a new,
canonicalized element.

Each term stores its polynomial in powers of (x - c q), the mean of X under
the weight exp(cx - c^2 q/2). Products, expectations and the G-transform
are computed in these local coordinates, where the coefficients stay of the
size of the values they describe. ``terms`` gives the same polynomials in
powers of x.
"""

import cmath
import math
from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.special import comb

from ..errors import InvalidInput, ContractViolation, EvaluationOverflow

# exponents closer than this (in both components) are merged
EXPONENT_TOLERANCE = 1e-12

# coefficients below this fraction of the largest one are dropped
COEFFICIENT_TOLERANCE = 1e-12


def check_scalar(value, name='scalar'):
    """
    Returns ``value`` as a complex number, rejecting NaN and infinities.
    """
    try:
        z = complex(value)
    except (TypeError, ValueError):
        raise InvalidInput('Invalid %s: %r' % (name, value))
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InvalidInput('Non-finite %s: %r' % (name, value))
    return z


def check_variance(q):
    """Returns ``q`` as a float, rejecting negative or non-finite values."""
    try:
        q = float(q)
    except (TypeError, ValueError):
        raise InvalidInput('Invalid variance: %r' % (q,))
    if not math.isfinite(q) or q < 0:
        raise InvalidInput('Variance must be finite and non-negative, got %r' % q)
    return q


def _freeze(coeffs):
    array = np.array(coeffs, dtype=complex)
    array.setflags(write=False)
    return array


@lru_cache(maxsize=64)
def _shift_tables(n):
    """
    C(k, j) for row j and column k, zero below the diagonal, and the
    matching powers k - j (clipped at zero).
    """
    k = np.arange(n)
    binomials = comb(k[np.newaxis, :], k[:, np.newaxis])
    lag = np.maximum(k[np.newaxis, :] - k[:, np.newaxis], 0)
    binomials.setflags(write=False)
    lag.setflags(write=False)
    return binomials, lag


def shift_polynomial(coeffs, s):
    """
    Returns the coefficients of p(w + s) given those of p(w).
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    n = len(coeffs)
    if s == 0 or n < 2:
        return coeffs.copy()
    binomials, lag = _shift_tables(n)
    powers = np.ones(n, dtype=complex)
    powers[1:] = np.cumprod(np.full(n - 1, s, dtype=complex))
    return (binomials * powers[lag]).dot(coeffs)


@lru_cache(maxsize=256)
def central_moments(n, q):
    """E[W^k] for W ~ N(0, q) and k < n: (k-1)!! q^(k/2) for even k, else 0."""
    moments = np.zeros(n)
    if n > 0:
        moments[0] = 1.0
    for k in range(2, n, 2):
        moments[k] = (k - 1) * q * moments[k - 2]
    moments.setflags(write=False)
    return moments


@lru_cache(maxsize=256)
def _moment_matrix(rows, columns, q):
    """The Hankel matrix of central moments, E[W^(j+k)]."""
    moments = central_moments(rows + columns - 1, q)
    matrix = moments[np.add.outer(np.arange(rows), np.arange(columns))]
    matrix.setflags(write=False)
    return matrix


def _same_exponent(c, d):
    return (abs(c.real - d.real) <= EXPONENT_TOLERANCE and
            abs(c.imag - d.imag) <= EXPONENT_TOLERANCE)


def _canonicalize(raw_terms, tolerance=COEFFICIENT_TOLERANCE):
    """
    Merges equal exponents, drops negligible coefficients and sorts the
    terms by (re, im) of the exponent. Coefficients are the local ones.

    The threshold for dropping is relative to the largest coefficient among
    the raw terms, i.e. before any cancellation takes place.
    """
    merged = []
    scale = 0.0
    for exponent, coeffs in raw_terms:
        coeffs = np.asarray(coeffs, dtype=complex)
        if coeffs.size == 0:
            continue
        if not np.all(np.isfinite(coeffs)):
            raise InvalidInput('Non-finite coefficient in %r' % (coeffs,))
        scale = max(scale, float(np.max(np.abs(coeffs))))
        for entry in merged:
            if _same_exponent(entry[0], exponent):
                entry[1] = P.polyadd(entry[1], coeffs)
                break
        else:
            merged.append([exponent, coeffs.copy()])

    terms = []
    threshold = tolerance * scale
    for exponent, coeffs in merged:
        coeffs = np.where(np.abs(coeffs) <= threshold, 0, coeffs)
        coeffs = np.trim_zeros(coeffs, 'b')
        if coeffs.size == 0:
            continue
        terms.append((exponent, _freeze(coeffs)))

    terms.sort(key=lambda term: (term[0].real, term[0].imag))
    return tuple(terms)


class PolyExpElement(object):
    """
    Exact finite sum of polynomials in X times exponential martingales,
    all sharing the variance ``q`` of X.

    ``local_terms`` is a tuple of ``(exponent, coefficients)`` pairs, the
    coefficients being a read-only complex array indexed by the power of
    (x - exponent * q). ``terms`` has the same pairs with the coefficients
    indexed by the power of x.
    """

    __slots__ = ('q', 'local_terms', '_terms')

    def __init__(self, q, terms=()):
        """
        :param q: the quadratic variation value shared by all terms.
        :param terms: iterable of ``(exponent, coefficients)`` pairs, the
            coefficients indexed by the power of x. They don't need to be
            canonical; equal exponents are merged.
        """
        q = check_variance(q)
        raw = []
        for c, coeffs in terms:
            c = check_scalar(c, 'exponent')
            coeffs = [check_scalar(v, 'coefficient') for v in coeffs]
            raw.append((c, shift_polynomial(coeffs, c * q)))
        object.__setattr__(self, 'q', q)
        object.__setattr__(self, 'local_terms', _canonicalize(raw))
        object.__setattr__(self, '_terms', None)

    @classmethod
    def _from_raw(cls, q, raw_terms, tolerance=COEFFICIENT_TOLERANCE):
        """Builds an element from already validated local terms."""
        element = cls.__new__(cls)
        object.__setattr__(element, 'q', q)
        object.__setattr__(element, 'local_terms', _canonicalize(raw_terms, tolerance))
        object.__setattr__(element, '_terms', None)
        return element

    @classmethod
    def zero(cls, q):
        return cls._from_raw(check_variance(q), ())

    @classmethod
    def constant(cls, value, q):
        return cls._from_raw(check_variance(q), [(0j, [check_scalar(value)])])

    @classmethod
    def polynomial(cls, coeffs, q):
        """Pure polynomial element (single term with exponent 0)."""
        coeffs = [check_scalar(v, 'coefficient') for v in coeffs]
        return cls._from_raw(check_variance(q), [(0j, coeffs)])

    def __setattr__(self, name, value):
        raise AttributeError('PolyExpElement is immutable')

    @property
    def terms(self):
        if self._terms is None:
            terms = tuple((c, _freeze(shift_polynomial(r, -c * self.q)))
                          for c, r in self.local_terms)
            object.__setattr__(self, '_terms', terms)
        return self._terms

    @property
    def exponents(self):
        return [c for c, _ in self.local_terms]

    def is_zero(self):
        return len(self.local_terms) == 0

    def is_polynomial(self):
        """True if the element has no exponential factor other than 1."""
        return self.is_zero() or (len(self.local_terms) == 1 and self.local_terms[0][0] == 0)

    def degree(self):
        """Highest polynomial degree among the terms (-1 for zero)."""
        return max([len(coeffs) - 1 for _, coeffs in self.local_terms] or [-1])

    def max_coefficient(self):
        """Largest local coefficient, the scale used by the tolerances."""
        return max([float(np.max(np.abs(coeffs))) for _, coeffs in self.local_terms] or [0.0])

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, PolyExpElement):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, PolyExpElement):
            return NotImplemented
        if self.q != other.q or len(self.local_terms) != len(other.local_terms):
            return False
        for (c, p), (d, r) in zip(self.local_terms, other.local_terms):
            if c != d or len(p) != len(r) or not np.array_equal(p, r):
                return False
        return True

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None

    def __repr__(self):
        parts = ['%r*%s' % (c, list(coeffs)) for c, coeffs in self.terms]
        return 'PolyExpElement(q=%r, %s)' % (self.q, ' + '.join(parts) or '0')


def _check_same_q(f, g):
    if f.q != g.q:
        raise ContractViolation('Elements have different variances: %r and %r' % (f.q, g.q))


def _exp(z):
    """cmath.exp raising EvaluationOverflow instead of a bare OverflowError."""
    try:
        return cmath.exp(z)
    except OverflowError:
        raise EvaluationOverflow(z, 1.0, "Exponential overflow evaluating exp(%r)" % (z,))


def make_exponential(c, q):
    """
    Returns the exponential martingale exp(cX - c^2 q / 2) as an element.
    """
    c = check_scalar(c, 'exponent')
    q = check_variance(q)
    return PolyExpElement._from_raw(q, [(c, [1])])


def make_compensated(c, q):
    """
    Returns (X - cq) exp(cX - c^2 q / 2), the compensated martingale
    obtained by differentiating the exponential family in c.
    """
    c = check_scalar(c, 'exponent')
    q = check_variance(q)
    return PolyExpElement._from_raw(q, [(c, [0, 1])])


def linear_combination(pairs, q):
    """
    Returns sum_k z_k f_k for ``pairs`` of (z_k, f_k).

    All elements are merged in one canonicalization pass, so contributions
    that cancel exactly leave nothing behind.
    """
    q = check_variance(q)
    raw = []
    for z, f in pairs:
        if f.q != q:
            raise ContractViolation('Element with variance %r in a combination at %r' % (f.q, q))
        z = check_scalar(z)
        raw.extend((c, z * coeffs) for c, coeffs in f.local_terms)
    return PolyExpElement._from_raw(q, raw)


def add(f, g):
    _check_same_q(f, g)
    return linear_combination([(1, f), (1, g)], f.q)


def sub(f, g):
    _check_same_q(f, g)
    return linear_combination([(1, f), (-1, g)], f.q)


def scale(f, z):
    """Multiplies every coefficient of ``f`` by the scalar ``z``."""
    return linear_combination([(z, f)], f.q)


def mul(f, g):
    """
    Exact product. Exponentials combine as
    E_c E_d = exp(cdq) E_{c+d} and coefficient polynomials are convolved
    after moving both to the coordinate x - (c + d) q.

    :raises EvaluationOverflow: if exp(cdq) or a coefficient overflows.
    """
    _check_same_q(f, g)
    q = f.q
    raw = []
    for c, p in f.local_terms:
        for d, r in g.local_terms:
            factor = _exp(c * d * q)
            coeffs = factor * P.polymul(shift_polynomial(p, d * q), shift_polynomial(r, c * q))
            if not np.all(np.isfinite(coeffs)):
                raise EvaluationOverflow(c + d, q, "Overflow in the product of the terms "
                                         "with exponents %r and %r" % (c, d))
            raw.append((c + d, coeffs))
    return PolyExpElement._from_raw(q, raw)


def conjugate(f):
    """Complex conjugation: exponents and coefficients are conjugated."""
    raw = [(c.conjugate(), np.conj(coeffs)) for c, coeffs in f.local_terms]
    return PolyExpElement._from_raw(f.q, raw)


def _complex_fsum(values):
    values = np.asarray(values, dtype=complex)
    return complex(math.fsum(values.real), math.fsum(values.imag))


def _moment_contributions(coeffs, a, q):
    """
    Returns the products p[k] m_k, where m_k = E[X^k exp(aX - a^2 q/2)]
    for X ~ N(0, q), i.e. the moments of N(aq, q).
    """
    n = len(coeffs)
    moments = np.empty(n, dtype=complex)
    if n > 0:
        moments[0] = 1
    if n > 1:
        moments[1] = a * q
    for k in range(2, n):
        moments[k] = a * q * moments[k - 1] + (k - 1) * q * moments[k - 2]
    return np.asarray(coeffs, dtype=complex) * moments


def gaussian_expectation(coeffs, a, q):
    """
    Computes E[p(X) exp(aX - a^2 q/2)] exactly for X ~ N(0, q).

    :param coeffs: the coefficients of p, indexed by power.
    :param a: complex exponent.
    :param q: variance of X.
    """
    a = check_scalar(a, 'exponent')
    q = check_variance(q)
    coeffs = [check_scalar(v, 'coefficient') for v in coeffs]
    return _complex_fsum(_moment_contributions(coeffs, a, q))


def expectation(f):
    """
    Exact expectation of an element. Under the weight E_c the local
    variable x - cq is N(0, q), so each term contributes its local
    coefficients against the central moments; this equals the sum of
    :func:`gaussian_expectation` over the terms.
    """
    contributions = [coeffs * central_moments(len(coeffs), f.q) for _, coeffs in f.local_terms]
    if not contributions:
        return 0j
    return _complex_fsum(np.concatenate(contributions))


def inner_product(f, g):
    """
    The L2 inner product <f, g> = E[f conj(g)], i.e.
    expectation(mul(f, conjugate(g))) evaluated pair by pair without
    building the product element.
    """
    _check_same_q(f, g)
    q = f.q
    values = []
    for c, p in f.local_terms:
        for d, r in g.local_terms:
            d_bar = d.conjugate()
            left = shift_polynomial(p, d_bar * q)
            right = shift_polynomial(np.conj(r), c * q)
            moments = _moment_matrix(len(left), len(right), q)
            values.append(_exp(c * d_bar * q) * left.dot(moments).dot(right))
    if not values:
        return 0j
    total = _complex_fsum(values)
    if not (math.isfinite(total.real) and math.isfinite(total.imag)):
        raise EvaluationOverflow(f.exponents[-1], q, "Inner product overflows at q=%r" % q)
    return total


def norm(f):
    """The L2 norm sqrt(<f, f>)."""
    return math.sqrt(max(inner_product(f, f).real, 0.0))


def allclose(f, g, rel=1e-9, abs_tol=0.0):
    """
    Checks that ``f`` and ``g`` agree coefficient-wise, up to ``rel`` times
    their largest coefficient plus ``abs_tol``.
    """
    _check_same_q(f, g)
    raw = list(f.local_terms) + [(c, -coeffs) for c, coeffs in g.local_terms]
    difference = PolyExpElement._from_raw(f.q, raw, tolerance=0.0)
    bound = rel * max(f.max_coefficient(), g.max_coefficient()) + abs_tol
    return difference.max_coefficient() <= bound


def cross_time_inner_product(c, s, d, t, h):
    """
    Inner product of exponential martingales taken at two times,
    E[E_{c,s} conj(E_{d,t})] = exp(c conj(d) h(min(s, t))).

    :param h: the time change (a callable giving the quadratic variation).
    :raises EvaluationOverflow: if the value does not fit in a double.
    """
    c = check_scalar(c, 'exponent')
    d = check_scalar(d, 'exponent')
    h(max(s, t))  # range check on the later time
    q = check_variance(h(min(s, t)))
    return _exp(c * d.conjugate() * q)


def cross_time_unitarity(c, s, d, t, h):
    """
    Returns the pair (<G E_{c,s}, G E_{d,t}>, <E_{c,s}, E_{d,t}>); the
    transform maps E_c to E_{-ic} at every time, so both must coincide.
    """
    c = check_scalar(c, 'exponent')
    d = check_scalar(d, 'exponent')
    transformed = cross_time_inner_product(-1j * c, s, -1j * d, t, h)
    return transformed, cross_time_inner_product(c, s, d, t, h)


def _float_text(v):
    return repr(float(v))


def format_element(f):
    """
    Serializes an element as plain text: a ``q`` line followed by one line
    per term with the exponent and the local coefficient list, i.e. the
    coefficients of the powers of (x - cq).
    """
    lines = ['q %s' % _float_text(f.q)]
    for c, coeffs in f.local_terms:
        values = ' '.join('%s,%s' % (_float_text(v.real), _float_text(v.imag)) for v in coeffs)
        lines.append('%s %s | %s' % (_float_text(c.real), _float_text(c.imag), values))
    return '\n'.join(lines) + '\n'


def parse_element(text, q=None):
    """
    Reads an element written by :func:`format_element`.

    :param q: if given, overrides (and must agree with) the ``q`` line.
    """
    terms = []
    parsed_q = None
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        if line.startswith('q '):
            parsed_q = float(line[2:])
            continue
        try:
            head, values = line.split('|')
            re_part, im_part = head.split()
            coeffs = []
            for pair in values.split():
                real, imag = pair.split(',')
                coeffs.append(check_scalar(complex(float(real), float(imag)), 'coefficient'))
            exponent = check_scalar(complex(float(re_part), float(im_part)), 'exponent')
        except ValueError:
            raise InvalidInput('Malformed element line: %r' % line)
        terms.append((exponent, coeffs))

    if q is None:
        q = parsed_q
    elif parsed_q is not None and parsed_q != q:
        raise ContractViolation('Element written at q=%r read at q=%r' % (parsed_q, q))
    if q is None:
        raise InvalidInput('Element text has no variance line')
    return PolyExpElement._from_raw(check_variance(q), terms)


def random_element(rng, q, max_degree=8, max_terms=3, max_exponent=3.0):
    """
    Draws a random element for property checks.

    :param rng: a ``numpy.random.Generator``.
    :param max_degree: maximum degree of each coefficient polynomial.
    :param max_terms: maximum number of distinct exponentials.
    :param max_exponent: bound on the modulus of the exponents.
    """
    num_terms = int(rng.integers(1, max_terms + 1))
    raw = []
    for _ in range(num_terms):
        kind = rng.integers(0, 4)
        if kind == 0:
            exponent = 0j
        else:
            radius = rng.uniform(0, max_exponent)
            angle = rng.uniform(0, 2 * math.pi) if kind == 3 else 0.5 * math.pi * rng.integers(0, 4)
            exponent = cmath.rect(radius, angle)
        degree = int(rng.integers(0, max_degree + 1))
        coeffs = rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)
        raw.append((complex(exponent), coeffs))
    return PolyExpElement(q, raw)
