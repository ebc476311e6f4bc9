# -*- coding: utf-8 -*-

"""
Hermite polynomials with variance parameter q.

H_0 = 1, H_1 = x, H_{n+1} = x H_n - n q H_{n-1}; they are generated by
exp(cx - c^2 q/2) = sum_n c^n / n! H_n(x; q) and diagonalize the
G-transform. For q = 0 they reduce to the monomials.
"""

import numpy as np
from numpy.polynomial import polynomial as P

from ..errors import UnsupportedInput
from .element import PolyExpElement, check_variance, check_scalar


def hermite_polynomial(n, q):
    """
    Returns the monomial coefficients of H_n(x; q).
    """
    return hermite_table(n, q)[n]


def hermite_table(n, q):
    """
    Returns the list [H_0, ..., H_n] as monomial coefficient arrays.
    The variance may be negative here (it is used with -2q by the transform).
    """
    table = [np.array([1.0])]
    if n >= 1:
        table.append(np.array([0.0, 1.0]))
    for k in range(1, n):
        shifted = P.polymulx(table[k])
        table.append(P.polysub(shifted, k * q * table[k - 1]))
    return table


class HermiteExpansion(object):
    """
    A polynomial written in the basis H_n(x; q). ``coeffs[n]`` multiplies
    H_n.
    """

    __slots__ = ('q', 'coeffs')

    def __init__(self, coeffs, q):
        coeffs = np.array([check_scalar(v, 'coefficient') for v in coeffs], dtype=complex)
        coeffs = np.trim_zeros(coeffs, 'b')
        coeffs.setflags(write=False)
        object.__setattr__(self, 'q', check_variance(q))
        object.__setattr__(self, 'coeffs', coeffs)

    @classmethod
    def basis(cls, n, q):
        """The unit vector e_n, i.e. H_n itself."""
        coeffs = np.zeros(n + 1, dtype=complex)
        coeffs[n] = 1
        return cls(coeffs, q)

    def __setattr__(self, name, value):
        raise AttributeError('HermiteExpansion is immutable')

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        return 'HermiteExpansion(%s, q=%r)' % (list(self.coeffs), self.q)


def to_hermite(f):
    """
    Converts a purely polynomial element to its Hermite expansion.

    The H_n are monic, so the top coefficient is peeled off degree by degree.
    """
    if not f.is_polynomial():
        raise UnsupportedInput('Hermite expansion needs a polynomial element, got exponents %s'
                               % f.exponents)
    if f.is_zero():
        return HermiteExpansion([], f.q)

    remainder = np.array(f.terms[0][1], dtype=complex)
    degree = len(remainder) - 1
    table = hermite_table(degree, f.q)
    coeffs = np.zeros(degree + 1, dtype=complex)
    for n in range(degree, -1, -1):
        coeffs[n] = remainder[n]
        remainder[:n + 1] -= coeffs[n] * table[n]
    return HermiteExpansion(coeffs, f.q)


def from_hermite(h):
    """Converts a Hermite expansion back to a polynomial element."""
    if len(h.coeffs) == 0:
        return PolyExpElement.zero(h.q)
    table = hermite_table(len(h.coeffs) - 1, h.q)
    total = np.zeros(len(h.coeffs), dtype=complex)
    for n, value in enumerate(h.coeffs):
        total[:n + 1] += value * table[n]
    return PolyExpElement.polynomial(total, h.q)
