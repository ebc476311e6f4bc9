# -*- coding: utf-8 -*-

"""
Operators acting on elements at a fixed time: multiplication by X, the
differential operator D, its adjoint D*, and the unitary G-transform.

All of them act term by term on the local polynomials r(x - cq) of an
element (see :mod:`stochheis.algebra.element`).
"""

from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as P

from ..errors import InvalidInput
from .element import PolyExpElement, linear_combination
from .hermite import hermite_table, to_hermite, from_hermite, HermiteExpansion


def apply_X(f):
    """
    Multiplication by X. With x = w + cq in local coordinates,
    r(w) E_c  ->  (w + cq) r(w) E_c.
    """
    q = f.q
    raw = [(c, P.polyadd(P.polymulx(coeffs), c * q * coeffs)) for c, coeffs in f.local_terms]
    return PolyExpElement._from_raw(q, raw)


def apply_D(f):
    """
    The differential operator, acting as q d/dx on p(x) exp(cx - c^2 q/2):
    p E_c  ->  q (p' + c p) E_c. The shift to local coordinates commutes
    with d/dx, so the same rule holds for the local polynomials.
    """
    q = f.q
    raw = [(c, q * P.polyadd(P.polyder(coeffs), c * coeffs)) for c, coeffs in f.local_terms]
    return PolyExpElement._from_raw(q, raw)


def apply_D_star(f):
    """The adjoint of D, obtained from X = D + D*."""
    return linear_combination([(1, apply_X(f)), (-1, apply_D(f))], f.q)


def _rotate(c):
    # -i * c, written out so that four rotations give c back exactly
    return complex(c.imag, -c.real)


def transform_polynomials(degree, q):
    """
    Returns T_0, ..., T_degree such that G((x - cq)^n E_c) = T_n(x + icq) E_{-ic}.

    Differentiating exp(r(x - cq)) E_c = exp(r^2 q/2) E_{c+r} n times in r
    and mapping E_{c+r} to E_{-i(c+r)} gives T_n(w) = H_n(-iw; -2q), which
    does not depend on c.
    """
    phases = np.array([(-1j) ** k for k in range(degree + 1)])
    return [coeffs * phases[:len(coeffs)] for coeffs in hermite_table(degree, -2 * q)]


@lru_cache(maxsize=256)
def transform_matrix(degree, q):
    """The columns of :func:`transform_polynomials` as a square matrix."""
    matrix = np.zeros((degree + 1, degree + 1), dtype=complex)
    for n, coeffs in enumerate(transform_polynomials(degree, q)):
        matrix[:len(coeffs), n] = coeffs
    matrix.setflags(write=False)
    return matrix


def apply_G(f):
    """
    The G-transform, E_c -> E_{-ic}, extended to polynomial factors through
    :func:`transform_polynomials`.
    """
    q = f.q
    raw = [(_rotate(c), transform_matrix(len(coeffs) - 1, q).dot(coeffs))
           for c, coeffs in f.local_terms]
    return PolyExpElement._from_raw(q, raw)


def apply_G_hermite(f):
    """
    The G-transform computed on the Hermite basis, G H_n = (-i)^n H_n.
    Only valid for polynomial elements; used as an independent check.
    """
    h = to_hermite(f)
    phases = np.array([(-1j) ** n for n in range(len(h.coeffs))])
    return from_hermite(HermiteExpansion(h.coeffs * phases, h.q))


def _residual_dx(f):
    return [(1, apply_D(apply_X(f))), (-1, apply_X(apply_D(f))), (-f.q, f)]


def _residual_ddstar(f):
    return [(1, apply_D(apply_D_star(f))), (-1, apply_D_star(apply_D(f))), (-f.q, f)]


def _residual_dg(f):
    return [(1, apply_D(apply_G(f))), (1j, apply_G(apply_D(f)))]


def _residual_dstarg(f):
    return [(1, apply_D_star(apply_G(f))), (-1j, apply_G(apply_D_star(f)))]


COMMUTATORS = {
    'DX': _residual_dx,           # [D, X] = q I
    'DDstar': _residual_ddstar,   # [D, D*] = q I
    'DG': _residual_dg,           # D G = -i G D
    'DstarG': _residual_dstarg,   # D* G = i G D*
}


def commutator_residual(which, f):
    """
    Applies (LHS - RHS) of a commutation relation to ``f``.

    :param which: one of 'DX', 'DDstar', 'DG', 'DstarG'.
    :returns: an element that is zero when the relation holds.
    """
    try:
        pieces = COMMUTATORS[which]
    except KeyError:
        raise InvalidInput('Unknown commutator: %s' % which)
    return linear_combination(pieces(f), f.q)


def hermite_ladder(n, q):
    """
    Returns (D H_n, n q H_{n-1}, D* H_n, H_{n+1}) as elements, the ladder
    actions of D and D* on the Hermite basis.
    """
    table = hermite_table(n + 1, q)
    h_n = PolyExpElement.polynomial(table[n], q)
    lowered = PolyExpElement.polynomial(n * q * table[n - 1], q) if n > 0 else PolyExpElement.zero(q)
    raised = PolyExpElement.polynomial(table[n + 1], q)
    return apply_D(h_n), lowered, apply_D_star(h_n), raised
