# -*- coding: utf-8 -*-

"""
Exact algebra of polynomial times exponential-martingale elements.
"""

from .element import (PolyExpElement, make_exponential, make_compensated,
                      linear_combination, add, sub, scale, mul, conjugate,
                      gaussian_expectation, expectation, inner_product, norm,
                      allclose, cross_time_inner_product, cross_time_unitarity,
                      format_element, parse_element, random_element,
                      check_scalar, check_variance)
from .hermite import HermiteExpansion, hermite_polynomial, to_hermite, from_hermite
from .operators import (apply_X, apply_D, apply_D_star, apply_G, apply_G_hermite,
                        commutator_residual, hermite_ladder, COMMUTATORS)
