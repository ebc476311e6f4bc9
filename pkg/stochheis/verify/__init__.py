# -*- coding: utf-8 -*-

"""
Monte Carlo and exact checks of the martingale identities and inequalities.
"""

from .estimates import (Estimate, evaluate_element, mc_expectation, exact_expectation,
                        verify_martingale_normalization, martingale_covariance)
from .elements import (ProcessElement, CenteringFunction, as_process, parse_complex,
                       format_complex)
from .ito import ito_integral, exact_energy, verify_isometry, IsometryReport
from .inequalities import (InequalityReport, verify_h1, verify_h2, exact_chain,
                           propagated_stderr, commutator_bound, EQUALITY_LABEL)
from .calculus import (verify_pde, verify_l2_limit, l2_difference_direct,
                       l2_difference_series, convergence_ratios, default_radii)
