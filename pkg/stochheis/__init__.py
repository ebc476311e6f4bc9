# -*- coding: utf-8 -*-

"""
Exact and Monte Carlo verification of Heisenberg-type inequalities for
continuous martingales with deterministic quadratic variation.
"""

__version__ = '1.0.0'

from . import algebra
from . import processes
from . import verify
from .errors import (InvalidInput, ContractViolation, UnsupportedInput, InvalidTimeChange,
                     TimeRangeError, ConfigError, EvaluationOverflow)
from .algebra import PolyExpElement, make_exponential
from .processes import TimeChange, TimeGrid, PathEnsemble, generate
from .verify import Estimate, ProcessElement, CenteringFunction
