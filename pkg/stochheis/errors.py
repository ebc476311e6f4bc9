# -*- coding: utf-8 -*-

"""
Exceptions raised throughout the system.

They subclass the builtin exceptions that would otherwise be raised, so
callers catching ``ValueError`` or ``OverflowError`` keep working.
"""


class InvalidInput(ValueError):
    """A scalar, variance or count outside its allowed range."""


class ContractViolation(ValueError):
    """Operands that do not share the same quadratic variation value."""


class UnsupportedInput(ValueError):
    """An element outside the domain of the requested operation."""


class InvalidTimeChange(ValueError):
    """A time change that is not zero at 0 or not nondecreasing."""


class TimeRangeError(ValueError):
    """A time outside [0, T] or not on the simulation grid."""


class ConfigError(ValueError):
    """A run configuration that cannot be parsed or validated."""


class EvaluationOverflow(OverflowError):
    """
    Evaluating an exponential term would overflow a double.

    The offending exponent and point are kept in ``exponent`` and ``x``.
    """

    def __init__(self, exponent, x, msg=None):
        self.exponent = exponent
        self.x = x
        if msg is None:
            msg = 'Exponential overflow evaluating exp(c*x) with c=%r at x=%r' % (exponent, x)
        super(EvaluationOverflow, self).__init__(msg)
