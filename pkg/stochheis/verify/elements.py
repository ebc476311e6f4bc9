# -*- coding: utf-8 -*-

"""
Time-indexed elements Y_t and deterministic centering functions g(t).
"""

import cmath
import re

import numpy as np

from ..errors import ContractViolation, InvalidInput
from ..algebra import PolyExpElement, make_compensated, check_scalar

_POWER = re.compile(r"^x\^(\d+)$")
_CALL = re.compile(r"^(mart|comp|exp)\((.+)\)$")


def parse_complex(text):
    """Reads numbers such as '1', '-0.5', 'i' or '1+2i'."""
    text = text.strip().replace(' ', '')
    if text.endswith('i'):
        text = text[:-1] + 'j'
        if text == 'j' or text[-2] in '+-':
            text = text[:-1] + '1j'
    try:
        return complex(text)
    except ValueError:
        raise InvalidInput('Cannot read number: %r' % text)


def format_complex(value):
    """Inverse of :func:`parse_complex` for report labels."""
    value = complex(value)
    if value.imag == 0:
        return repr(value.real)
    if value.real == 0:
        return '%ri' % value.imag
    return '%r%+ri' % (value.real, value.imag)


class ProcessElement(object):
    """
    A rule t -> Y_t where Y_t is an element at variance q = h(t).

    The rule is called as ``rule(t, q)`` and must return an element whose
    variance is exactly ``q``.
    """

    def __init__(self, rule, description='custom'):
        if not callable(rule):
            raise InvalidInput('Process rule must be callable')
        self.rule = rule
        self.description = description

    def at(self, t, h):
        """Y_t for the time change ``h``."""
        return self.at_variance(h(t), t)

    def at_variance(self, q, t=None):
        """The element the rule gives at variance ``q`` (and time ``t``, if it uses one)."""
        f = self.rule(t, q)
        if not isinstance(f, PolyExpElement):
            raise ContractViolation('Process %s returned %r at t=%r' % (self.description, f, t))
        if f.q != q:
            raise ContractViolation('Process %s gave variance %r at t=%r, expected %r'
                                    % (self.description, f.q, t, q))
        return f

    @classmethod
    def martingale(cls, terms, description=None):
        """
        The same element at every time: sum p_k(X_t) E_{c_k, t}, which is a
        martingale when every p_k is constant.

        :param terms: sequence of (exponent, coefficients) pairs.
        """
        terms = [(complex(c), np.asarray(coeffs, dtype=complex)) for c, coeffs in terms]
        return cls(lambda t, q: PolyExpElement(q, terms),
                   description or 'martingale(%s)' % ', '.join(str(c) for c, _ in terms))

    @classmethod
    def function(cls, terms, description=None):
        """
        A function of X_t: sum p_k(X_t) exp(a_k X_t), rewritten at each time
        through exp(a x) = exp(a^2 q/2) E_a.
        """
        terms = [(complex(a), np.asarray(coeffs, dtype=complex)) for a, coeffs in terms]

        def rule(t, q):
            return PolyExpElement(q, [(a, cmath.exp(a * a * q / 2) * coeffs)
                                      for a, coeffs in terms])

        return cls(rule, description or 'function(%s)' % ', '.join(str(a) for a, _ in terms))

    @classmethod
    def zero(cls):
        return cls(lambda t, q: PolyExpElement.zero(q), 'zero')

    @classmethod
    def constant(cls, value):
        value = check_scalar(value, 'constant')
        return cls(lambda t, q: PolyExpElement.constant(value, q), 'constant(%s)' % value)

    @classmethod
    def identity(cls):
        """X_t itself."""
        return cls.function([(0, [0, 1])], 'X')

    @classmethod
    def compensated(cls, c):
        """The martingale (X_t - c <X>_t) E_{c,t}."""
        c = check_scalar(c, 'exponent')
        return cls(lambda t, q: make_compensated(c, q), 'comp(%s)' % format_complex(c))

    @classmethod
    def parse(cls, text):
        """
        Reads a process from its short name: 'zero', 'one', 'x', 'x^n',
        'mart(c)' for E_c, 'comp(c)' for (X - c<X>) E_c and 'exp(a)' for
        exp(a X_t).
        """
        text = text.strip().replace(' ', '')
        if text == 'zero':
            return cls.zero()
        if text == 'one':
            return cls.constant(1)
        if text == 'x':
            return cls.identity()
        match = _POWER.match(text)
        if match:
            n = int(match.group(1))
            return cls.function([(0, [0] * n + [1])], text)
        match = _CALL.match(text)
        if match:
            name, argument = match.groups()
            value = parse_complex(argument)
            if name == 'mart':
                return cls.martingale([(value, [1])], text)
            if name == 'comp':
                return cls.compensated(value)
            return cls.function([(value, [1])], text)
        raise InvalidInput('Unknown process: %r' % text)

    def transform(self, op, description=None):
        """
        The process t -> op(Y_t, t).
        """
        def rule(t, q):
            return op(self.rule(t, q), t)
        return ProcessElement(rule, description or 'transform(%s)' % self.description)

    def is_constant_one(self, h, times):
        """True if Y_t = 1 at every time given."""
        for t in times:
            f = self.at(t, h)
            if f != PolyExpElement.constant(1, f.q):
                return False
        return True

    def __repr__(self):
        return 'ProcessElement(%s)' % self.description


def as_process(Y):
    """Wraps a fixed element as a process; the variance is checked on use."""
    if isinstance(Y, ProcessElement):
        return Y
    if isinstance(Y, PolyExpElement):
        f = Y

        def rule(t, q):
            if f.q != q:
                raise ContractViolation('Element has variance %r, expected %r at t=%r'
                                        % (f.q, q, t))
            return f
        return ProcessElement(rule, repr(f))
    raise InvalidInput('Expected a process or an element, got %r' % (Y,))


class CenteringFunction(object):
    """
    A deterministic real function g(t) subtracted from X inside the
    inequalities. Kinds: 'zero', 'constant' and 'piecewise' (linear between
    (t, value) knots, constant outside).
    """

    kinds = ('zero', 'constant', 'piecewise')

    def __init__(self, kind='zero', value=0.0, knots=None):
        if kind not in self.kinds:
            raise InvalidInput('Unknown centering function: %s' % kind)
        self.kind = kind
        self.value = 0.0
        self.knots = None
        if kind == 'constant':
            value = float(value)
            if not np.isfinite(value):
                raise InvalidInput('Centering constant must be finite')
            self.value = value
        elif kind == 'piecewise':
            knots = np.array(knots, dtype=float)
            if knots.ndim != 2 or knots.shape[1] != 2 or len(knots) < 1:
                raise InvalidInput('Centering knots must be (t, value) pairs')
            if not np.all(np.isfinite(knots)) or np.any(np.diff(knots[:, 0]) <= 0):
                raise InvalidInput('Centering knots must be finite with increasing times')
            self.knots = knots

    @classmethod
    def zero(cls):
        return cls('zero')

    @classmethod
    def constant(cls, value):
        return cls('constant', value=value)

    @classmethod
    def piecewise(cls, knots):
        return cls('piecewise', knots=knots)

    @classmethod
    def parse(cls, text):
        """
        Reads '0', a number, or 't:v, t:v, ...' knots.
        """
        text = text.strip()
        if ':' in text:
            knots = [tuple(float(v) for v in item.split(':')) for item in text.split(',')]
            return cls.piecewise(knots)
        try:
            value = float(text)
        except ValueError:
            raise InvalidInput('Cannot read centering function: %r' % text)
        return cls.zero() if value == 0 else cls.constant(value)

    def is_zero(self):
        if self.kind == 'piecewise':
            return bool(np.all(self.knots[:, 1] == 0))
        return self.value == 0

    def __call__(self, t):
        if self.kind == 'piecewise':
            return float(np.interp(t, self.knots[:, 0], self.knots[:, 1]))
        return self.value

    def describe(self):
        if self.kind == 'piecewise':
            return ', '.join('%r:%r' % tuple(k) for k in self.knots)
        return repr(self.value)

    def __repr__(self):
        return 'CenteringFunction(%s)' % self.describe()
