# -*- coding: utf-8 -*-

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from stochheis.errors import InvalidInput, ContractViolation, EvaluationOverflow
from stochheis.algebra import (PolyExpElement, make_exponential, make_compensated,
                               linear_combination, mul, conjugate, gaussian_expectation,
                               expectation, inner_product, norm, allclose,
                               cross_time_inner_product, format_element, parse_element,
                               random_element)
from stochheis.processes import TimeChange


def test_canonical_form_merges_and_sorts():
    f = PolyExpElement(1.0, [(1, [1, 2]), (0, [3]), (1, [-1, 0, 5])])
    assert f.exponents == [0, 1]
    assert list(f.terms[1][1]) == [0, 2, 5]


def test_cancellation_leaves_zero():
    q = 0.5
    f = make_exponential(1 + 1j, q)
    assert (f - f).is_zero()
    assert linear_combination([(2, f), (-1, f), (-1, f)], q).is_zero()


def test_elements_are_immutable():
    f = make_exponential(1, 1.0)
    with pytest.raises(AttributeError):
        f.q = 2.0
    with pytest.raises(ValueError):
        f.terms[0][1][0] = 5


def test_invalid_scalars_rejected():
    with pytest.raises(InvalidInput):
        make_exponential(float('nan'), 1.0)
    with pytest.raises(InvalidInput):
        make_exponential(1, -1.0)
    with pytest.raises(InvalidInput):
        PolyExpElement.constant(float('inf'), 1.0)


def test_mixed_variances_rejected():
    with pytest.raises(ContractViolation):
        make_exponential(1, 1.0) + make_exponential(1, 2.0)


def test_product_of_exponentials():
    q = 0.7
    c, d = 0.3 - 0.2j, -1.1 + 0.5j
    product = mul(make_exponential(c, q), make_exponential(d, q))
    expected = PolyExpElement(q, [(c + d, [np.exp(c * d * q)])])
    assert allclose(product, expected, rel=1e-14)


def test_exponential_martingales_have_mean_one():
    for c in (0, 1, -1, 1j, 2 - 3j):
        assert abs(expectation(make_exponential(c, 2.0)) - 1) < 1e-13


def test_compensated_martingale_has_mean_zero():
    for c in (0, 1, 1j, -0.5 + 2j):
        assert abs(expectation(make_compensated(c, 1.5))) < 1e-12


def test_gaussian_moments():
    # E[X^4] = 3 q^2 and the moments of N(aq, q) under the exponential weight
    assert gaussian_expectation([0, 0, 0, 0, 1], 0, 2.0) == pytest.approx(12.0)
    assert gaussian_expectation([1, 0, 1], 0.5, 1.0) == pytest.approx(2.25)


@pytest.mark.parametrize('coeffs, a, q', [
    ([1, 0, 1], 0.5, 1.0),
    ([0.5, -1, 0, 2], -0.8, 2.0),
    ([0, 1, 0, 0, 0.25], 1.2, 0.3),
])
def test_gaussian_expectation_against_quadrature(coeffs, a, q):
    sd = math.sqrt(q)
    center = a * q

    def integrand(x):
        density = np.exp(-x * x / (2 * q)) / (sd * math.sqrt(2 * math.pi))
        return np.polynomial.polynomial.polyval(x, coeffs) * np.exp(a * x - a * a * q / 2) * density

    # the weighted density is N(aq, q), negligible beyond twelve deviations
    expected, _ = quad(integrand, center - 12 * sd, center + 12 * sd, points=[center],
                       epsabs=1e-13, epsrel=1e-12, limit=200)
    assert gaussian_expectation(coeffs, a, q).real == pytest.approx(expected, rel=1e-9)


def test_inner_product_of_exponentials():
    q = 1.3
    c, d = 1 + 0.5j, -0.25 + 1j
    value = inner_product(make_exponential(c, q), make_exponential(d, q))
    assert abs(value - np.exp(c * np.conj(d) * q)) < 1e-12 * abs(value)


def test_norm_of_polynomials():
    # ||X||^2 = q and ||X^2 - q||^2 = 2 q^2
    assert norm(PolyExpElement.polynomial([0, 1], 4.0)) == pytest.approx(2.0)
    assert norm(PolyExpElement.polynomial([-3, 0, 1], 3.0)) ** 2 == pytest.approx(18.0)


def test_zero_variance_is_deterministic():
    f = PolyExpElement(0.0, [(2, [1, 1]), (1j, [3])])
    assert f.q == 0
    assert expectation(f) == pytest.approx(4.0)


def test_conjugate():
    f = PolyExpElement(1.0, [(1j, [1 + 2j])])
    g = conjugate(f)
    assert g.exponents == [-1j]
    assert complex(g.terms[0][1][0]) == 1 - 2j


def test_cross_time_inner_product():
    h = TimeChange.power(2.0, 2.0)
    value = cross_time_inner_product(1, 0.5, 1j, 1.5, h)
    assert abs(value - np.exp(1 * np.conj(1j) * 0.25)) < 1e-15


def test_text_format_roundtrip():
    f = PolyExpElement(0.75, [(0, [1, -2]), (1 - 1j, [0.5j, 0, 3])])
    assert parse_element(format_element(f)) == f


def test_text_format_writes_plain_numbers():
    # numpy scalars must not leak their repr into the text
    f = PolyExpElement(np.float64(1.5), [(np.complex128(0.25 - 1j), [np.float64(0.1), np.float64(1) / 3])])
    text = format_element(f)
    assert 'np.' not in text and 'float64' not in text
    assert parse_element(text) == f


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32 - 1), st.sampled_from([0.0, 0.5, 1.0, 4.0]))
def test_text_format_roundtrip_is_exact(seed, q):
    f = random_element(np.random.default_rng(seed), q)
    assert parse_element(format_element(f)) == f


def test_product_overflow_is_reported():
    q = 1.0
    with pytest.raises(EvaluationOverflow):
        mul(make_exponential(27, q), make_exponential(27, q))
    # the same product within range stays finite
    assert np.isfinite(mul(make_exponential(20, q), make_exponential(20, q)).max_coefficient())


def test_cross_time_overflow_is_reported():
    h = TimeChange.identity(1.0)
    with pytest.raises(EvaluationOverflow):
        cross_time_inner_product(27, 1.0, 27, 1.0, h)


def test_parse_element_rejects_bad_lines():
    with pytest.raises(InvalidInput):
        parse_element('q 1.0\n1 0 | nonsense\n')
    with pytest.raises(ContractViolation):
        parse_element('q 1.0\n0.0 0.0 | 1.0,0.0\n', q=2.0)


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32 - 1),
       st.floats(min_value=0.0, max_value=2.0))
def test_inner_product_is_hermitian(seed, q):
    rng = np.random.default_rng(seed)
    f = random_element(rng, q, max_degree=4, max_exponent=1.5)
    g = random_element(rng, q, max_degree=4, max_exponent=1.5)
    forward = inner_product(f, g)
    backward = inner_product(g, f)
    assert abs(forward - np.conj(backward)) <= 1e-9 * norm(f) * norm(g) + 1e-300
    assert inner_product(f, f).real >= 0
