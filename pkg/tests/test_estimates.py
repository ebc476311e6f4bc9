# -*- coding: utf-8 -*-

import math

import numpy as np
import pytest

from stochheis.errors import InvalidInput, EvaluationOverflow, ContractViolation
from stochheis.algebra import PolyExpElement, make_exponential, make_compensated, mul, expectation
from stochheis.verify import (Estimate, ProcessElement, CenteringFunction, evaluate_element,
                              mc_expectation, exact_expectation, martingale_covariance,
                              verify_martingale_normalization, parse_complex, format_complex)


def test_estimate_from_samples():
    estimate = Estimate.from_samples([1.0, 2.0, 3.0, 4.0])
    assert estimate.mean == 2.5
    assert estimate.stderr == pytest.approx(math.sqrt(5.0 / 3.0 / 4.0))
    assert estimate.n == 4
    assert not estimate.is_exact


def test_invalid_estimates():
    with pytest.raises(InvalidInput):
        Estimate(1.0, 0.0, 1)
    with pytest.raises(InvalidInput):
        Estimate(float('nan'), 0.1, 10)
    with pytest.raises(InvalidInput):
        Estimate(1.0, -0.1, 10)
    with pytest.raises(InvalidInput):
        Estimate.from_samples([1.0])


def test_exact_estimates():
    exact = Estimate.exact(2.0)
    assert exact.is_exact
    assert exact.z_score(2.0) == 0.0
    assert exact.z_score(2.5) == float('inf')
    assert exact.agrees(2.5, allowance=0.5)


@pytest.mark.parametrize('value', [0.1, 1.0, -7.3, 1e6])
def test_constant_samples_agree_with_their_value(value):
    estimate = Estimate.from_samples(np.full(1000, value))
    assert estimate.agrees(value)
    assert not estimate.agrees(value * (1 + 1e-6))


def test_zero_variance_normalization():
    # at q = 0 every sample of E_c is exactly 1
    samples = evaluate_element(make_exponential(1 + 1j, 0.0), np.zeros(500))
    assert Estimate.from_samples(samples).agrees(1.0)


def test_evaluate_element():
    f = make_exponential(1, 1.0)
    assert evaluate_element(f, [1.0])[0] == pytest.approx(math.exp(0.5))
    g = PolyExpElement.polynomial([1, 0, 2], 3.0)
    assert np.allclose(evaluate_element(g, [0.0, 1.0, -2.0]), [1, 3, 9])


def test_evaluate_complex_exponent():
    f = make_exponential(1j, 2.0)
    value = evaluate_element(f, [0.5])[0]
    assert value == pytest.approx(np.exp(0.5j + 1.0))


def test_overflow_is_reported():
    f = make_exponential(10, 1.0)
    with pytest.raises(EvaluationOverflow) as info:
        evaluate_element(f, [0.0, -80.0, 3.0])
    assert info.value.exponent == 10
    assert info.value.x == -80.0


def test_overflow_from_imaginary_exponent():
    # exp(cx - c^2 q/2) with c = 40i grows through -c^2 q/2 = 800 alone
    with pytest.raises(EvaluationOverflow):
        evaluate_element(make_exponential(40j, 1.0), [0.1, -0.2])
    value = evaluate_element(make_exponential(20j, 1.0), [0.1])[0]
    assert value == pytest.approx(np.exp(2j + 200.0), rel=1e-12)


def test_mc_expectation_of_exponential_martingale(ensemble):
    for c in (1, -1, 1j, 0.5 + 0.5j):
        estimate = mc_expectation(make_exponential(c, 1.0), 1.0, ensemble)
        assert estimate.agrees(1.0, sigmas=4)


def test_mc_against_exact(ensemble):
    # E[E_1 conj(E_1)] = e^q
    q = 0.25
    product = mul(make_exponential(1, q), make_exponential(1, q))
    exact = exact_expectation(product)
    assert exact.mean == pytest.approx(math.exp(q))
    assert mc_expectation(product, 0.25, ensemble).agrees(exact.mean, sigmas=4)


def test_mc_expectation_of_zero(ensemble):
    estimate = mc_expectation(ProcessElement.zero(), 1.0, ensemble)
    assert estimate.mean == 0 and estimate.stderr == 0


def test_mc_expectation_checks_variance(ensemble):
    with pytest.raises(ContractViolation):
        mc_expectation(make_exponential(1, 2.0), 1.0, ensemble)


def test_normalization(ensemble):
    results = verify_martingale_normalization([1, -1, 1j], 1.0, ensemble)
    assert [c for c, _, _ in results] == [1, -1, 1j]
    assert all(agrees for _, _, agrees in results)


def test_martingale_covariance(ensemble):
    assert martingale_covariance(ensemble, 0.5, 1.0).agrees(0.0, sigmas=4)
    with pytest.raises(InvalidInput):
        martingale_covariance(ensemble, 1.0, 0.5)


def test_parse_complex():
    assert parse_complex('1') == 1
    assert parse_complex('-0.5') == -0.5
    assert parse_complex('i') == 1j
    assert parse_complex('-i') == -1j
    assert parse_complex('2i') == 2j
    assert parse_complex('1+i') == 1 + 1j
    assert parse_complex('1 - 2i') == 1 - 2j
    with pytest.raises(InvalidInput):
        parse_complex('one')


def test_format_complex():
    assert format_complex(1) == '1.0'
    assert format_complex(1j) == '1.0i'
    assert parse_complex(format_complex(0.5 - 2j)) == 0.5 - 2j


def test_parse_processes():
    q = 2.0
    assert ProcessElement.parse('one').at_variance(q) == PolyExpElement.constant(1, q)
    assert ProcessElement.parse('x^3').at_variance(q) == PolyExpElement.polynomial([0, 0, 0, 1], q)
    assert ProcessElement.parse('mart(i)').at_variance(q) == make_exponential(1j, q)
    assert ProcessElement.parse('comp(1)').at_variance(q) == make_compensated(1, q)
    assert ProcessElement.parse('zero').at_variance(q).is_zero()
    # exp(aX) = exp(a^2 q / 2) E_a
    f = ProcessElement.parse('exp(0.5)').at_variance(q)
    assert expectation(f) == pytest.approx(math.exp(0.25))
    with pytest.raises(InvalidInput):
        ProcessElement.parse('sin(1)')


def test_process_with_wrong_variance():
    broken = ProcessElement(lambda t, q: PolyExpElement.constant(1, q + 1), 'broken')
    with pytest.raises(ContractViolation):
        broken.at_variance(1.0)


def test_centering_functions():
    assert CenteringFunction.parse('0').is_zero()
    assert CenteringFunction.parse('0.5')(0.3) == 0.5
    g = CenteringFunction.parse('0:0, 1:2')
    assert g(0.25) == pytest.approx(0.5)
    assert not g.is_zero()
    with pytest.raises(InvalidInput):
        CenteringFunction.parse('half')
    with pytest.raises(InvalidInput):
        CenteringFunction.piecewise([(1, 0), (0, 1)])
