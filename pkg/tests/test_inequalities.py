# -*- coding: utf-8 -*-

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stochheis.errors import InvalidInput, ContractViolation
from stochheis.algebra import PolyExpElement, make_exponential, random_element
from stochheis.processes import TimeChange, TimeGrid
from stochheis.verify import (Estimate, ProcessElement, CenteringFunction, InequalityReport,
                              verify_h1, verify_h2, exact_chain, propagated_stderr,
                              EQUALITY_LABEL)


def test_h1_equality_for_constants():
    for q in (0.25, 1.0, 4.0):
        report = verify_h1(PolyExpElement.constant(1, q), 0, 0)
        assert report.passed
        assert report.label == EQUALITY_LABEL
        assert report.rhs == pytest.approx(q)
        assert report.lhs_product == pytest.approx(q)
        assert abs(report.slack) <= 1e-9


def test_h1_for_X():
    # ||X^2|| ||X (-iX)|| = 3 q^2 against q ||X||^2 = q^2
    report = verify_h1(PolyExpElement.polynomial([0, 1], 1.0), 0, 0)
    assert report.lhs_product == pytest.approx(3.0)
    assert report.rhs == pytest.approx(1.0)
    assert report.passed
    assert report.label == ''


def test_h1_for_exponential_martingale():
    # ||X E_1||^2 = 5e and ||X E_{-i}||^2 = e at q = 1
    report = verify_h1(make_exponential(1, 1.0), 0, 0)
    assert report.lhs_product == pytest.approx(math.e * math.sqrt(5))
    assert report.rhs == pytest.approx(math.e)
    assert report.passed


def test_h1_commutator_bound():
    f = make_exponential(0.5, 2.0)
    report = verify_h1(f, 0.3, -0.2)
    assert report.extras['commutator_bound'] == pytest.approx(report.rhs)


def test_h1_rejects_complex_centering():
    with pytest.raises(InvalidInput):
        verify_h1(PolyExpElement.constant(1, 1.0), 1j, 0)


def test_h1_rejects_other_variance():
    with pytest.raises(ContractViolation):
        verify_h1(PolyExpElement.constant(1, 1.0), 0, 0, q=2.0)


def test_h1_zero_element():
    report = verify_h1(PolyExpElement.zero(1.0), 0, 0)
    assert report.rhs == 0
    assert report.passed


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32 - 1),
       st.sampled_from([0.0, 0.25, 1.0, 4.0]),
       st.floats(min_value=-2, max_value=2),
       st.floats(min_value=-2, max_value=2))
def test_h1_holds_for_random_elements(seed, q, c, c_tilde):
    rng = np.random.default_rng(seed)
    Y = random_element(rng, q, max_degree=4, max_terms=2, max_exponent=2.0)
    assert verify_h1(Y, c, c_tilde).passed


def test_inequality_report():
    report = InequalityReport(Estimate(4.0, 0.1, 100), Estimate(1.0, 0.05, 100), 2.5,
                              sigmas=4, allowance=0.01)
    assert report.lhs_product == pytest.approx(2.0)
    assert report.slack == pytest.approx(-0.5)
    # 0.5 (sqrt(1/4) 0.1 + sqrt(4/1) 0.05)
    assert report.stderr == pytest.approx(0.075)
    assert report.passed is False


def test_propagated_stderr_at_zero():
    value = propagated_stderr(Estimate(0.0, 0.0, 10), Estimate(1.0, 0.1, 10))
    assert value == 0.0


def test_h2_brownian_equality(brownian, grid, ensemble):
    report = verify_h2(ProcessElement.constant(1), CenteringFunction.zero(),
                       CenteringFunction.zero(), brownian, grid, ensemble)
    assert report.label == EQUALITY_LABEL
    assert report.rhs == pytest.approx(0.5)
    assert report.passed, report
    assert abs(report.slack) < 4 * report.stderr + report.allowance
    assert report.extras['chain_holds']
    assert report.extras['exact_lhs'] == pytest.approx(0.5)
    assert 'coarse_lhs_product' in report.extras


def test_h2_brownian_strict(brownian, grid, ensemble):
    report = verify_h2(ProcessElement.identity(), CenteringFunction.zero(),
                       CenteringFunction.zero(), brownian, grid, ensemble)
    # left side near 1, right side 1/3
    assert report.rhs == pytest.approx(1.0 / 3.0, rel=1e-3)
    assert report.lhs_product > 0.8
    assert report.passed
    assert report.label == ''


def test_h2_with_centering(brownian, grid, ensemble):
    g = CenteringFunction.parse('0:0, 1:0.5')
    report = verify_h2(ProcessElement.parse('mart(0.5)'), g, CenteringFunction.constant(-0.5),
                       brownian, grid, ensemble)
    assert report.passed, report
    assert report.extras['chain_holds']


def test_h2_zero_integrand(brownian, grid, ensemble):
    report = verify_h2(ProcessElement.zero(), None, None, brownian, grid, ensemble)
    assert report.lhs_product == 0
    assert report.rhs == 0
    assert report.passed


def test_h2_needs_matching_ensemble(brownian, ensemble):
    with pytest.raises(InvalidInput):
        verify_h2(ProcessElement.constant(1), None, None, brownian,
                  TimeGrid.uniform(1.0, 32), ensemble)
    with pytest.raises(InvalidInput):
        verify_h2(ProcessElement.constant(1), None, None, TimeChange.power(2.0, 1.0),
                  ensemble.grid, ensemble)


def test_exact_chain_is_ordered(ensemble):
    top, middle, bottom = exact_chain(ProcessElement.parse('comp(1)'),
                                      CenteringFunction.constant(0.2),
                                      CenteringFunction.zero(), ensemble)
    assert top >= middle >= bottom > 0
