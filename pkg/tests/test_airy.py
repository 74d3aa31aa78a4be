"""Airy implementation against scipy/mpmath oracles and its own contracts."""

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import airy as scipy_airy

from blaschke_lab import airy, airy_leading_negative
from blaschke_lab.airy import AIRY_AT_ZERO, FIRST_NEGATIVE_ZERO, SERIES_CUTOFF


def test_value_at_zero_closed_form():
    expected = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
    assert abs(float(airy(0.0)) - expected) <= 1e-15
    assert abs(float(airy(0.0)) - 0.3550280539) <= 1e-9
    assert abs(AIRY_AT_ZERO - expected) <= 1e-16


def test_tiny_at_first_negative_zero():
    assert abs(float(airy(-2.33811))) <= 1e-5
    assert abs(float(airy(FIRST_NEGATIVE_ZERO))) <= 1e-13


def test_leading_oscillatory_form_at_minus_ten():
    lead = airy_leading_negative(10.0)
    assert abs(float(airy(-10.0)) - lead) <= 2e-3


def test_against_scipy_on_the_contract_interval():
    xs = np.linspace(-20.0, 5.0, 801)
    worst = max(abs(float(airy(float(x))) - float(scipy_airy(x)[0])) for x in xs)
    assert worst <= 1e-12


def test_both_branches_accurate_at_the_cutoff():
    for sign in (-1.0, 1.0):
        for x in (sign * (SERIES_CUTOFF - 1e-9), sign * (SERIES_CUTOFF + 1e-9)):
            assert abs(float(airy(x)) - float(mpmath.airyai(x))) <= 1e-13


def test_oscillation_remainder_order():
    # remainder of the leading form decays like x^(-7/4)
    for x in np.linspace(5.0, 20.0, 61):
        diff = abs(float(airy(-float(x))) - airy_leading_negative(float(x)))
        assert diff <= 0.6 * x ** (-7.0 / 4.0)


@settings(max_examples=80, deadline=None)
@given(st.floats(min_value=-20.0, max_value=5.0, allow_nan=False))
def test_against_mpmath_oracle(x):
    assert abs(float(airy(x)) - float(mpmath.airyai(x))) <= 1e-12


def test_positive_tail_decays():
    assert float(airy(10.0)) == pytest.approx(float(mpmath.airyai(10)), abs=1e-13)
    assert float(airy(30.0)) < 1e-30


def test_nonfinite_rejected():
    with pytest.raises(ValueError):
        airy(math.inf)
    with pytest.raises(ValueError):
        airy(math.nan)
