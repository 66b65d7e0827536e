from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from qwhittaker.exactnum import (NotASquareError, exact, exact_sqrt, fmt, power, qpoch_finite,
                                 qpoch_infinite, truncation_index)

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=50)


def test_exact_coercions():
    assert exact("3/4") == Fraction(3, 4)
    assert exact(Fraction(-1, 6)) == exact("-1/6")
    assert exact(5) == 5
    with pytest.raises(TypeError):
        exact(0.5)


def test_fmt_round_trip():
    assert fmt(exact("6/8")) == "3/4"
    assert fmt(exact(7)) == "7"
    assert exact(fmt(exact("-22/7"))) == exact("-22/7")


def test_exact_sqrt():
    assert exact_sqrt("9/49") == exact("3/7")
    with pytest.raises(NotASquareError):
        exact_sqrt("1/2")
    with pytest.raises(NotASquareError):
        exact_sqrt(-4)


def test_power_zero_to_zero():
    assert power(exact(0), 0) == 1
    assert power(exact(0), 3) == 0


def test_qpoch_finite_examples():
    assert qpoch_finite(exact(123), exact("1/4"), 0) == 1
    assert qpoch_finite(exact("1/2"), exact("1/4"), 2) == exact("7/16")
    assert qpoch_finite(exact(1), exact("1/3"), 1) == 0


@given(rationals, st.fractions(min_value=Fraction(1, 20), max_value=Fraction(19, 20), max_denominator=20),
       st.integers(0, 6), st.integers(0, 6))
def test_qpoch_finite_splits(x, q, m, k):
    x, q = exact(x), exact(q)
    assert qpoch_finite(x, q, m + k) == qpoch_finite(x, q, m) * qpoch_finite(x * q**m, q, k)


def test_qpoch_infinite_euler_function():
    val = qpoch_infinite(0.5, 0.5)
    assert abs(val - 0.2887880951) < 1e-10
    assert abs(val - float(mpmath.qp(0.5, 0.5))) < 1e-15


def test_qpoch_infinite_zero_and_shift():
    assert qpoch_infinite(0.0, 0.3) == 1
    q = 0.5
    assert abs(qpoch_infinite(-1.0, q) - 2 * qpoch_infinite(-q, q)) < 1e-15


def test_qpoch_infinite_vectorized():
    xs = np.array([0.1, -0.4 + 0.2j, 0.9j])
    vals = qpoch_infinite(xs, 0.25)
    for x, v in zip(xs, vals):
        assert abs(v - complex(mpmath.qp(x, 0.25))) < 1e-14


def test_truncation_index():
    M = truncation_index(0.5, 0.25, 1e-17)
    assert 0.5 * 0.25**M < 1e-17 <= 0.5 * 0.25 ** (M - 1)
    assert truncation_index(0.0, 0.5) == 0
    with pytest.raises(ValueError):
        qpoch_infinite(0.1, 1.0)
