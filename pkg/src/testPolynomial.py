"""
Tests for the dense polynomial type
"""

import os
import sys
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from polynomial import Polynomial

coefficients = st.lists(st.fractions(min_value=-10, max_value=10, max_denominator=20), min_size=1, max_size=5)


def testDegreeIgnoresTrailingZeros():
    poly = Polynomial((1, 2, 0, 0))
    assert poly.degree == 1
    assert poly.leadingCoefficient == 2
    assert poly.trimmed().coeffs == (1, 2)
    assert Polynomial(()).coeffs == (0,)
    assert Polynomial.monomial(3, 5).coefficient(3) == 5
    assert Polynomial.monomial(3).coefficient(7) == 0


def testArithmetic():
    p = Polynomial((1, 1))
    q = Polynomial((-1, 1))
    assert (p * q).coeffs == (-1, 0, 1)
    assert (p + q).coeffs == (0, 2)
    assert (p - q).coeffs == (2, 0)
    assert (p * 3).coeffs == (3, 3)
    assert (2 + p).coeffs == (3, 1)
    assert p.mulX(2).coeffs == (0, 0, 1, 1)


def testDerivative():
    poly = Polynomial((5, 3, 0, 2))
    assert poly.derivative().coeffs == (3, 0, 6)
    assert Polynomial((7,)).derivative().coeffs == (0,)


def testHornerEvaluation():
    poly = Polynomial((Fraction(1, 2), -3, 1))
    assert poly(2) == Fraction(1, 2) - 6 + 4
    assert poly.maxAbsCoefficient() == 3


@given(coefficients, coefficients, st.fractions(min_value=-3, max_value=3, max_denominator=7))
def testProductEvaluatesAsProduct(a, b, x):
    p, q = Polynomial(tuple(a)), Polynomial(tuple(b))
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)


def testToStrings():
    rendered = Polynomial((Fraction(1, 4), 2)).toStrings(lambda c, digits: f"{float(c):.{digits}f}", 2)
    assert rendered == ["0.25", "2.00"]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
