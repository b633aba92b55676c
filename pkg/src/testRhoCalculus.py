"""
Tests for the exact rho_nu / rho_{nu+1} calculus and the weight-product identities
"""

import os
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from precisionCore import DomainError, PolynomialityError, PrecisionContext
from rhoCalculus import (ONE, ZERO, LaurentPoly, RhoPairExpr, corollary1Check,
                         diffPower, differentiate, odeCheck, odeResidualH,
                         odeResidualU, productBetaCheck,
                         productDerivativeCheck, reduceMonomial,
                         reductionCrossCheck, reductionPolynomial, thetaPower,
                         viskovApply)
from specialFunctions import rho

CTX = PrecisionContext(bits=128, verifyTol=1e-18, quadTarget=1e-25)
HALF = Fraction(1, 2)

nus = st.fractions(min_value=Fraction(-3, 2), max_value=3, max_denominator=8)


def testLaurentAlgebra():
    a = LaurentPoly(((-1, 2), (0, 1), (-1, -2)))
    assert a == ONE
    b = LaurentPoly.monomial(-2, 3)
    assert (b * LaurentPoly.monomial(2)).terms == ((0, 3),)
    assert b.derivative().terms == ((-3, -6),)
    assert not b.isPolynomial
    with pytest.raises(PolynomialityError):
        b.toPolynomial()
    assert (ONE - ONE).isZero
    assert LaurentPoly(((2, 1), (0, 4))).toPolynomial().coeffs == (4, 0, 1)


def testDifferentiateMatchesNumericalDerivative():
    """d/dx of x rho_nu + (1/x) rho_{nu+1} against a finite difference at x = 1"""
    mp = CTX.mp
    expr = RhoPairExpr(HALF, LaurentPoly.monomial(1), LaurentPoly.monomial(-1))
    derivative = differentiate(expr)
    numeric = mp.diff(lambda x: expr.evaluate(x, CTX), CTX.mpf(1))
    assert CTX.agrees(derivative.evaluate(1, CTX), numeric)


def testDifferentiateBasisElements():
    nu = Fraction(2, 3)
    assert differentiate(RhoPairExpr(nu, ONE, ZERO)).sameAs(
        RhoPairExpr(nu, LaurentPoly.monomial(-1, nu), LaurentPoly.monomial(-1, -1)))
    assert differentiate(RhoPairExpr(nu, ZERO, ONE)).sameAs(RhoPairExpr(nu, -ONE, ZERO))


def testDiffPowerLowOrders():
    nu = Fraction(1, 4)
    assert diffPower(0, nu).sameAs(RhoPairExpr(nu, ONE, ZERO))
    assert diffPower(1, nu).sameAs(RhoPairExpr(nu, LaurentPoly.monomial(0, 1 + nu), -ONE))
    second = diffPower(2, nu)
    assert second.p == LaurentPoly(((1, 1), (0, nu * nu + 3 * nu + 2)))
    assert second.q == LaurentPoly.monomial(0, -(nu + 3))


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=7), nus)
def testDiffPowerIsPolynomialWithBoundedDegrees(k, nu):
    expr = diffPower(k, nu)
    assert expr.p.isPolynomial and expr.q.isPolynomial
    assert expr.p.degree <= k // 2
    assert expr.q.degree <= max(0, (k - 1) // 2)
    if k % 2 == 0:
        assert expr.p.coefficient(k // 2) == 1


def testDiffPowerNumerically():
    mp = CTX.mp
    nu = CTX.mpf('0.25')
    x = CTX.mpf(2)
    for k in range(4):
        numeric = mp.diff(lambda t: t ** k * rho(nu, t, CTX), x, k)
        assert abs(diffPower(k, nu).evaluate(x, CTX) / numeric - 1) < mp.mpf('1e-20')


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=0, max_value=6), nus)
def testReductionClosedForm(j, nu):
    assert reductionCrossCheck(j, nu) == (0, 0)


def testReductionNumerically():
    """x^3 rho_{nu-3} evaluated directly and through its reduction"""
    nu, x = Fraction(3, 4), CTX.mpf('1.5')
    expr = reduceMonomial(3, nu)
    direct = x ** 3 * rho(CTX.mpf(nu) - 3, x, CTX)
    assert CTX.agrees(expr.evaluate(x, CTX), direct)
    assert reductionPolynomial(-1, nu).coeffs == (0,)
    with pytest.raises(DomainError):
        reduceMonomial(-1, nu)


@given(st.integers(min_value=0, max_value=5), nus)
def testViskovOperatorIdentity(n, nu):
    """(x D x)^n = x^n D^n x^n on rho_nu"""
    start = RhoPairExpr(nu, ONE, ZERO)
    assert thetaPower(start, n).sameAs(viskovApply(start, n))


def testThirdOrderEquations():
    for nu in (Fraction(1, 4), HALF, Fraction(3, 2)):
        for x in ("0.5", "1", "2", "5"):
            assert abs(odeResidualU(nu, x, CTX)) < CTX.mpf('1e-25')
            assert abs(odeResidualH(nu, x, CTX)) < CTX.mpf('1e-25')
    assert all(report.passed for report in odeCheck(HALF, 1, CTX))
    with pytest.raises(DomainError):
        odeResidualU(HALF, 0, CTX)


def testProductRecurrences():
    for nu in (Fraction(1, 4), Fraction(3, 2)):
        report = corollary1Check(nu, 2, CTX)
        assert report.passed
        assert len(report.details) == 3


def testProductDerivativesAndBetaForms():
    assert productDerivativeCheck(Fraction(1, 4), 1, CTX).passed
    assert productBetaCheck(HALF, 1, CTX).passed
    with pytest.raises(DomainError):
        productBetaCheck(Fraction(-3, 4), 1, CTX)


if __name__ == "__main__":
    print("=" * 60)
    print("Rho calculus tests")
    print("=" * 60)
    sys.exit(pytest.main([__file__, "-v"]))
