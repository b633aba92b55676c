"""
Tests for K_nu, the Macdonald weight, Laguerre polynomials, Tricomi U,
the incomplete gamma function, terminating 3F2 and the Mellin-Barnes routes
"""

import os
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from precisionCore import DomainError, PrecisionContext, UnderflowError
from quadrature import EndpointProfile, integrateZeroInf
from specialFunctions import (WeightKind, WeightTag, besselK, besselKIntegral,
                              hermiteKernel, hermiteKernelMellin,
                              hyp3f2Terminating, laguerre,
                              laguerreCoefficients, laguerreRepCheck,
                              mbRhoProduct, mbRhoSquared, rho, rhoOrZero,
                              rhoProduct, rhoSquared, tricomiU,
                              tricomiUIntegral, upperIncompleteGamma,
                              upperIncompleteGammaIntegral)

CTX = PrecisionContext(bits=128, verifyTol=1e-18, quadTarget=1e-25)
HALF = Fraction(1, 2)


def testBesselKHalfIntegerClosedForms():
    mp = CTX.mp
    closed = mp.sqrt(mp.pi) / 2 * mp.exp(-2)
    assert CTX.agrees(besselK(HALF, 2, CTX), closed)
    assert abs(besselK(HALF, 2, CTX) - mp.mpf('0.11993777')) < mp.mpf('1e-8')
    assert CTX.agrees(besselK(Fraction(3, 2), 2, CTX), closed * (1 + mp.mpf(1) / 2))
    assert CTX.agrees(besselK(-Fraction(3, 4), 2, CTX), besselK(Fraction(3, 4), 2, CTX))


def testBesselKIntegralRoute():
    for nu in (0, Fraction(1, 4), Fraction(3, 2)):
        for z in ("0.5", "3"):
            assert CTX.agrees(besselKIntegral(nu, z, CTX), besselK(nu, z, CTX))


def testBesselKUnderflowAndDomain():
    with pytest.raises(UnderflowError):
        besselK(HALF, 400, CTX)
    with pytest.raises(DomainError):
        besselK(HALF, 0, CTX)
    assert rhoOrZero(HALF, 10 ** 5, CTX) == 0


def testRhoClosedForms():
    mp = CTX.mp
    value = rho(HALF, 1, CTX)
    assert CTX.agrees(value, mp.sqrt(mp.pi) * mp.exp(-2))
    assert abs(value - mp.mpf('0.23987681')) < mp.mpf('1e-8')
    assert CTX.agrees(rho(-HALF, 4, CTX), mp.sqrt(mp.pi) / 2 * mp.exp(-4))
    for x in ("0.1", "1", "10"):
        xm = CTX.mpf(x)
        expected = mp.sqrt(mp.pi) * mp.exp(-2 * mp.sqrt(xm))
        assert abs(rho(HALF, xm, CTX) - expected) / expected < mp.mpf('1e-30')
    with pytest.raises(DomainError):
        rho(HALF, 0, CTX)


@settings(max_examples=20, deadline=None)
@given(st.fractions(min_value=-2, max_value=3, max_denominator=8),
       st.fractions(min_value=Fraction(1, 10), max_value=8, max_denominator=10))
def testRhoIndexRecurrence(nu, x):
    """rho_{nu+1} = nu rho_nu + x rho_{nu-1}"""
    mp = CTX.mp
    nuM, xm = CTX.mpf(nu), CTX.mpf(x)
    lhs = rho(nuM + 1, xm, CTX)
    terms = (nuM * rho(nuM, xm, CTX), xm * rho(nuM - 1, xm, CTX))
    assert abs(lhs - sum(terms)) <= mp.ldexp(1, 16 - CTX.bits) * max(abs(lhs), *(abs(t) for t in terms))


def testWeightProducts():
    nu, x = Fraction(1, 4), CTX.mpf(2)
    assert rhoSquared(nu, x, CTX) == rho(nu, x, CTX) ** 2
    assert CTX.agrees(rhoProduct(nu, x, CTX), rho(Fraction(5, 4), x, CTX) * rho(nu, x, CTX))
    weight = WeightKind(WeightTag.RHO_SQ_SHIFT, nu, alphaPower=1)
    assert CTX.agrees(weight.evaluate(x, CTX), x * rho(Fraction(5, 4), x, CTX) ** 2)


def testWeightKindValidation():
    with pytest.raises(DomainError):
        WeightKind(WeightTag.RHO_SQ, Fraction(-1, 2))
    with pytest.raises(DomainError):
        WeightKind(WeightTag.RHO, 1, alphaPower=-1)
    assert WeightKind(WeightTag.RHO_SQ, 0).profile().logAtZero
    assert WeightKind(WeightTag.RHO_SQ, Fraction(-1, 4)).profile(2).singExpAtZero == 1.5


def testLaguerreLowDegrees():
    assert laguerre(0, HALF, Fraction(3)) == 1
    assert laguerre(1, HALF, Fraction(3)) == 1 + HALF - 3
    assert laguerre(2, 0, Fraction(1)) == Fraction(-1, 2)
    poly = laguerreCoefficients(3, Fraction(1, 4))
    for t in (Fraction(0), Fraction(1, 3), Fraction(5)):
        assert poly(t) == laguerre(3, Fraction(1, 4), t)
    with pytest.raises(DomainError):
        laguerre(-1, 0, 1)


def testLaguerreOrthogonality():
    mp = CTX.mp
    nu = CTX.mpf(HALF)
    value = integrateZeroInf(lambda t: t ** nu * mp.exp(-t) * laguerre(2, nu, t, CTX) * laguerre(1, nu, t, CTX),
                             EndpointProfile(0.5), CTX).value
    assert abs(value) < CTX.tol


def testTricomiU():
    mp = CTX.mp
    assert CTX.agrees(tricomiU(Fraction(3, 2), Fraction(5, 2), 2, CTX), mp.power(2, -mp.mpf(3) / 2))
    value = tricomiU(1, 1, 1, CTX)
    assert CTX.agrees(value, mp.e * mp.e1(1))
    assert abs(value - mp.mpf('0.59634736')) < mp.mpf('1e-8')
    nu, t = CTX.mpf('0.25'), CTX.mpf(2)
    assert CTX.agrees(tricomiU(nu + 1, 1 + nu, t, CTX), mp.exp(t) * upperIncompleteGamma(-nu, t, CTX))
    assert CTX.agrees(tricomiUIntegral(2, Fraction(5, 4), "0.5", CTX), tricomiU(2, Fraction(5, 4), "0.5", CTX))
    with pytest.raises(DomainError):
        tricomiU(0, 1, 1, CTX)


def testUpperIncompleteGamma():
    mp = CTX.mp
    assert CTX.agrees(upperIncompleteGamma(3, 0, CTX), 2)
    assert CTX.agrees(upperIncompleteGamma(1, 2, CTX), mp.exp(-2))
    for a, z in ((-Fraction(1, 4), "1"), (HALF, "2")):
        assert CTX.agrees(upperIncompleteGammaIntegral(a, z, CTX), upperIncompleteGamma(a, z, CTX))
    with pytest.raises(DomainError):
        upperIncompleteGamma(-1, 0, CTX)
    with pytest.raises(DomainError):
        upperIncompleteGamma(1, -1, CTX)


def testTerminatingHypergeometric():
    # Pfaff-Saalschutz: 3F2(-k, a, b; c, 1+a+b-c-k; 1) = (c-a)_k (c-b)_k / ((c)_k (c-a-b)_k)
    a, b, c, k = Fraction(1, 3), Fraction(5, 2), Fraction(7, 4), 3
    value = hyp3f2Terminating(k, a, b, c, 1 + a + b - c - k)
    expected = Fraction(1)
    for j in range(k):
        expected *= (c - a + j) * (c - b + j) / ((c + j) * (c - a - b + j))
    assert value == expected
    assert hyp3f2Terminating(0, a, b, c, 2) == 1
    assert CTX.agrees(hyp3f2Terminating(k, a, b, c, 1 + a + b - c - k, CTX), CTX.mpf(expected))


def testMellinBarnesWeightProducts():
    mp = CTX.mp
    for nu in (Fraction(1, 4), HALF):
        for x in ("0.5", "5"):
            square = mbRhoSquared(nu, x, CTX).value
            product = mbRhoProduct(nu, x, CTX).value
            assert abs(square / rhoSquared(nu, x, CTX) - 1) < mp.mpf('1e-20')
            assert abs(product / rhoProduct(nu, x, CTX) - 1) < mp.mpf('1e-20')


def testHermiteKernelRoutes():
    for x in ("0.5", "2"):
        assert CTX.agrees(hermiteKernelMellin(x, CTX).value, hermiteKernel(x, CTX))
    with pytest.raises(DomainError):
        hermiteKernel(0, CTX)


def testLaguerreRepresentation():
    assert laguerreRepCheck(HALF, 0, 1, CTX).passed
    assert laguerreRepCheck(Fraction(3, 2), 2, "0.5", CTX).passed
    with pytest.raises(DomainError):
        laguerreRepCheck(0, 0, 1, CTX)


if __name__ == "__main__":
    print("=" * 60)
    print("Special function tests")
    print("=" * 60)
    sys.exit(pytest.main([__file__, "-v"]))
