"""
Tests for the quadrature engine
"""

import os
import sys
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from precisionCore import DomainError, PoleError, PrecisionContext, beta
from quadrature import (DecayClass, EndpointProfile, GammaProduct,
                        integrateFinite, integrateZeroInf, mellinLineIntegral)

CTX = PrecisionContext(bits=128, verifyTol=1e-18, quadTarget=1e-25)


def testFiniteIntervalWithEndpointSingularities():
    mp = CTX.mp
    result = integrateFinite(lambda t: (1 - t) ** (mp.mpf(1) / 2) * t ** (mp.mpf(1) / 4), 0, 1, CTX,
                             singAtA=0.25, singAtB=0.5)
    assert result.converged
    assert CTX.agrees(result.value, beta(Fraction(5, 4), Fraction(3, 2), CTX))


def testExponentialTail():
    mp = CTX.mp
    result = integrateZeroInf(lambda x: mp.exp(-x), EndpointProfile(), CTX)
    assert CTX.agrees(result.value, 1)
    assert result.errEstimate <= CTX.target


def testSqrtExponentialDecay():
    """int e^(-2 sqrt x) dx = 1/2"""
    mp = CTX.mp
    result = integrateZeroInf(lambda x: mp.exp(-2 * mp.sqrt(x)), EndpointProfile(decay=DecayClass.SQRT_EXPONENTIAL),
                              CTX)
    assert CTX.agrees(result.value, mp.mpf(1) / 2)


def testLogarithmicEndpoint():
    """-int log(x) e^(-x) dx is the Euler constant"""
    mp = CTX.mp
    result = integrateZeroInf(lambda x: -mp.log(x) * mp.exp(-x), EndpointProfile(logAtZero=True), CTX)
    assert CTX.agrees(result.value, mp.euler)


def testAlgebraicSingularityAtZero():
    mp = CTX.mp
    result = integrateZeroInf(lambda x: x ** (-mp.mpf(1) / 2) * mp.exp(-x), EndpointProfile(-0.5), CTX)
    assert CTX.agrees(result.value, mp.sqrt(mp.pi))


def testInvalidIntervals():
    with pytest.raises(DomainError):
        EndpointProfile(-1.0)
    with pytest.raises(DomainError):
        integrateFinite(lambda t: t, 1, 0, CTX)
    with pytest.raises(DomainError):
        integrateFinite(lambda t: t, 0, 1, CTX, singAtB=-1.5)


def testMellinLineRecoversExponential():
    """(1/2 pi i) int Gamma(s) x^(-s) ds = e^(-x)"""
    mp = CTX.mp
    spec = GammaProduct(numerator=((1, 0),))
    result = mellinLineIntegral(spec, 1, 2, CTX)
    assert abs(result.value - mp.exp(-2)) < CTX.tol
    assert abs(result.imagPart) < CTX.tol
    assert spec.leftmostAllowedLine() == 0


def testMellinLineRejectsPoles():
    spec = GammaProduct(numerator=((1, 0),))
    with pytest.raises(PoleError):
        mellinLineIntegral(spec, 0, 1, CTX)
    with pytest.raises(DomainError):
        mellinLineIntegral(spec, -0.5, 1, CTX)
    with pytest.raises(DomainError):
        mellinLineIntegral(spec, 1, -1, CTX)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
