"""
Tests for the precision context, error hierarchy and gamma-family primitives
"""

import os
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

# Add src directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from precisionCore import (ConfigurationError, DomainError, NumericalError,
                           PoleError, PrecisionContext, beta, exactRational,
                           gamma, gammaRatio, logGammaComplex, pochhammer)

CTX = PrecisionContext(bits=128, verifyTol=1e-18, quadTarget=1e-25)


def testContextValidation():
    """Bits below the floor and inverted tolerances are configuration errors"""
    with pytest.raises(ConfigurationError):
        PrecisionContext(bits=32)
    with pytest.raises(ConfigurationError):
        PrecisionContext(bits=128, verifyTol=1e-30, quadTarget=1e-20)
    with pytest.raises(ConfigurationError):
        PrecisionContext(bits=128, verifyTol=2.0)


def testContextsAreIndependent():
    """Two precisions side by side keep their own mpmath state"""
    low = PrecisionContext(bits=64, verifyTol=1e-12, quadTarget=1e-15)
    high = low.withBits(256, verifyTol=1e-30, quadTarget=1e-40)
    assert low.mp.prec == 64
    assert high.mp.prec == 256
    third = low.mpf(1) / 3
    assert high.mpf(1) / 3 != high.mpf(third)
    assert low.mp.prec == 64


def testMpfConvertsFractions():
    assert CTX.mpf(Fraction(1, 4)) == CTX.mp.mpf('0.25')
    assert CTX.mpf("0.5") == CTX.mp.mpf(1) / 2


def testResidualPolicy():
    """Absolute residual below magnitude 1, relative above"""
    absolute, relative, policy = CTX.residual(CTX.mpf(101), CTX.mpf(100))
    assert policy == relative == CTX.mpf('0.01')
    absolute, relative, policy = CTX.residual(CTX.mpf('0.3'), CTX.mpf('0.2'))
    assert policy == absolute
    assert CTX.agrees(CTX.mpf(1), CTX.mpf(1) + CTX.mpf('1e-25'))
    assert not CTX.agrees(CTX.mpf(1), CTX.mpf('1.001'))


def testGammaPoles():
    with pytest.raises(PoleError):
        gamma(0, CTX)
    with pytest.raises(PoleError):
        gamma(-3, CTX)
    assert issubclass(PoleError, NumericalError)
    assert CTX.agrees(gamma(Fraction(1, 2), CTX), CTX.mp.sqrt(CTX.mp.pi))


@settings(max_examples=25, deadline=None)
@given(st.floats(min_value=0.01, max_value=20.0))
def testGammaRecurrence(x):
    mp = CTX.mp
    value = CTX.mpf(x)
    ratio = gamma(value + 1, CTX) / (value * gamma(value, CTX))
    assert abs(ratio - 1) < mp.ldexp(1, 8 - CTX.bits)


@settings(max_examples=25, deadline=None)
@given(st.floats(min_value=0.05, max_value=10.0))
def testLegendreDuplication(x):
    mp = CTX.mp
    value = CTX.mpf(x)
    duplicated = mp.power(2, 2 * value - 1) * gamma(value, CTX) * gamma(value + mp.mpf(1) / 2, CTX) / mp.sqrt(mp.pi)
    assert abs(gamma(2 * value, CTX) / duplicated - 1) < mp.ldexp(1, 8 - CTX.bits)


def testPochhammerExamples():
    assert pochhammer(Fraction(7, 3), 0) == 1
    assert pochhammer(3, 2) == 12
    assert pochhammer(Fraction(3, 2), 3) == Fraction(105, 8)
    assert pochhammer(1.5, 3, CTX) == CTX.mpf('13.125')
    with pytest.raises(DomainError):
        pochhammer(1, -1)


@given(st.fractions(min_value=-5, max_value=5, max_denominator=12),
       st.integers(min_value=0, max_value=6), st.integers(min_value=0, max_value=6))
def testPochhammerSplits(a, m, n):
    assert pochhammer(a, m + n) == pochhammer(a, m) * pochhammer(a + m, n)


def testLogGammaComplex():
    mp = CTX.mp
    assert abs(logGammaComplex(1, CTX)) < CTX.tol
    s = mp.mpc('0.7', '1.3')
    assert abs(logGammaComplex(mp.conj(s), CTX) - mp.conj(logGammaComplex(s, CTX))) < CTX.tol
    modulus = mp.exp(mp.re(logGammaComplex(mp.mpc('0.5', 1), CTX)))
    assert CTX.agrees(modulus, mp.sqrt(mp.pi / mp.cosh(mp.pi)))
    with pytest.raises(PoleError):
        logGammaComplex(-2, CTX)


def testBeta():
    mp = CTX.mp
    assert CTX.agrees(beta(1, 1, CTX), 1)
    assert CTX.agrees(beta(Fraction(1, 2), Fraction(1, 2), CTX), mp.pi)
    expected = gamma(Fraction(5, 4), CTX) * gamma(Fraction(3, 2), CTX) / gamma(Fraction(11, 4), CTX)
    assert CTX.agrees(beta(Fraction(5, 4), Fraction(3, 2), CTX), expected)
    with pytest.raises(DomainError):
        beta(0, 1, CTX)


def testGammaRatioMatchesDirectProduct():
    direct = gamma(40, CTX) * gamma(Fraction(7, 2), CTX) / gamma(Fraction(81, 2), CTX)
    assert CTX.agrees(gammaRatio([40, Fraction(7, 2)], [Fraction(81, 2)], CTX), direct)
    with pytest.raises(DomainError):
        gammaRatio([-1], [], CTX)


def testExactRational():
    assert exactRational(Fraction(1, 3)) == Fraction(1, 3)
    assert exactRational(0.25) == Fraction(1, 4)
    assert exactRational("3/8") == Fraction(3, 8)
    assert exactRational(CTX.mpf('-0.375')) == Fraction(-3, 8)
    third = CTX.mpf(1) / 3
    assert CTX.mpf(exactRational(third)) == third


if __name__ == "__main__":
    print("=" * 60)
    print("Precision core tests")
    print("=" * 60)
    sys.exit(pytest.main([__file__, "-v"]))
