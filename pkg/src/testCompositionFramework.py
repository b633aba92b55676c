"""
Tests for the composition orthogonality framework
"""

import os
import sys
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from compositionFramework import (LaplacePair, MeasureKind, MeasureTag,
                                  compositionInnerProduct, compositionSides,
                                  hermiteNormalizationNote, innerProductCheck,
                                  jacobiKernelDirect, omegaKernel,
                                  prudnikovCheck, thetaPowerApply,
                                  thetaPowerQuadrature, thetaSeedCheck,
                                  verifyIdentity, viskovCheck)
from polynomial import Polynomial
from precisionCore import DomainError, PrecisionContext
from specialFunctions import hermiteKernel, rho

CTX = PrecisionContext(bits=128, verifyTol=1e-18, quadTarget=1e-25)
HALF = Fraction(1, 2)
POLYS = (Polynomial((1,)), Polynomial((0, 1)))

LAGUERRE = MeasureKind(MeasureTag.LAGUERRE, nu=HALF)
HERMITE = MeasureKind(MeasureTag.HERMITE)
JACOBI = MeasureKind(MeasureTag.JACOBI, alpha=0, beta=1)


def testMeasureAndPairValidation():
    with pytest.raises(DomainError):
        MeasureKind(MeasureTag.LAGUERRE, nu=-1)
    with pytest.raises(DomainError):
        MeasureKind(MeasureTag.JACOBI, alpha=HALF, beta=0)
    with pytest.raises(DomainError):
        LaplacePair(())
    with pytest.raises(DomainError):
        LaplacePair.power(-1)
    assert LaplacePair(((1, HALF), (2, 0))).lowestPower == 0.0


def testThetaImagesAgainstQuadrature():
    pair = LaplacePair(((1, HALF), (3, 0)))
    for k in range(3):
        assert CTX.agrees(thetaPowerQuadrature(k, pair, "1.5", CTX), thetaPowerApply(k, pair, "1.5", CTX))
    assert CTX.agrees(pair.phi(2, CTX), CTX.mp.gamma(CTX.mpf(HALF) + 1) * CTX.mp.sqrt(2) + 3)
    with pytest.raises(DomainError):
        thetaPowerApply(1, pair, 0, CTX)


@given(st.fractions(min_value=Fraction(-9, 10), max_value=4, max_denominator=10),
       st.integers(min_value=0, max_value=4), st.integers(min_value=0, max_value=4))
def testThetaCalculusIsExact(alpha, j, k):
    pair = LaplacePair.power(alpha)
    assert thetaSeedCheck(j, k, pair)
    assert viskovCheck(k, pair)


def testKernels():
    x = CTX.mpf(2)
    assert CTX.agrees(omegaKernel(LAGUERRE, x, CTX), rho(HALF, x, CTX))
    assert omegaKernel(HERMITE, x, CTX) == hermiteKernel(x, CTX)
    for point in ("0.25", "1", "3"):
        measure = MeasureKind(MeasureTag.JACOBI, alpha=HALF, beta=Fraction(3, 2))
        assert CTX.agrees(omegaKernel(measure, point, CTX), jacobiKernelDirect(measure, point, CTX))
    with pytest.raises(DomainError):
        omegaKernel(LAGUERRE, 0, CTX)


@pytest.mark.parametrize("measure", [LAGUERRE, HERMITE, JACOBI], ids=lambda m: m.tag.value)
@pytest.mark.parametrize("power", [0, HALF])
def testCompositionIdentity(measure, power):
    pair = LaplacePair.power(power)
    for i, p in enumerate(POLYS):
        for q in POLYS[:i + 1]:
            report = verifyIdentity(measure, pair, p, q, CTX)
            assert report.passed, report.name


def testHermiteOddPartsVanish():
    lhs, rhs = compositionSides(HERMITE, LaplacePair.power(0), POLYS[1], POLYS[0], CTX)
    assert lhs == 0
    assert rhs == 0


def testHermitePrintedDensityNote():
    report = hermiteNormalizationNote(HERMITE, LaplacePair.power(0), POLYS[0], POLYS[0], CTX)
    assert report.passed
    assert CTX.agrees(report.computed, 2 * report.expected)


def testInnerProduct():
    pair = LaplacePair.power(HALF)
    p = Polynomial((1, -2, 1))
    assert innerProductCheck(LAGUERRE, pair, p, CTX).passed
    assert compositionInnerProduct(JACOBI, pair, p, CTX) > 0


def testPrudnikovOrthogonality():
    for n in range(2):
        for m in range(n + 1):
            assert prudnikovCheck(HALF, HALF, n, m, CTX).passed
    with pytest.raises(DomainError):
        prudnikovCheck(-HALF, 0, 0, 0, CTX)


if __name__ == "__main__":
    print("=" * 60)
    print("Composition framework tests")
    print("=" * 60)
    sys.exit(pytest.main([__file__, "-v"]))
