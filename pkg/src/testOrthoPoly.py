"""
Tests for the orthonormal polynomials of the Macdonald-type weights:
moments, the Gram and Cramer constructions, Laguerre-expansion coefficients,
the weighted-norm identities, Rodrigues-type forms and the generating function
"""

import os
import sys
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from orthoPoly import (CoefficientRoute, MomentTable, coeffC, coeffD,
                       coeffDPrinted, coeffDScaled, coeffDReport, corollary2Check,
                       corollary2Eval, cramerBasis, cramerConstruct,
                       cramerRecurrenceCheck, fCoefficientCheck,
                       generatingCheck, generatingPartial, gramConstruct,
                       laguerreSeriesCheck, moment, momentCheck, momentTable,
                       normalizationCheck, orthonormalityCheck, prop6Check,
                       recurrenceCheck, rodriguesCheck, rodriguesEval,
                       rodriguesH, rodriguesHTable, rodriguesProjection,
                       rodriguesSpecialCases, routeAgreementCheck,
                       theorem1Check)
from precisionCore import DomainError, PositivityLossError, PrecisionContext, gamma
from specialFunctions import WeightKind, WeightTag

CTX = PrecisionContext(bits=128, verifyTol=1e-18, quadTarget=1e-25)
HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)
BETA = CoefficientRoute.BETA_SUM


@pytest.fixture(scope="module")
def quarterBasis():
    return gramConstruct(WeightKind(WeightTag.RHO_SQ, QUARTER), 3, CTX)


def testMomentAnchors():
    mp = CTX.mp
    square = WeightKind(WeightTag.RHO_SQ, HALF)
    assert CTX.agrees(moment(square, 0, CTX), mp.pi / 8)
    assert CTX.agrees(moment(square, 1, CTX), 3 * mp.pi / 64)
    product = WeightKind(WeightTag.RHO_PROD, HALF)
    assert CTX.agrees(moment(product, 0, CTX), mp.pi / 8)
    assert CTX.agrees(moment(product, 1, CTX), 9 * mp.pi / 128)
    shifted = WeightKind(WeightTag.RHO_SQ_SHIFT, HALF)
    assert moment(shifted, 2, CTX) == moment(WeightKind(WeightTag.RHO_SQ, Fraction(3, 2)), 2, CTX)
    assert CTX.agrees(moment(WeightKind(WeightTag.RHO, 1), 2, CTX), gamma(4, CTX) * gamma(3, CTX))


def testMomentsAgainstQuadrature():
    for tag in (WeightTag.RHO_SQ, WeightTag.RHO_PROD, WeightTag.RHO_SQ_SHIFT):
        for mu in (0, 3):
            assert momentCheck(WeightKind(tag, QUARTER), mu, CTX).passed
    assert momentCheck(WeightKind(WeightTag.RHO_SQ, Fraction(3, 2), alphaPower=HALF), 1, CTX).passed


def testMomentTable():
    table = momentTable(WeightKind(WeightTag.RHO_SQ, HALF), 4, CTX)
    assert len(table) == 4
    assert table[1] < table[0]
    with pytest.raises(PositivityLossError):
        MomentTable(table.weight, (CTX.mpf(1), CTX.mpf(0)))


def testGramBasisAtHalf():
    mp = CTX.mp
    basis = gramConstruct(WeightKind(WeightTag.RHO_SQ, HALF), 2, CTX)
    assert CTX.agrees(basis.evaluate(0, 1), mp.sqrt(8 / mp.pi))
    assert CTX.agrees(basis.recurB[0], mp.mpf(3) / 8)
    assert all(basis.leading(n) > 0 for n in range(3))
    assert basis.toDict(mp.nstr)['route'] == 'gram'


def testOrthonormalityAndRecurrence(quarterBasis):
    assert all(r.passed for r in orthonormalityCheck(quarterBasis, CTX))
    assert all(r.passed for r in recurrenceCheck(quarterBasis, ("0.5", "2"), CTX))
    assert normalizationCheck(quarterBasis, 2, CTX).passed


def testGramBasisForProductWeight():
    basis = gramConstruct(WeightKind(WeightTag.RHO_PROD, HALF), 2, CTX)
    assert all(r.passed for r in orthonormalityCheck(basis, CTX))


def testGramPositivityLoss():
    """At 64 bits a degree-20 Hankel matrix is no longer positive definite"""
    low = PrecisionContext(bits=64, verifyTol=1e-10, quadTarget=1e-12)
    with pytest.raises(PositivityLossError):
        gramConstruct(WeightKind(WeightTag.RHO_SQ, HALF), 20, low)


def testDCoefficientOracleValues():
    mp = CTX.mp
    nu = CTX.mpf(QUARTER)
    assert CTX.agrees(coeffD(nu, 0, 0, CTX), mp.gamma(1 + nu))
    assert CTX.agrees(coeffD(nu, 1, 0, CTX), -mp.gamma(nu + 2))
    assert CTX.agrees(coeffD(nu, 1, 1, CTX), mp.gamma(nu + 2) * (nu + 3))
    for r in range(3, 8):
        assert coeffDScaled(QUARTER, 1, r) == 0
        assert abs(coeffD(nu, 1, r, CTX)) < CTX.tol
    with pytest.raises(DomainError):
        coeffD(-1, 0, 0, CTX)


def testDCoefficientsVanishAboveTwiceTheDegree():
    for nu in (QUARTER, HALF):
        for m in range(5):
            assert coeffDScaled(nu, m, 2 * m) != 0
            for r in range(2 * m + 1, 11):
                assert coeffDScaled(nu, m, r) == 0


def testDCoefficientPrintedFormIsAdvisory():
    mp = CTX.mp
    assert CTX.agrees(coeffDPrinted(QUARTER, 1, 0, CTX), mp.gamma(CTX.mpf(QUARTER) + 2))
    differing = coeffDReport(QUARTER, 1, 0, CTX)
    assert differing.passed
    assert "differs" in differing.note
    assert "agrees" in coeffDReport(QUARTER, 1, 1, CTX).note


def testCCoefficientRoutes():
    half = CTX.mpf(HALF)
    assert CTX.agrees(coeffC(half, 0, 0, CTX), half)
    for n, r in ((0, 1), (1, 2), (2, 0)):
        assert CTX.agrees(coeffC(CTX.mpf(QUARTER), n, r, CTX, BETA), coeffC(CTX.mpf(QUARTER), n, r, CTX))
    with pytest.raises(DomainError):
        coeffC(CTX.mpf(-1), 0, 0, CTX)
    assert laguerreSeriesCheck(QUARTER, 0, 1, CTX, terms=10).passed


def testFCoefficients():
    for k, m in ((0, 0), (2, 1), (1, 2)):
        assert fCoefficientCheck(QUARTER, k, m, CTX, BETA).passed


def testCramerRouteMatchesGram(quarterBasis):
    system, poly = cramerConstruct(QUARTER, 2, CTX, gramBasis=quarterBasis, cRoute=BETA)
    assert system.hadamardRatio > CTX.pivotFloor
    assert system.Dk[0] == -system.determinant
    for k in range(3):
        reference = quarterBasis.polynomial(2).coefficient(k)
        assert abs(poly.coefficient(k) - reference) <= 1e-12 * abs(reference)
    assert all(r.passed for r in routeAgreementCheck(QUARTER, 2, CTX, cRoute=BETA))
    with pytest.raises(DomainError):
        cramerConstruct(QUARTER, 5, CTX)


def testCramerRouteUpToTheDegreeCap():
    wide = PrecisionContext(bits=192, verifyTol=1e-25, quadTarget=1e-35)
    reports = routeAgreementCheck(HALF, 4, wide, cRoute=BETA)
    assert len(reports) == 5
    assert all(r.passed for r in reports)


def testCramerRecurrenceCoefficients(quarterBasis):
    cramer = cramerBasis(QUARTER, 2, CTX, cRoute=BETA)
    assert cramer.route.value == 'cramer'
    assert all(r.passed for r in cramerRecurrenceCheck(cramer, quarterBasis, CTX))


def testWeightedNormIdentities():
    for nu in (QUARTER, 1):
        basis = gramConstruct(WeightKind(WeightTag.RHO_SQ, nu), 2, CTX)
        for n in range(3):
            reports = prop6Check(nu, n, CTX, basis)
            assert len(reports) == 4
            assert all(r.passed for r in reports)


def testCompositionOrthogonality(quarterBasis):
    mp = CTX.mp
    for n in range(3):
        for m in range(n + 1):
            report = theorem1Check(QUARTER, n, m, CTX, quarterBasis)
            assert abs(report.absResidual) < mp.mpf('1e-15')
    with pytest.raises(DomainError):
        theorem1Check(Fraction(-3, 4), 0, 0, CTX)


def testRodriguesCoefficientClosedValues():
    for r in range(4):
        for nu in (QUARTER, HALF, Fraction(2)):
            for computed, expected in rodriguesSpecialCases(r, nu):
                assert computed == expected


def testRodriguesCoefficientsByProjection():
    basis = gramConstruct(WeightKind(WeightTag.RHO_SQ, QUARTER), 1, CTX)
    table = rodriguesHTable(QUARTER, basis.polynomial(1), CTX)
    for k in range(3):
        assert CTX.agrees(table[k], rodriguesH(QUARTER, 1, k, CTX, basis=basis))
        assert CTX.agrees(rodriguesProjection(QUARTER, basis.polynomial(1), k, CTX), table[k])
    with pytest.raises(DomainError):
        rodriguesH(QUARTER, 1, 3, CTX, basis=basis)


def testRodriguesRepresentation(quarterBasis):
    half = gramConstruct(WeightKind(WeightTag.RHO_SQ, HALF), 1, CTX)
    assert CTX.agrees(rodriguesEval(HALF, 1, 1, CTX, basis=half), half.evaluate(1, CTX.mpf(1)), 1e-10)
    for x in ("0.5", "2"):
        assert rodriguesCheck(QUARTER, 2, x, CTX, basis=quarterBasis).passed


def testRodriguesThroughDeterminants(quarterBasis):
    for n in (1, 2):
        system, _ = cramerConstruct(QUARTER, n, CTX, gramBasis=quarterBasis, cRoute=BETA)
        for k in range(2 * n + 1):
            assert CTX.agrees(rodriguesH(QUARTER, n, k, CTX, system=system),
                              rodriguesH(QUARTER, n, k, CTX, basis=quarterBasis), 1e-12)
        assert CTX.agrees(rodriguesEval(QUARTER, n, "0.5", CTX, system=system),
                          quarterBasis.evaluate(n, CTX.mpf("0.5")), 1e-10)
        assert rodriguesCheck(QUARTER, n, 2, CTX, system=system).passed
        value, _ = corollary2Eval(QUARTER, n, 1, CTX, system=system, basis=quarterBasis)
        assert CTX.agrees(value, system.polynomial(CTX.mpf(1)), 1e-10)


def testTypeOneRepresentation(quarterBasis):
    value, aggregateB = corollary2Eval(QUARTER, 2, 1, CTX, basis=quarterBasis)
    assert CTX.agrees(value, quarterBasis.evaluate(2, CTX.mpf(1)), 1e-10)
    assert aggregateB.maxAbsCoefficient() < CTX.mpf('1e-15')
    assert corollary2Check(QUARTER, 1, "0.5", CTX, basis=quarterBasis).passed


def testGeneratingFunction(quarterBasis):
    result = generatingPartial(QUARTER, 1, "0.1", 3, CTX, quarterBasis)
    assert abs(result.difference) < CTX.mpf('1e-20')
    reports = generatingCheck(QUARTER, 1, "0.1", 2, CTX, quarterBasis)
    assert all(r.passed for r in reports)
    assert "printed" in reports[1].note


if __name__ == "__main__":
    print("=" * 60)
    print("Orthogonal polynomial tests")
    print("=" * 60)
    sys.exit(pytest.main([__file__, "-v"]))
