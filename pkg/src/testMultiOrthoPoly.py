"""
Tests for the multiple orthogonal polynomials of the weight vector
(rho_nu^2, rho_{nu+1}^2, rho_nu rho_{nu+1})
"""

import os
import sys
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from multiOrthoPoly import (lowerLevelTriple, momentVector, remark3Check,
                            theorem4RankCheck, theorem5Check, theorem6Check,
                            type1ResidualCheck, type1Solve,
                            type2ResidualCheck, type2Solve)
from orthoPoly import moment
from precisionCore import DomainError, PrecisionContext
from specialFunctions import WeightKind, WeightTag

CTX = PrecisionContext(bits=128, verifyTol=1e-18, quadTarget=1e-25)
HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def testMomentVector():
    mp = CTX.mp
    square, shifted, product = momentVector(HALF, 0, 0, CTX)
    assert CTX.agrees(square, mp.pi / 8)
    assert CTX.agrees(product, mp.pi / 8)
    assert shifted == moment(WeightKind(WeightTag.RHO_SQ, Fraction(3, 2)), 0, CTX)
    with pytest.raises(DomainError):
        momentVector(-HALF, 0, 0, CTX)


def testTypeOneSolution():
    solution = type1Solve(QUARTER, 0, (1, 0, 0), CTX)
    assert not solution.degenerate
    assert solution.A.coefficient(1) == 1
    assert len(solution.coefficientVector()) == 4
    assert type1ResidualCheck(solution, CTX).passed
    assert solution.toDict(CTX.mp.nstr)['degrees'] == [1, 0, 0]
    with pytest.raises(DomainError):
        type1Solve(QUARTER, 0, (-1, 0, 0), CTX)


def testTypeTwoSolution():
    solution = type2Solve(QUARTER, 0, (2, 1, 2), CTX)
    assert solution.poly.degree == 5
    assert solution.poly.coefficient(5) == 1
    assert type2ResidualCheck(solution, CTX).passed
    trivial = type2Solve(QUARTER, 0, (0, 0, 0), CTX)
    assert trivial.poly.coeffs == (1,)
    assert type2ResidualCheck(trivial, CTX).passed
    with pytest.raises(DomainError):
        type2Solve(QUARTER, 0, (1, -1, 0), CTX)


def testLowerLevelTripleShape():
    upper = type1Solve(QUARTER, 1, (1, 0, 0), CTX)
    newA, newB, newC = lowerLevelTriple(upper, CTX)
    assert newA.degree <= 1
    assert newB.degree <= 0
    assert newC.degree <= 1


def testDifferentialRecurrenceBetweenLevels():
    report = theorem5Check(QUARTER, 1, 1, CTX)
    assert report.passed, report.name
    assert any(part.name.startswith("theorem5_scalar_nonzero") for part in report.details)
    with pytest.raises(DomainError):
        theorem5Check(Fraction(3, 5), 1, 1, CTX)
    with pytest.raises(DomainError):
        theorem5Check(QUARTER, 0, 1, CTX)


@pytest.mark.parametrize("n", [0, 1])
def testTypeTwoDerivative(n):
    assert theorem6Check(QUARTER, 0, n, CTX).passed


def testTypeTwoDerivativeDomain():
    with pytest.raises(DomainError):
        theorem6Check(-QUARTER, 0, 0, CTX)


def testFamilyIsLinearlyIndependent():
    report, eigenvalues = theorem4RankCheck(QUARTER, (1, 0, 0), CTX)
    assert report.passed
    assert len(eigenvalues) == 3
    assert eigenvalues[0] > CTX.nullspaceGate
    assert CTX.agrees(sum(eigenvalues), 3)


def testDependentFamilyIsRejected():
    # x rho_{-1/2}^2 = rho_{1/2}^2, so the smallest eigenvalue is rounding noise
    report, eigenvalues = theorem4RankCheck(-HALF, (1, 0, 0), CTX)
    assert not report.passed
    assert abs(eigenvalues[0]) < CTX.nullspaceGate
    assert report.tolerance == CTX.nullspaceGate


def testDegenerateIndexWitness():
    report = remark3Check(("0.5", "2", "7"), CTX)
    assert report.passed
    assert len(report.details) == 3


if __name__ == "__main__":
    print("=" * 60)
    print("Multiple orthogonal polynomial tests")
    print("=" * 60)
    sys.exit(pytest.main([__file__, "-v"]))
