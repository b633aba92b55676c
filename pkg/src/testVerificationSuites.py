"""
Tests for the verification suite grid and the cheaper suite builders
"""

import os
import sys
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from orthoPoly import CRAMER_DEGREE_CAP, CoefficientRoute, cramerConstruct, gramConstruct
from precisionCore import PrecisionContext
from specialFunctions import WeightKind, WeightTag
from verificationSuites import (SUITE_NAMES, SuiteGrid, dCoefficientReports,
                                rodriguesSystemReports, runSuite)

CTX = PrecisionContext(bits=128, verifyTol=1e-18, quadTarget=1e-25)
QUARTER = Fraction(1, 4)


def testDefaultGridReachesTheCramerCap():
    grid = SuiteGrid()
    assert grid.cramerMax == CRAMER_DEGREE_CAP
    narrowed = grid.narrowed(nu=QUARTER, nMax=2)
    assert narrowed.cramerMax == 2
    assert narrowed.cramerNus == (QUARTER,)
    assert 'all' in SUITE_NAMES


def testDCoefficientReportsCoverTheVanishingRange():
    reports = dCoefficientReports(QUARTER, CTX)
    vanishing = [r for r in reports if r.name.startswith("d_vanishes_above_2m")]
    assert len(vanishing) == sum(10 - 2 * m for m in range(5))
    assert all(r.passed for r in vanishing)
    assert all(r.passed for r in reports)


def testRodriguesSystemReports():
    basis = gramConstruct(WeightKind(WeightTag.RHO_SQ, QUARTER), 1, CTX)
    system, _ = cramerConstruct(QUARTER, 1, CTX, gramBasis=basis, cRoute=CoefficientRoute.BETA_SUM)
    reports = rodriguesSystemReports(QUARTER, 1, system, basis, CTX, SuiteGrid())
    assert [r.eq for r in reports[:3]] == ["4.40"] * 3
    assert len(reports) == 5
    assert all(r.passed for r in reports)


def testUnknownSuite():
    with pytest.raises(KeyError):
        runSuite('nonexistent', CTX, SuiteGrid())


if __name__ == "__main__":
    print("=" * 60)
    print("Verification suite tests")
    print("=" * 60)
    sys.exit(pytest.main([__file__, "-v"]))
