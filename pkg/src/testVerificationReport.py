"""
Tests for verification reports and the report document
"""

import json
import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from precisionCore import PrecisionContext
from verificationReport import SCHEMA_VERSION, ReportDocument, VerificationReport

CTX = PrecisionContext(bits=128, verifyTol=1e-18, quadTarget=1e-25)


def testFromValuesUsesContextPolicy():
    mp = CTX.mp
    good = VerificationReport.fromValues("pi", "x", mp.pi, mp.pi + mp.mpf('1e-30'), CTX)
    assert good.passed
    assert good.tolerance == CTX.tol
    bad = VerificationReport.fromValues("pi", "x", mp.pi, mp.mpf(3), CTX)
    assert not bad.passed
    loose = VerificationReport.fromValues("pi", "x", mp.pi, mp.mpf('3.14159'), CTX, tolerance=1e-3)
    assert loose.passed


def testFromResidual():
    report = VerificationReport.fromResidual("residual", "x", -CTX.mpf('1e-20'), CTX)
    assert report.passed
    assert report.absResidual == CTX.mpf('1e-20')
    assert not VerificationReport.fromResidual("residual", "x", CTX.mpf('1e-10'), CTX).passed


def testAdvisoryAlwaysPasses():
    report = VerificationReport.advisory("printed", "x", CTX.mpf(1), CTX.mpf(-1), CTX, "sign differs")
    assert report.passed
    assert report.absResidual == 2


def testExactComparison():
    assert VerificationReport.exact("rational", "x", (0, 0), (0, 0), CTX).passed
    report = VerificationReport.exact("rational", "x", 1, 2, CTX)
    assert not report.passed
    assert report.computed == "1"


def testCombineKeepsWorstPart():
    parts = [VerificationReport.fromResidual("a", "x", CTX.mpf('1e-30'), CTX),
             VerificationReport.fromResidual("b", "x", CTX.mpf('1e-5'), CTX)]
    combined = VerificationReport.combine("both", "x", parts)
    assert not combined.passed
    assert combined.absResidual == CTX.mpf('1e-5')
    assert len(combined.details) == 2


def testDocumentRendering():
    document = ReportDocument('verify', {'suite': 'remark3'})
    document.add(VerificationReport.fromResidual("ok", "R3", 0, CTX))
    document.add(VerificationReport.fromResidual("off", "R3", CTX.mpf('0.5'), CTX, note="too large"))
    assert not document.overallPass
    decoded = json.loads(document.toJson(CTX.mp.nstr, includeWallTime=False))
    assert decoded['schemaVersion'] == SCHEMA_VERSION
    assert [r['passed'] for r in decoded['results']] == [True, False]
    assert 'wallTime' not in decoded
    text = document.toText(CTX.mp.nstr)
    assert "[FAIL] off" in text
    assert "too large" in text


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
