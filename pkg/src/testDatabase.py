"""
Tests for the run-history database
"""

import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from database import DatabaseManager
from precisionCore import PrecisionContext
from verificationReport import VerificationReport

CTX = PrecisionContext(bits=128, verifyTol=1e-18, quadTarget=1e-25)


@pytest.fixture
def db(tmp_path):
    manager = DatabaseManager(str(tmp_path / "history" / "runs.db"))
    yield manager
    manager.close()


def _reports():
    mp = CTX.mp
    return [
        VerificationReport.fromValues("moment[mu=0]", "3.1", mp.pi / 8, mp.pi / 8, CTX),
        VerificationReport.fromValues("moment[mu=1]", "3.1", mp.mpf(1), mp.mpf(2), CTX),
        VerificationReport.advisory("printed_d[1,0]", "3.17", mp.mpf(1), mp.mpf(-1), CTX, "sign differs"),
    ]


def testRunLifecycle(db):
    runId = db.startVerificationRun("verify", {'suite': 'moments', 'nu': '1/2'}, CTX)
    assert runId == 1
    for report in _reports():
        db.logCheck(runId, report)
    db.endVerificationRun(runId, False, 0.25)

    stats = db.getRunStatistics(runId)
    assert stats['totalChecks'] == 3
    assert stats['failedChecks'] == 1
    assert stats['byEquation']['3.1'] == {'totalChecks': 2, 'passedChecks': 1, 'worstResidual': 0.5}
    assert stats['byEquation']['3.17']['passedChecks'] == 1


def testRecentRunsNewestFirst(db):
    first = db.startVerificationRun("ortho", {'nu': '1/4'}, CTX)
    second = db.startVerificationRun("mop", {'theorem': 't6'}, CTX)
    db.endVerificationRun(second, True, 1.5)

    runs = db.getRecentRuns()
    assert [r['runId'] for r in runs] == [second, first]
    assert runs[0]['overallPass'] == 1
    assert runs[0]['precisionBits'] == 128
    assert runs[1]['overallPass'] is None
    assert '"theorem": "t6"' in runs[0]['parameters']
    assert len(db.getRecentRuns(limit=1)) == 1


def testEmptyRunStatistics(db):
    runId = db.startVerificationRun("verify", {}, CTX)
    stats = db.getRunStatistics(runId)
    assert stats == {'byEquation': {}, 'totalChecks': 0, 'failedChecks': 0}


if __name__ == "__main__":
    print("=" * 60)
    print("Database tests")
    print("=" * 60)
    sys.exit(pytest.main([__file__, "-v"]))
