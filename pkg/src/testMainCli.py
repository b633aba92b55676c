"""
Tests for the macOrthoSim command-line interface
"""

import io
import json
import os
import sys

import pandas as pd
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from mainCli import (ENV_BITS, ENV_DB_PATH, EXIT_PASS, EXIT_USAGE,
                     RunConfig, buildParser, cmdOrtho, main)
from precisionCore import PrecisionContext

FAST = ['--precision-bits', '128', '--verify-tol', '1e-18', '--quad-target', '1e-25']


@pytest.fixture(autouse=True)
def isolatedEnvironment(monkeypatch, tmp_path):
    for name in (ENV_BITS, ENV_DB_PATH, 'MACORTHO_VERIFY_TOL', 'MACORTHO_QUAD_TARGET'):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.chdir(tmp_path)


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def testWeightsJson(capsys):
    code, out, _ = _run(capsys, ['weights', '--which', 'rho', '--nu', '1/2', '--x', '1'] + FAST)
    assert code == EXIT_PASS
    document = json.loads(out)
    assert document['command'] == 'weights'
    assert document['schemaVersion'] == '1'
    mp = PrecisionContext(bits=128, verifyTol=1e-18, quadTarget=1e-25).mp
    value = mp.mpf(document['payload']['values']['1'])
    assert abs(value - mp.sqrt(mp.pi) * mp.exp(-2)) < mp.mpf('1e-30')


def testWeightsUsageErrors(capsys):
    code, _, err = _run(capsys, ['weights', '--which', 'rho', '--x', '1'])
    assert code == EXIT_USAGE
    assert '--nu' in err
    assert _run(capsys, ['weights', '--which', 'rho', '--nu', '1/2', '--x', '-1'])[0] == EXIT_USAGE
    assert _run(capsys, ['weights', '--bogus'])[0] == EXIT_USAGE


def testJacobiKernelPreconditionIsUsageError(capsys):
    code, _, err = _run(capsys, ['weights', '--which', 'jacobi-kernel', '--alpha=-5', '--x', '1'] + FAST)
    assert code == EXIT_USAGE
    assert 'alpha' in err


def testUnwritableOutputIsUsageError(capsys, tmp_path):
    target = tmp_path / "missing" / "out.json"
    code, _, err = _run(capsys, ['weights', '--which', 'rho', '--nu', '1/2', '--x', '1',
                                 '--output', str(target)] + FAST)
    assert code == EXIT_USAGE
    assert not target.exists()


def testUnreadableDatabaseIsUsageError(capsys, tmp_path):
    dbPath = tmp_path / "runs.db"
    dbPath.write_bytes(b"not a database" * 100)
    assert _run(capsys, ['history', '--db-path', str(dbPath)])[0] == EXIT_USAGE


def testOrthoCsvCoefficients(capsys):
    code, out, _ = _run(capsys, ['ortho', '--nu', '1/2', '--n', '2', '--format', 'csv'] + FAST)
    assert code == EXIT_PASS
    table = pd.read_csv(io.StringIO(out))
    assert list(table.columns) == ['n', 'k', 'coefficient']
    assert len(table) == 6


def testOrthoWritesOutputFile(capsys, tmp_path):
    target = tmp_path / "ortho.txt"
    code, out, _ = _run(capsys, ['ortho', '--nu', '1/4', '--n', '1', '--format', 'text',
                                 '--output', str(target)] + FAST)
    assert code == EXIT_PASS
    assert out == ''
    assert 'overall: PASS' in target.read_text(encoding='utf-8')


def testOrthoPreconditions(capsys):
    assert _run(capsys, ['ortho', '--nu', '-1', '--n', '2'])[0] == EXIT_USAGE
    assert _run(capsys, ['ortho', '--nu', '1/2', '--n', '9', '--method', 'cramer'])[0] == EXIT_USAGE


def testVerifyRecordsHistory(capsys, tmp_path):
    dbPath = str(tmp_path / "runs.db")
    code, out, _ = _run(capsys, ['verify', '--suite', 'remark3', '--db-path', dbPath] + FAST)
    assert code == EXIT_PASS
    assert json.loads(out)['overallPass'] is True

    code, out, _ = _run(capsys, ['history', '--run-id', '1', '--db-path', dbPath])
    assert code == EXIT_PASS
    stats = json.loads(out)['payload']
    assert stats['totalChecks'] == 1
    assert stats['failedChecks'] == 0

    code, out, _ = _run(capsys, ['history', '--db-path', dbPath, '--format', 'csv'])
    assert code == EXIT_PASS
    assert pd.read_csv(io.StringIO(out))['command'].tolist() == ['verify']

    code, out, _ = _run(capsys, ['history', '--db-path', dbPath])
    runs = json.loads(out)['payload']['runs']
    assert [run['runId'] for run in runs] == [1]
    assert json.loads(runs[0]['parameters'])['suite'] == 'remark3'


def testSameBitsGiveIdenticalJson():
    args = buildParser().parse_args(['ortho', '--nu', '1/2', '--n', '2', '--method', 'both'] + FAST)
    config = RunConfig.fromArgs(args, environ={})
    rendered = []
    for _ in range(2):
        ctx = config.toContext()
        document, _ = cmdOrtho(args, config, ctx)
        document.wallTime = len(rendered) + 1.0
        rendered.append(document.toJson(ctx.mp.nstr, includeWallTime=False))
    assert rendered[0] == rendered[1]
    assert 'wallTime' not in rendered[0]


def testVerifyRejectsCsv(capsys):
    assert _run(capsys, ['verify', '--suite', 'remark3', '--format', 'csv', '--no-record'])[0] == EXIT_USAGE


def testEnvironmentOverridesDefaults(capsys, monkeypatch):
    monkeypatch.setenv(ENV_BITS, '160')
    code, out, _ = _run(capsys, ['verify', '--suite', 'remark3', '--no-record',
                                 '--verify-tol', '1e-18', '--quad-target', '1e-25'])
    assert code == EXIT_PASS
    assert json.loads(out)['parameters']['bits'] == 160

    code, out, _ = _run(capsys, ['verify', '--suite', 'remark3', '--no-record'] + FAST)
    assert json.loads(out)['parameters']['bits'] == 128


def testInvalidConfiguration(capsys, monkeypatch):
    monkeypatch.setenv(ENV_BITS, 'many')
    assert _run(capsys, ['verify', '--suite', 'remark3', '--no-record'])[0] == EXIT_USAGE
    monkeypatch.delenv(ENV_BITS)
    assert _run(capsys, ['verify', '--suite', 'remark3', '--no-record', '--precision-bits', '16'])[0] == EXIT_USAGE


def testMopPreconditions(capsys):
    assert _run(capsys, ['mop', '--check', 't6', '--nu=-1/4', '--n', '0'])[0] == EXIT_USAGE
    assert _run(capsys, ['mop', '--check', 't5', '--nu', '1/4', '--alpha', '0', '--n', '1'])[0] == EXIT_USAGE


def testMopTypeTwoCsv(capsys):
    code, out, _ = _run(capsys, ['mop', '--type', '2', '--nu', '1/4', '--n', '0', '--format', 'csv'] + FAST)
    assert code == EXIT_PASS
    table = pd.read_csv(io.StringIO(out))
    assert table['polynomial'].unique().tolist() == ['p']
    assert len(table) == 3


if __name__ == "__main__":
    print("=" * 60)
    print("Command-line interface tests")
    print("=" * 60)
    sys.exit(pytest.main([__file__, "-v"]))
