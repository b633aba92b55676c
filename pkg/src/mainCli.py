"""
macOrthoSim command-line interface
Weight evaluation, orthogonal and multiple orthogonal polynomial construction,
verification suites and run history
"""

import argparse
import logging
import os
import sqlite3
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

import pandas as pd

from compositionFramework import MeasureKind, MeasureTag, omegaKernel
from database import DatabaseManager
from multiOrthoPoly import (theorem4RankCheck, theorem5Check, theorem6Check,
                            type1ResidualCheck, type1Solve, type2ResidualCheck,
                            type2Solve)
from orthoPoly import (CRAMER_DEGREE_CAP, DEFAULT_CRAMER_TOL,
                       DEFAULT_RODRIGUES_TOL, cramerBasis,
                       cramerRecurrenceCheck, gramConstruct, moment,
                       recurrenceCheck, routeAgreementCheck)
from precisionCore import (DEFAULT_BITS, DEFAULT_QUAD_TARGET,
                           DEFAULT_VERIFY_TOL, ConfigurationError,
                           NumericalError, PolynomialityError,
                           PrecisionContext)
from specialFunctions import WeightKind, WeightTag, hermiteKernel, rho, rhoProduct, rhoSquared
from verificationReport import ReportDocument
from verificationSuites import SUITE_NAMES, SuiteGrid, runSuite

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

ENV_BITS = 'MACORTHO_PRECISION_BITS'
ENV_VERIFY_TOL = 'MACORTHO_VERIFY_TOL'
ENV_QUAD_TARGET = 'MACORTHO_QUAD_TARGET'
ENV_DB_PATH = 'MACORTHO_DB_PATH'
ENV_LOG_LEVEL = 'MACORTHO_LOG_LEVEL'
DEFAULT_DB_PATH = 'database/macOrtho.db'

WEIGHT_CHOICES = ('rho', 'rho2', 'product', 'hermite-kernel', 'jacobi-kernel')


class UsageError(Exception):
    """Bad flags or a violated command precondition"""


def parseRational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}")


@dataclass(frozen=True)
class RunConfig:
    """Precision policy plus output and persistence settings of one invocation"""
    precisionBits: int = DEFAULT_BITS
    verifyTol: float = DEFAULT_VERIFY_TOL
    quadTarget: float = DEFAULT_QUAD_TARGET
    outputFormat: str = 'json'
    outputPath: str = None
    dbPath: str = DEFAULT_DB_PATH
    cramerTol: float = DEFAULT_CRAMER_TOL
    rodriguesTol: float = DEFAULT_RODRIGUES_TOL
    record: bool = True

    @classmethod
    def fromArgs(cls, args, environ=None):
        """Flags override environment variables, which override defaults"""
        environ = os.environ if environ is None else environ

        def pick(flag, envName, convert, default):
            if flag is not None:
                return flag
            if environ.get(envName):
                try:
                    return convert(environ[envName])
                except ValueError as exc:
                    raise ConfigurationError(f"{envName}={environ[envName]!r} is invalid") from exc
            return default

        return cls(
            precisionBits=pick(args.precisionBits, ENV_BITS, int, DEFAULT_BITS),
            verifyTol=pick(args.verifyTol, ENV_VERIFY_TOL, float, DEFAULT_VERIFY_TOL),
            quadTarget=pick(args.quadTarget, ENV_QUAD_TARGET, float, DEFAULT_QUAD_TARGET),
            outputFormat=args.format,
            outputPath=args.output,
            dbPath=pick(getattr(args, 'dbPath', None), ENV_DB_PATH, str, DEFAULT_DB_PATH),
            cramerTol=args.cramerTol,
            rodriguesTol=args.rodriguesTol,
            record=not getattr(args, 'noRecord', False),
        )

    def toContext(self):
        return PrecisionContext(self.precisionBits, self.verifyTol, self.quadTarget)


def buildParser():
    parser = argparse.ArgumentParser(
        prog='macOrthoSim',
        description="Orthogonal polynomials for Macdonald-type weights, with identity verification")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--precision-bits', dest='precisionBits', type=int, default=None,
                        help=f"working precision in bits (default {DEFAULT_BITS}, env {ENV_BITS})")
    common.add_argument('--verify-tol', dest='verifyTol', type=float, default=None,
                        help=f"verification tolerance (default {DEFAULT_VERIFY_TOL:g})")
    common.add_argument('--quad-target', dest='quadTarget', type=float, default=None,
                        help=f"quadrature error target (default {DEFAULT_QUAD_TARGET:g})")
    common.add_argument('--cramer-tol', dest='cramerTol', type=float, default=DEFAULT_CRAMER_TOL)
    common.add_argument('--rodrigues-tol', dest='rodriguesTol', type=float, default=DEFAULT_RODRIGUES_TOL)
    common.add_argument('--format', choices=('json', 'csv', 'text'), default='json')
    common.add_argument('--output', default=None, help="write the report here instead of stdout")
    common.add_argument('--db-path', dest='dbPath', default=None, help=f"run history database (env {ENV_DB_PATH})")
    common.add_argument('--verbose', action='store_true')
    common.add_argument('--quiet', action='store_true')

    commands = parser.add_subparsers(dest='command', required=True)

    weights = commands.add_parser('weights', parents=[common], help="evaluate weights pointwise")
    weights.add_argument('--which', choices=WEIGHT_CHOICES, required=True)
    weights.add_argument('--nu', type=parseRational)
    weights.add_argument('--x', type=parseRational, nargs='+', required=True)
    weights.add_argument('--alpha', type=parseRational, default=Fraction(0), help="Jacobi alpha")
    weights.add_argument('--beta', type=parseRational, default=Fraction(1), help="Jacobi beta")

    ortho = commands.add_parser('ortho', parents=[common], help="construct orthonormal polynomials")
    ortho.add_argument('--nu', type=parseRational, required=True)
    ortho.add_argument('--n', type=int, required=True)
    ortho.add_argument('--method', choices=('gram', 'cramer', 'both'), default='gram')
    ortho.add_argument('--weight', choices=[t.value for t in WeightTag], default=WeightTag.RHO_SQ.value)
    ortho.add_argument('--alpha', type=parseRational, default=Fraction(0))
    ortho.add_argument('--table', choices=('coefficients', 'recurrence', 'moments'), default='coefficients',
                       help="table written with --format csv")

    verify = commands.add_parser('verify', parents=[common], help="run a verification suite")
    verify.add_argument('--suite', choices=SUITE_NAMES, required=True)
    verify.add_argument('--nu', type=parseRational, default=None)
    verify.add_argument('--alpha', type=parseRational, default=None)
    verify.add_argument('--nmax', type=int, default=None)
    verify.add_argument('--no-record', dest='noRecord', action='store_true', help="do not log to the run history")

    mop = commands.add_parser('mop', parents=[common], help="multiple orthogonal polynomials")
    mop.add_argument('--type', dest='mopType', choices=('1', '2'), default='2')
    mop.add_argument('--check', choices=('t4', 't5', 't6'), default=None)
    mop.add_argument('--nu', type=parseRational, required=True)
    mop.add_argument('--alpha', type=parseRational, default=Fraction(0))
    mop.add_argument('--n', type=int, required=True)

    history = commands.add_parser('history', parents=[common], help="show recorded verification runs")
    history.add_argument('--limit', type=int, default=20)
    history.add_argument('--run-id', dest='runId', type=int, default=None)
    return parser


def configureLogging(args, environ=None):
    environ = os.environ if environ is None else environ
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.ERROR
    else:
        level = getattr(logging, environ.get(ENV_LOG_LEVEL, 'WARNING').upper(), logging.WARNING)
    logging.basicConfig(level=level, format='%(asctime)s %(name)s %(levelname)s: %(message)s')


def _weightKind(tag, nu, alpha):
    try:
        return WeightKind(tag, nu, alpha)
    except NumericalError as exc:
        raise UsageError(str(exc)) from exc


def _jacobiMeasure(alpha, beta):
    try:
        return MeasureKind(MeasureTag.JACOBI, alpha=alpha, beta=beta)
    except NumericalError as exc:
        raise UsageError(str(exc)) from exc


def cmdWeights(args, config, ctx):
    if args.which in ('rho', 'rho2', 'product') and args.nu is None:
        raise UsageError(f"--which {args.which} needs --nu")
    if any(x <= 0 for x in args.x):
        raise UsageError("--x values must be positive")
    measure = _jacobiMeasure(args.alpha, args.beta) if args.which == 'jacobi-kernel' else None
    values = {}
    for x in args.x:
        if args.which == 'rho':
            value = rho(args.nu, x, ctx)
        elif args.which == 'rho2':
            value = rhoSquared(args.nu, x, ctx)
        elif args.which == 'product':
            value = rhoProduct(args.nu, x, ctx)
        elif args.which == 'hermite-kernel':
            value = hermiteKernel(x, ctx)
        else:
            value = omegaKernel(measure, x, ctx)
        values[str(x)] = ctx.mp.nstr(value, 40)
    parameters = {'which': args.which, 'nu': _text(args.nu), 'x': [str(x) for x in args.x]}
    if args.which == 'jacobi-kernel':
        parameters.update(alpha=str(args.alpha), beta=str(args.beta))
    document = ReportDocument('weights', parameters, payload={'values': values})
    table = pd.DataFrame({'x': list(values), 'value': list(values.values())})
    return document, table


def cmdOrtho(args, config, ctx):
    tag = WeightTag(args.weight)
    if args.nu <= Fraction(-1, 2):
        raise UsageError(f"--nu must exceed -1/2, got {args.nu}")
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    if args.method != 'gram' and (tag is not WeightTag.RHO_SQ or args.alpha):
        raise UsageError("the cramer route is defined for the rho2 weight without --alpha")
    if args.method != 'gram' and args.n > CRAMER_DEGREE_CAP - 1:
        raise UsageError(f"the cramer route supports --n up to {CRAMER_DEGREE_CAP - 1}")
    weight = _weightKind(tag, args.nu, args.alpha)
    parameters = {'nu': str(args.nu), 'n': args.n, 'method': args.method, 'weight': tag.value,
                  'alpha': str(args.alpha)}
    document = ReportDocument('ortho', parameters)
    nstr = ctx.mp.nstr
    if args.method in ('gram', 'both'):
        gram = gramConstruct(weight, args.n, ctx)
        document.payload['gram'] = gram.toDict(nstr)
        document.extend(recurrenceCheck(gram, ("0.5", "2"), ctx))
        basis = gram
    if args.method in ('cramer', 'both'):
        cramer = cramerBasis(args.nu, args.n, ctx, config.cramerTol)
        document.payload['cramer'] = cramer.toDict(nstr)
        basis = cramer
    if args.method == 'both':
        document.extend(routeAgreementCheck(args.nu, args.n, ctx, config.cramerTol))
        document.extend(cramerRecurrenceCheck(cramer, gram, ctx, config.cramerTol))
    if args.table == 'moments':
        rows = [(mu, nstr(moment(weight, mu, ctx), 40)) for mu in range(2 * args.n + 2)]
        table = pd.DataFrame(rows, columns=['mu', 'moment'])
    elif args.table == 'recurrence':
        table = pd.DataFrame({'n': range(args.n + 1), 'A': [nstr(a, 40) for a in basis.recurA],
                              'B': [nstr(b, 40) for b in basis.recurB]})
    else:
        rows = [(n, k, nstr(c, 40)) for n, poly in enumerate(basis.coeffs) for k, c in enumerate(poly.coeffs)]
        table = pd.DataFrame(rows, columns=['n', 'k', 'coefficient'])
    return document, table


def cmdVerify(args, config, ctx):
    if config.outputFormat == 'csv':
        raise UsageError("verification suites are written as json or text")
    if args.nu is not None and args.nu <= Fraction(-1, 2):
        raise UsageError(f"--nu must exceed -1/2, got {args.nu}")
    grid = SuiteGrid(cramerTol=config.cramerTol, rodriguesTol=config.rodriguesTol)
    grid = grid.narrowed(nu=args.nu, nMax=args.nmax, alpha=args.alpha)
    parameters = {'suite': args.suite, 'nu': _text(args.nu), 'alpha': _text(args.alpha), 'nmax': args.nmax,
                  'bits': ctx.bits}
    document = ReportDocument('verify', parameters)
    document.extend(runSuite(args.suite, ctx, grid))
    return document, None


def cmdMop(args, config, ctx):
    nu, alpha, n = args.nu, args.alpha, args.n
    if nu <= Fraction(-1, 2) or alpha <= -1 or n < 0:
        raise UsageError("need --nu > -1/2, --alpha > -1 and --n >= 0")
    parameters = {'type': args.mopType, 'check': args.check, 'nu': str(nu), 'alpha': str(alpha), 'n': n}
    document = ReportDocument('mop', parameters)
    nstr = ctx.mp.nstr
    if args.check == 't5':
        if not (0 <= nu < Fraction(1, 2)) or alpha <= 0 or n < 1:
            raise UsageError("t5 needs 0 <= --nu < 1/2, --alpha > 0 and --n >= 1")
        document.add(theorem5Check(nu, alpha, n, ctx))
        return document, None
    if args.check == 't6':
        if nu < 0:
            raise UsageError("t6 needs --nu >= 0")
        document.add(theorem6Check(nu, alpha, n, ctx))
        return document, None
    if args.check == 't4':
        report, eigenvalues = theorem4RankCheck(nu, (n, max(n - 1, 0), max(n - 1, 0)), ctx)
        document.add(report)
        document.payload['eigenvalues'] = [nstr(e, 15) for e in eigenvalues]
        return document, None
    if args.mopType == '1':
        if n < 1:
            raise UsageError("type 1 needs --n >= 1")
        solution = type1Solve(nu, alpha, (n, n - 1, n - 1), ctx)
        document.add(type1ResidualCheck(solution, ctx))
        rows = [(name, k, nstr(c, 40)) for name, poly in zip('ABC', solution.polynomials)
                for k, c in enumerate(poly.coeffs)]
    else:
        solution = type2Solve(nu, alpha, (n + 1, n, n + 1), ctx)
        document.add(type2ResidualCheck(solution, ctx))
        rows = [('p', k, nstr(c, 40)) for k, c in enumerate(solution.poly.coeffs)]
    document.payload['solution'] = solution.toDict(nstr)
    return document, pd.DataFrame(rows, columns=['polynomial', 'k', 'coefficient'])


def cmdHistory(args, config, ctx):
    database = DatabaseManager(config.dbPath)
    try:
        if args.runId is not None:
            stats = database.getRunStatistics(args.runId)
            document = ReportDocument('history', {'runId': args.runId}, payload=stats)
            table = pd.DataFrame([dict(eq=eq, **row) for eq, row in stats['byEquation'].items()])
        else:
            table = pd.DataFrame(database.getRecentRuns(args.limit))
            document = ReportDocument('history', {'limit': args.limit},
                                      payload={'runs': table.to_dict(orient='records')})
    finally:
        database.close()
    return document, table


COMMANDS = {
    'weights': cmdWeights,
    'ortho': cmdOrtho,
    'verify': cmdVerify,
    'mop': cmdMop,
    'history': cmdHistory,
}


def _text(value):
    return None if value is None else str(value)


def recordRun(config, document, ctx):
    database = DatabaseManager(config.dbPath)
    try:
        runId = database.startVerificationRun(document.command, document.parameters, ctx)
        for report in document.results:
            database.logCheck(runId, report)
        database.endVerificationRun(runId, document.overallPass, document.wallTime)
    finally:
        database.close()
    return runId


def writeOutput(config, document, table, ctx):
    if config.outputFormat == 'csv':
        if table is None:
            raise UsageError("this command has no tabular output; use json or text")
        text = table.to_csv(index=False)
    elif config.outputFormat == 'text':
        text = document.toText(ctx.mp.nstr) + "\n"
    else:
        text = document.toJson(ctx.mp.nstr) + "\n"
    if config.outputPath:
        with open(config.outputPath, 'w', encoding='utf-8') as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    """Entry point; returns the process exit code"""
    parser = buildParser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PASS if exc.code in (0, None) else EXIT_USAGE
    configureLogging(args)
    try:
        config = RunConfig.fromArgs(args)
        ctx = config.toContext()
        started = time.perf_counter()
        document, table = COMMANDS[args.command](args, config, ctx)
        document.wallTime = time.perf_counter() - started
        if args.command == 'verify' and config.record:
            runId = recordRun(config, document, ctx)
            logger.info("verification run %d recorded in %s", runId, config.dbPath)
        writeOutput(config, document, table, ctx)
    except (UsageError, ConfigurationError) as exc:
        print(f"macOrthoSim: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, sqlite3.Error) as exc:
        logger.error("i/o failure: %s", exc)
        print(f"macOrthoSim: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalError, PolynomialityError) as exc:
        logger.error("numerical failure: %s", exc)
        print(f"macOrthoSim: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_PASS if document.overallPass else EXIT_FAILED


if __name__ == '__main__':
    sys.exit(main())
