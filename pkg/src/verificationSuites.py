"""
Verification suites
Named collections of identity checks over fixed parameter grids; report
ordering is fixed by the suite definition
"""

import logging
from dataclasses import dataclass, replace
from fractions import Fraction

from compositionFramework import (LaplacePair, MeasureKind, MeasureTag,
                                  hermiteNormalizationNote, innerProductCheck,
                                  prudnikovCheck, thetaPowerApply,
                                  thetaPowerQuadrature, thetaSeedCheck,
                                  verifyIdentity, viskovCheck)
from multiOrthoPoly import (momentVector, remark3Check, theorem4RankCheck,
                            theorem5Check, theorem6Check, type1ResidualCheck,
                            type1Solve, type2ResidualCheck, type2Solve,
                            weightVector)
from orthoPoly import (DEFAULT_CRAMER_TOL, DEFAULT_RODRIGUES_TOL,
                       CoefficientRoute, coeffC, coeffD, coeffDReport,
                       coeffDScaled, corollary2Check, cramerBasis,
                       cramerConstruct, cramerRecurrenceCheck,
                       fCoefficientCheck, generatingCheck, gramConstruct,
                       laguerreSeriesCheck, moment, momentCheck,
                       momentQuadrature, normalizationCheck,
                       orthonormalityCheck, prop6Check, recurrenceCheck,
                       rodriguesCheck, rodriguesH, rodriguesProjection,
                       rodriguesSpecialCases, routeAgreementCheck,
                       theorem1Check)
from polynomial import Polynomial
from rhoCalculus import (corollary1Check, odeCheck, productBetaCheck,
                         productDerivativeCheck, reductionCrossCheck)
from specialFunctions import (WeightKind, WeightTag, besselK, besselKIntegral,
                              hermiteKernel, hermiteKernelMellin,
                              laguerreRepCheck, mbRhoProduct, mbRhoSquared,
                              rho, rhoProduct, rhoSquared, tricomiU,
                              tricomiUIntegral, upperIncompleteGamma,
                              upperIncompleteGammaIntegral)
from verificationReport import VerificationReport

logger = logging.getLogger(__name__)

QUARTER = Fraction(1, 4)
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class SuiteGrid:
    """Default parameter grid of the verification suites"""
    nus: tuple = (QUARTER, HALF, Fraction(3, 2))
    integerNus: tuple = (0, 1)
    prop6Nus: tuple = (QUARTER, 1)
    cramerNus: tuple = (QUARTER, HALF)
    alphas: tuple = (0, HALF)
    xs: tuple = ("0.5", "1", "2", "5")
    gramMax: int = 4
    cramerMax: int = 4
    momentMax: int = 8
    mopMax: int = 2
    mopNu: object = QUARTER
    cramerTol: float = DEFAULT_CRAMER_TOL
    rodriguesTol: float = DEFAULT_RODRIGUES_TOL

    def narrowed(self, nu=None, nMax=None, alpha=None):
        """Restrict the grid to one nu / alpha and cap the degrees"""
        grid = self
        if nu is not None:
            grid = replace(grid, nus=(nu,), integerNus=(), prop6Nus=(nu,), cramerNus=(nu,), mopNu=nu)
        if alpha is not None:
            grid = replace(grid, alphas=(alpha,))
        if nMax is not None:
            grid = replace(grid, gramMax=nMax, cramerMax=min(nMax, grid.cramerMax),
                           mopMax=min(nMax, grid.mopMax))
        return grid


def specialSuite(ctx, grid):
    """Closed forms and independent routes of the special functions"""
    mp = ctx.mp
    reports = []
    for x in ("0.1", "1", "10"):
        xm = ctx.mpf(x)
        reports.append(VerificationReport.fromValues(
            f"rho_half_closed_form[x={x}]", "2.2", rho(HALF, xm, ctx),
            mp.sqrt(mp.pi) * mp.exp(-2 * mp.sqrt(xm)), ctx))
    for nu in grid.nus + grid.integerNus:
        for x in grid.xs:
            xm = ctx.mpf(x)
            reports.append(VerificationReport.fromValues(
                f"besselK_integral[nu={nu},z={x}]", "2.2", besselK(nu, xm, ctx), besselKIntegral(nu, xm, ctx), ctx))
        if nu > 0:
            for n in range(3):
                reports.append(laguerreRepCheck(nu, n, 1, ctx))
    for a, b, x in ((Fraction(3, 2), HALF, "1"), (2, Fraction(5, 4), "0.5"), (1, 0, "2")):
        reports.append(VerificationReport.fromValues(
            f"tricomiU_integral[a={a},b={b},x={x}]", "4.14", tricomiU(a, b, x, ctx),
            tricomiUIntegral(a, b, x, ctx), ctx))
    for a, z in ((-QUARTER, "1"), (HALF, "2"), (-Fraction(3, 2), "0.5")):
        reports.append(VerificationReport.fromValues(
            f"incomplete_gamma_integral[a={a},z={z}]", "4.13", upperIncompleteGamma(a, z, ctx),
            upperIncompleteGammaIntegral(a, z, ctx), ctx))
    for nu in grid.cramerNus:
        for x in ("0.5", "1", "5"):
            for label, eq, viaMellin, direct in (("square", "3.9", mbRhoSquared, rhoSquared),
                                                 ("product", "3.8", mbRhoProduct, rhoProduct)):
                value = viaMellin(nu, x, ctx).value
                expected = direct(nu, x, ctx)
                reports.append(VerificationReport.fromResidual(
                    f"mellin_{label}[nu={nu},x={x}]", eq, abs(value - expected) / abs(expected), ctx,
                    computed=value, expected=expected, note="relative residual"))
    for x in ("0.5", "1", "2"):
        reports.append(VerificationReport.fromValues(
            f"hermite_kernel_mellin[x={x}]", "2.12", hermiteKernelMellin(x, ctx).value, hermiteKernel(x, ctx), ctx))
    return reports


def momentsSuite(ctx, grid):
    mp = ctx.mp
    reports = []
    for nu in grid.nus:
        for mu in range(grid.momentMax + 1):
            reports.append(momentCheck(WeightKind(WeightTag.RHO_SQ, nu), mu, ctx))
        for mu in range(3):
            reports.append(momentCheck(WeightKind(WeightTag.RHO_PROD, nu), mu, ctx))
            reports.append(momentCheck(WeightKind(WeightTag.RHO_SQ_SHIFT, nu), mu, ctx))
        for alpha in grid.alphas:
            if alpha:
                reports.append(momentCheck(WeightKind(WeightTag.RHO, nu, alpha), 1, ctx))
    square = WeightKind(WeightTag.RHO_SQ, HALF)
    product = WeightKind(WeightTag.RHO_PROD, HALF)
    reports.append(VerificationReport.fromValues("moment_anchor_square[mu=0]", "4.3", moment(square, 0, ctx),
                                                 mp.pi / 8, ctx))
    reports.append(VerificationReport.fromValues("moment_anchor_square[mu=1]", "4.3", moment(square, 1, ctx),
                                                 3 * mp.pi / 64, ctx))
    reports.append(VerificationReport.fromValues("moment_anchor_product[mu=0]", "3.8", moment(product, 0, ctx),
                                                 mp.pi / 8, ctx))
    reports.append(VerificationReport.fromValues("moment_anchor_product[mu=1]", "3.8", moment(product, 1, ctx),
                                                 9 * mp.pi / 128, ctx))
    return reports


def odeSuite(ctx, grid):
    reports = []
    for nu in grid.nus:
        for x in grid.xs:
            reports.extend(odeCheck(nu, x, ctx))
            reports.append(productDerivativeCheck(nu, x, ctx))
        reports.append(productBetaCheck(nu, 1, ctx))
    for j in range(6):
        for nu in (HALF, Fraction(3, 2)):
            diffP, diffQ = reductionCrossCheck(j, nu)
            reports.append(VerificationReport.exact(f"reduction_polynomial[j={j},nu={nu}]", "3.4",
                                                    (diffP, diffQ), (0, 0), ctx))
    return reports


def corollary1Suite(ctx, grid):
    return [corollary1Check(nu, x, ctx) for nu in grid.nus for x in grid.xs]


def orthonormalitySuite(ctx, grid):
    """Gram-route bases: orthonormality, recurrence and normalization"""
    reports = []
    for nu in grid.nus:
        basis = gramConstruct(WeightKind(WeightTag.RHO_SQ, nu), grid.gramMax, ctx)
        reports.extend(orthonormalityCheck(basis, ctx))
        reports.extend(recurrenceCheck(basis, ("0.5", "2"), ctx))
        for n in range(1, grid.gramMax + 1):
            reports.append(normalizationCheck(basis, n, ctx))
    for nu in grid.cramerNus:
        product = gramConstruct(WeightKind(WeightTag.RHO_PROD, nu), 2, ctx)
        reports.extend(orthonormalityCheck(product, ctx))
    return reports


def routesSuite(ctx, grid):
    """Determinant construction against the Gram construction"""
    mp = ctx.mp
    reports = []
    for nu in grid.cramerNus:
        reports.extend(routeAgreementCheck(nu, grid.cramerMax, ctx, grid.cramerTol))
        cramer = cramerBasis(nu, grid.cramerMax - 1, ctx, grid.cramerTol)
        gram = gramConstruct(WeightKind(WeightTag.RHO_SQ, nu), grid.cramerMax, ctx)
        reports.extend(cramerRecurrenceCheck(cramer, gram, ctx, grid.cramerTol))
        for k in range(3):
            for m in range(2):
                reports.append(fCoefficientCheck(nu, k, m, ctx))
        for n, r in ((0, 0), (1, 2), (2, 1)):
            reports.append(VerificationReport.fromValues(
                f"c_coefficient_routes[nu={nu},n={n},r={r}]", "4.23",
                coeffC(ctx.mpf(nu), n, r, ctx, CoefficientRoute.BETA_SUM),
                coeffC(ctx.mpf(nu), n, r, ctx, CoefficientRoute.QUADRATURE), ctx))
        reports.append(laguerreSeriesCheck(nu, 0, 1, ctx))
        reports.extend(dCoefficientReports(nu, ctx))
    half = ctx.mpf(HALF)
    reports.append(VerificationReport.fromValues("c_coefficient_anchor[nu=1/2]", "4.23",
                                                 coeffC(half, 0, 0, ctx), half, ctx))
    return reports


def dCoefficientReports(nu, ctx):
    """Oracle values of d_{m,r} and the printed hypergeometric form per pair"""
    nuM = ctx.mpf(nu)
    gammaUp = ctx.mp.gamma(nuM + 2)
    tag = f"[nu={nu}]"
    reports = [
        VerificationReport.fromValues("d_oracle_00" + tag, "4.25", coeffD(nu, 0, 0, ctx), ctx.mp.gamma(1 + nuM), ctx),
        VerificationReport.fromValues("d_oracle_10" + tag, "4.25", coeffD(nu, 1, 0, ctx), -gammaUp, ctx),
        VerificationReport.fromValues("d_oracle_11" + tag, "4.25", coeffD(nu, 1, 1, ctx), gammaUp * (nuM + 3), ctx),
    ]
    for m in range(5):
        for r in range(2 * m + 1, 11):
            reports.append(VerificationReport.exact(f"d_vanishes_above_2m[nu={nu},m={m},r={r}]", "4.25",
                                                    coeffDScaled(nu, m, r), 0, ctx))
    for m in range(3):
        for r in range(2 * m + 1):
            reports.append(coeffDReport(nu, m, r, ctx))
    return reports


def prop6Suite(ctx, grid):
    reports = []
    for nu in grid.prop6Nus:
        basis = gramConstruct(WeightKind(WeightTag.RHO_SQ, nu), grid.gramMax, ctx)
        for n in range(grid.gramMax + 1):
            reports.extend(prop6Check(nu, n, ctx, basis))
    return reports


def theorem1Suite(ctx, grid):
    reports = []
    for nu in grid.cramerNus:
        basis = gramConstruct(WeightKind(WeightTag.RHO_SQ, nu), grid.cramerMax, ctx)
        for n in range(grid.cramerMax + 1):
            for m in range(n + 1):
                reports.append(theorem1Check(nu, n, m, ctx, basis))
    return reports


def rodriguesSuite(ctx, grid):
    """Rodrigues-type representation, its type-1 form, the h coefficients and the generating function"""
    reports = []
    for r in range(4):
        for nu in (QUARTER, HALF, Fraction(2)):
            for k, (computed, expected) in enumerate(rodriguesSpecialCases(r, nu)):
                reports.append(VerificationReport.exact(f"rodrigues_coefficient_case[r={r},nu={nu},case={k}]",
                                                        "4.41", computed, expected, ctx))
    for nu in grid.cramerNus:
        basis = gramConstruct(WeightKind(WeightTag.RHO_SQ, nu), grid.cramerMax, ctx)
        for n in range(grid.cramerMax + 1):
            for x in ("0.5", "2"):
                reports.append(rodriguesCheck(nu, n, x, ctx, basis=basis, rodriguesTol=grid.rodriguesTol))
                reports.append(corollary2Check(nu, n, x, ctx, basis=basis, rodriguesTol=grid.rodriguesTol))
        for n in range(1, min(grid.cramerMax, 2) + 1):
            sub = gramConstruct(WeightKind(WeightTag.RHO_SQ, nu), n, ctx)
            for k in range(2 * n + 1):
                reports.append(VerificationReport.fromValues(
                    f"rodrigues_projection[nu={nu},n={n},k={k}]", "4.37",
                    rodriguesProjection(nu, sub.polynomial(n), k, ctx), rodriguesH(nu, n, k, ctx, basis=sub), ctx))
            system, _ = cramerConstruct(nu, n, ctx, grid.cramerTol, sub)
            reports.extend(rodriguesSystemReports(nu, n, system, sub, ctx, grid))
        reports.extend(generatingCheck(nu, 1, "0.1", grid.cramerMax, ctx, basis))
    return reports


def rodriguesSystemReports(nu, n, system, basis, ctx, grid):
    """h_{2n,k} from the determinants D_{n,r} against the coefficient form, then both representations"""
    reports = [VerificationReport.fromValues(
        f"rodrigues_h_determinants[nu={nu},n={n},k={k}]", "4.40",
        rodriguesH(nu, n, k, ctx, system=system), rodriguesH(nu, n, k, ctx, basis=basis), ctx, grid.cramerTol)
        for k in range(2 * n + 1)]
    reports.append(rodriguesCheck(nu, n, "1", ctx, system=system, rodriguesTol=grid.rodriguesTol))
    reports.append(corollary2Check(nu, n, "1", ctx, system=system, basis=basis, rodriguesTol=grid.rodriguesTol))
    return reports


COMPOSITION_POLYS = ((1,), (0, 1), (0, 0, 1))
COMPOSITION_PSI = (0, HALF)


def compositionSuite(ctx, grid):
    reports = []
    measures = (MeasureKind(MeasureTag.LAGUERRE, nu=HALF), MeasureKind(MeasureTag.HERMITE),
                MeasureKind(MeasureTag.JACOBI, alpha=0, beta=1))
    for power in COMPOSITION_PSI:
        pair = LaplacePair.power(power)
        for k in range(5):
            reports.append(VerificationReport.exact(f"theta_seed[psi=x^{power},k={k}]", "1.6",
                                                    all(thetaSeedCheck(j, k, pair) for j in range(4)), True, ctx))
            reports.append(VerificationReport.exact(f"viskov[psi=x^{power},n={k}]", "1.3",
                                                    viskovCheck(k, pair), True, ctx))
        reports.append(VerificationReport.fromValues(
            f"theta_quadrature[psi=x^{power},k=2]", "1.6", thetaPowerQuadrature(2, pair, 1, ctx),
            thetaPowerApply(2, pair, 1, ctx), ctx))
        for measure in measures:
            for i, pCoeffs in enumerate(COMPOSITION_POLYS):
                for qCoeffs in COMPOSITION_POLYS[:i + 1]:
                    reports.append(verifyIdentity(measure, pair, Polynomial(pCoeffs), Polynomial(qCoeffs), ctx))
            reports.append(innerProductCheck(measure, pair, Polynomial((1, -2, 1)), ctx))
        reports.append(hermiteNormalizationNote(measures[1], pair, Polynomial((1,)), Polynomial((1,)), ctx))
    for nu in (0, HALF):
        for alpha in grid.alphas:
            basis = gramConstruct(WeightKind(WeightTag.RHO, nu, alpha), 1, ctx)
            for n in range(2):
                for m in range(n + 1):
                    reports.append(prudnikovCheck(nu, alpha, n, m, ctx, basis))
    return reports


def mopSuite(ctx, grid):
    """Type-1 and type-2 solutions with their recurrences and the independence check"""
    nu = grid.mopNu
    reports = []
    for alpha in grid.alphas:
        for mu in range(3):
            closed = momentVector(nu, alpha, mu, ctx)
            for weight, value in zip(weightVector(nu, alpha), closed):
                reports.append(VerificationReport.fromValues(
                    f"moment_vector[{weight.tag.value},nu={nu},alpha={alpha},mu={mu}]", "4.3",
                    momentQuadrature(weight, mu, ctx), value, ctx))
        for n in range(1, grid.mopMax + 1):
            for degrees in ((n, n - 1, n - 1), (n, n - 1, n)):
                reports.append(type1ResidualCheck(type1Solve(nu, alpha, degrees, ctx), ctx))
        for n in range(grid.mopMax):
            for index in ((n + 1, n, n + 1), (n + 1, n, n)):
                reports.append(type2ResidualCheck(type2Solve(nu, alpha, index, ctx), ctx))
    if 0 <= nu < HALF:
        for n in range(1, grid.mopMax + 1):
            reports.append(theorem5Check(nu, 1, n, ctx))
    else:
        logger.info("alpha-level recurrence skipped for nu=%s (needs 0 <= nu < 1/2)", nu)
    if nu >= 0:
        for n in range(min(grid.mopMax, 2)):
            for alpha in grid.alphas:
                reports.append(theorem6Check(nu, alpha, n, ctx))
    reports.append(theorem4RankCheck(nu, (1, 0, 0), ctx)[0])
    reports.append(theorem4RankCheck(nu, (1, 1, 1), ctx)[0])
    return reports


def remark3Suite(ctx, grid):
    return [remark3Check(("0.1", "1", "4"), ctx)]


SUITES = {
    'special': specialSuite,
    'moments': momentsSuite,
    'ode': odeSuite,
    'corollary1': corollary1Suite,
    'orthonormality': orthonormalitySuite,
    'routes': routesSuite,
    'prop6': prop6Suite,
    'theorem1': theorem1Suite,
    'rodrigues': rodriguesSuite,
    'composition': compositionSuite,
    'mop': mopSuite,
    'remark3': remark3Suite,
}

SUITE_NAMES = tuple(SUITES) + ('all',)


def runSuite(name, ctx, grid=None):
    """
    Run a named suite (or 'all', every suite in definition order).

    Returns:
        list of VerificationReport
    """
    grid = grid or SuiteGrid()
    if name == 'all':
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    reports = []
    for suiteName in names:
        logger.info("running suite %s at %d bits", suiteName, ctx.bits)
        reports.extend(SUITES[suiteName](ctx, grid))
    return reports
