"""
Orthonormal polynomials for the Macdonald-type weights
Closed-form moments, the Hankel (Gram) construction, the determinant (Cramer)
construction through Laguerre-expansion coefficients, recurrence coefficients,
Rodrigues-type representations and the generating function, together with the
identity checks that tie them together
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import comb, factorial

from polynomial import Polynomial
from precisionCore import (DomainError, NonvanishingError, PositivityLossError,
                           RouteMismatchError, SingularSystemError, beta,
                           gamma, gammaRatio, pochhammer)
from quadrature import DecayClass, EndpointProfile, integrateZeroInf
from rhoCalculus import diffPower, reductionPolynomial
from specialFunctions import (WeightKind, WeightTag, hyp3f2Terminating,
                              laguerre, laguerreCoefficients, rho, rhoOrZero,
                              tricomiU)
from verificationReport import VerificationReport

logger = logging.getLogger(__name__)

DEFAULT_CRAMER_TOL = 1e-12
DEFAULT_RODRIGUES_TOL = 1e-10
CRAMER_DEGREE_CAP = 4
LAGUERRE_SERIES_TERMS = 30


class ConstructionRoute(Enum):
    GRAM = "gram"
    CRAMER = "cramer"


class CoefficientRoute(Enum):
    """How the Laguerre-expansion coefficients c_{n,r} are evaluated"""
    QUADRATURE = "quadrature"
    BETA_SUM = "beta"


# ---------------------------------------------------------------------------
# Moments
# ---------------------------------------------------------------------------

def moment(weight, mu, ctx):
    """
    Closed-form moment int_0^inf x^(mu + alphaPower) w(x) dx.

    Args:
        weight: WeightKind
        mu: real degree
        ctx: PrecisionContext

    Returns:
        the moment as a real of ctx

    Raises:
        DomainError: when a gamma argument is not positive
    """
    mp = ctx.mp
    nu = ctx.mpf(weight.nu)
    m = ctx.mpf(mu) + ctx.mpf(weight.alphaPower)
    half = mp.mpf(1) / 2
    if weight.tag is WeightTag.RHO:
        return gammaRatio([nu + m + 1, m + 1], [], ctx)
    if weight.tag is WeightTag.RHO_SQ_SHIFT:
        nu += 1
    if weight.tag in (WeightTag.RHO_SQ, WeightTag.RHO_SQ_SHIFT):
        return (2 * mp.sqrt(mp.pi) * mp.power(4, -nu - m - 1)
                * gammaRatio([m + 1 + 2 * nu, m + 1 + nu, m + 1], [m + nu + 1 + half], ctx))
    return (mp.sqrt(mp.pi) * mp.power(4, -nu - m - 1)
            * gammaRatio([m + 2 + 2 * nu, m + 1 + nu, m + 1], [m + nu + 1 + half], ctx))


def momentQuadrature(weight, mu, ctx):
    """The same moment by direct quadrature; the oracle for moment()"""
    mu = ctx.mpf(mu)
    result = integrateZeroInf(lambda x: x ** mu * weight.evaluate(x, ctx),
                              weight.profile(float(mu)), ctx, label="momentQuadrature")
    return result.value


@dataclass(frozen=True)
class MomentTable:
    weight: WeightKind
    values: tuple

    def __post_init__(self):
        if any(v <= 0 for v in self.values):
            raise PositivityLossError(f"non-positive moment in table for {self.weight}")

    def __getitem__(self, degree):
        return self.values[degree]

    def __len__(self):
        return len(self.values)


def momentTable(weight, count, ctx):
    return MomentTable(weight, tuple(moment(weight, mu, ctx) for mu in range(count)))


def momentCheck(weight, mu, ctx):
    closed = moment(weight, mu, ctx)
    return VerificationReport.fromValues(
        f"moment[{weight.tag.value},nu={weight.nu},alpha={weight.alphaPower},mu={mu}]", "4.3",
        momentQuadrature(weight, mu, ctx), closed, ctx)


# ---------------------------------------------------------------------------
# Orthonormal basis: Gram route
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrthoBasis:
    """
    Orthonormal P_0..P_degreeMax for a weight.

    coeffs[n] is P_n with a_{n,n} > 0; recurA[n] = A_n (recurA[0] = 0) and
    recurB[n] = B_n of x P_n = A_{n+1} P_{n+1} + B_n P_n + A_n P_{n-1}.
    """
    weight: WeightKind
    degreeMax: int
    coeffs: tuple
    recurA: tuple
    recurB: tuple
    route: ConstructionRoute = ConstructionRoute.GRAM

    @property
    def nu(self):
        return self.weight.nu

    def polynomial(self, n):
        return self.coeffs[n]

    def evaluate(self, n, x):
        return self.coeffs[n](x)

    def leading(self, n):
        return self.coeffs[n].coefficient(n)

    def subleading(self, n):
        return self.coeffs[n].coefficient(n - 1) if n > 0 else 0

    def toDict(self, nstr, digits=30):
        return {
            'weight': self.weight.tag.value,
            'nu': str(self.weight.nu),
            'alphaPower': str(self.weight.alphaPower),
            'route': self.route.value,
            'polynomials': [p.toStrings(nstr, digits) for p in self.coeffs],
            'A': [nstr(a, digits) for a in self.recurA],
            'B': [nstr(b, digits) for b in self.recurB],
        }


def _hankel(moments, size, ctx):
    mp = ctx.mp
    matrix = mp.matrix(size, size)
    for i in range(size):
        for j in range(size):
            matrix[i, j] = moments[i + j]
    return matrix


def gramConstruct(weight, nMax, ctx):
    """
    Orthonormalize 1, x, ..., x^nMax against the weight through an
    equilibrated Cholesky factorization of the Hankel moment matrix.

    Args:
        weight: WeightKind (every tag is supported)
        nMax: highest degree
        ctx: PrecisionContext

    Returns:
        OrthoBasis with route GRAM

    Raises:
        PositivityLossError: when a relative pivot falls below 2^(-bits/2)
    """
    mp = ctx.mp
    size = nMax + 1
    moments = momentTable(weight, 2 * nMax + 2, ctx)
    hankel = _hankel(moments, size, ctx)
    scale = [1 / mp.sqrt(hankel[i, i]) for i in range(size)]
    equilibrated = mp.matrix(size, size)
    for i in range(size):
        for j in range(size):
            equilibrated[i, j] = scale[i] * hankel[i, j] * scale[j]
    try:
        lower = mp.cholesky(equilibrated)
    except ValueError as exc:
        raise PositivityLossError(f"Hankel matrix lost positivity at {ctx.bits} bits: {exc}") from exc
    for j in range(size):
        if lower[j, j] ** 2 < ctx.pivotFloor:
            raise PositivityLossError(
                f"Hankel pivot {j} is {mp.nstr(lower[j, j] ** 2, 5)}, below 2^-{ctx.bits // 2}")
    inverse = mp.inverse(lower)
    coeffs = []
    for n in range(size):
        coeffs.append(Polynomial(tuple(inverse[n, k] * scale[k] for k in range(n + 1))))

    recurA = [mp.zero] + [coeffs[n - 1].coefficient(n - 1) / coeffs[n].coefficient(n) for n in range(1, size)]
    recurB = []
    for n in range(size):
        c = coeffs[n].coeffs
        recurB.append(mp.fsum(c[i] * c[j] * moments[i + j + 1] for i in range(n + 1) for j in range(n + 1)))
    logger.debug("gram basis for %s up to degree %d built", weight, nMax)
    return OrthoBasis(weight, nMax, tuple(coeffs), tuple(recurA), tuple(recurB), ConstructionRoute.GRAM)


def weightedIntegral(weight, poly, ctx, extraPower=0, label="weightedIntegral"):
    """int_0^inf poly(x) x^extraPower w(x) dx by quadrature"""
    result = integrateZeroInf(lambda x: poly(x) * x ** extraPower * weight.evaluate(x, ctx),
                              weight.profile(extraPower), ctx, label=label)
    return result.value


def orthonormalityCheck(basis, ctx, degreeMax=None):
    """Quadrature residuals of int P_n P_m w dx - delta_{n,m}"""
    top = basis.degreeMax if degreeMax is None else degreeMax
    reports = []
    for n in range(top + 1):
        for m in range(n + 1):
            value = weightedIntegral(basis.weight, basis.polynomial(n) * basis.polynomial(m), ctx,
                                     label="orthonormalityCheck")
            reports.append(VerificationReport.fromValues(
                f"orthonormality[{basis.weight.tag.value},nu={basis.nu},n={n},m={m}]", "4.1",
                value, 1 if n == m else 0, ctx))
    return reports


def normalizationCheck(basis, n, ctx):
    """int P_n w x^m = 0 for m < n and int P_n w x^n = 1/a_{n,n}"""
    poly = basis.polynomial(n)
    parts = []
    for m in range(n):
        parts.append(VerificationReport.fromValues(
            f"lower_moment_orthogonality[nu={basis.nu},n={n},m={m}]", "4.2",
            weightedIntegral(basis.weight, poly, ctx, m), 0, ctx))
    parts.append(VerificationReport.fromValues(
        f"leading_normalization[nu={basis.nu},n={n}]", "4.31",
        weightedIntegral(basis.weight, poly, ctx, n), 1 / basis.leading(n), ctx))
    return VerificationReport.combine(f"normalization[nu={basis.nu},n={n}]", "4.2/4.31", parts)


def recurrenceCheck(basis, xs, ctx):
    """Three-term recurrence residual relative to the largest term, plus the leading-coefficient forms"""
    mp = ctx.mp
    reports = []
    for n in range(basis.degreeMax):
        for x in xs:
            x = ctx.mpf(x)
            terms = [x * basis.evaluate(n, x), -basis.recurA[n + 1] * basis.evaluate(n + 1, x),
                     -basis.recurB[n] * basis.evaluate(n, x)]
            if n > 0:
                terms.append(-basis.recurA[n] * basis.evaluate(n - 1, x))
            scale = max(abs(t) for t in terms)
            reports.append(VerificationReport.fromResidual(
                f"three_term_recurrence[nu={basis.nu},n={n},x={mp.nstr(x, 6)}]", "4.4",
                mp.fsum(terms) / scale, ctx))
        ratioB = basis.subleading(n) / basis.leading(n) - basis.subleading(n + 1) / basis.leading(n + 1)
        reports.append(VerificationReport.fromValues(
            f"recurrence_B_from_coefficients[nu={basis.nu},n={n}]", "4.4",
            ratioB, basis.recurB[n], ctx))
    return reports


# ---------------------------------------------------------------------------
# Laguerre-expansion coefficients
# ---------------------------------------------------------------------------

def coeffDScaled(nu, m, r):
    """
    d_{m,r} / Gamma(nu+m+1), exact in the arithmetic of nu.

    Expands L_m^nu L_r^nu into monomials and integrates t^(nu+m+j) e^(-t) termwise.
    """
    product = laguerreCoefficients(m, nu) * laguerreCoefficients(r, nu)
    return sum(c * pochhammer(nu + m + 1, j) for j, c in enumerate(product.coeffs))


def coeffD(nu, m, r, ctx):
    """d_{m,r} = int_0^inf t^(nu+m) e^(-t) L_m^nu(t) L_r^nu(t) dt"""
    nu = ctx.mpf(nu)
    if nu <= -1:
        raise DomainError(f"coeffD needs nu > -1, got {nu}")
    return gamma(nu + m + 1, ctx) * coeffDScaled(nu, m, r)


def coeffDPrinted(nu, m, r, ctx):
    """(-1)^r / r! (1+nu)_r Gamma(1+nu+m) 3F2(-r, nu+m+1, m+1; 1+nu, 1; 1)"""
    nu = ctx.mpf(nu)
    return ((-1) ** r * pochhammer(1 + nu, r, ctx) * gamma(1 + nu + m, ctx) / factorial(r)
            * hyp3f2Terminating(r, nu + m + 1, m + 1, 1 + nu, 1, ctx))


def coeffDReport(nu, m, r, ctx):
    """Direct d_{m,r} against the printed hypergeometric form; a difference is recorded, never failed"""
    direct = coeffD(nu, m, r, ctx)
    printed = coeffDPrinted(nu, m, r, ctx)
    agrees = ctx.agrees(printed, direct)
    if not agrees:
        logger.warning("printed d-coefficient form differs at (m, r) = (%d, %d)", m, r)
    note = "printed hypergeometric form agrees" if agrees else "printed hypergeometric form differs"
    return VerificationReport.advisory(f"d_coefficient[nu={nu},m={m},r={r}]", "4.25",
                                       direct, printed, ctx, note)


@lru_cache(maxsize=1024)
def coeffC(nu, n, r, ctx, route=CoefficientRoute.QUADRATURE):
    """
    c_{n,r} = r! n! (1+nu)_n / Gamma(1+nu+r) int t^(2nu+n) e^(-t) L_r^nu(t) U(nu+n+1, 1+nu, t) dt.

    The BETA_SUM route integrates each Laguerre monomial exactly through the
    integral form of U, giving a finite sum of Beta values.
    """
    mp = ctx.mp
    nu = ctx.mpf(nu)
    if nu <= -mp.mpf(1) / 2:
        raise DomainError(f"coeffC needs nu > -1/2, got {nu}")
    prefactor = factorial(r) * factorial(n) * pochhammer(1 + nu, n, ctx) / gamma(1 + nu + r, ctx)
    if route is CoefficientRoute.BETA_SUM:
        lag = laguerreCoefficients(r, nu, ctx)
        a = nu + n + 1
        total = mp.fsum(c * gamma(2 * nu + n + j + 1, ctx) * beta(a, nu + n + j + 1, ctx)
                        for j, c in enumerate(lag.coeffs))
        return prefactor * total / gamma(a, ctx)
    sigma = float(min(nu + n, 2 * nu + n))
    profile = EndpointProfile(sigma, logAtZero=(nu == 0), decay=DecayClass.EXPONENTIAL)

    def integrand(t):
        return t ** (2 * nu + n) * mp.exp(-t) * laguerre(r, nu, t, ctx) * tricomiU(nu + n + 1, 1 + nu, t, ctx)

    return prefactor * integrateZeroInf(integrand, profile, ctx, label="coeffC").value


def laguerreSeriesCheck(nu, n, t, ctx, terms=LAGUERRE_SERIES_TERMS):
    """
    Partial sum of the Laguerre series of
    F_n(t) = n! Gamma(nu+n+1)/Gamma(nu+1) t^(nu+n) U(nu+n+1, 1+nu, t)
    compared with F_n(t); advisory, the series converges slowly
    """
    mp = ctx.mp
    nu = ctx.mpf(nu)
    t = ctx.mpf(t)
    partial = mp.fsum(coeffC(nu, n, r, ctx, CoefficientRoute.BETA_SUM) * laguerre(r, nu, t, ctx)
                      for r in range(terms))
    exact = (factorial(n) * gammaRatio([nu + n + 1], [nu + 1], ctx)
             * t ** (nu + n) * tricomiU(nu + n + 1, 1 + nu, t, ctx))
    return VerificationReport.advisory(
        f"laguerre_series[nu={mp.nstr(nu, 6)},n={n},t={mp.nstr(t, 6)},terms={terms}]", "4.22",
        partial, exact, ctx, f"partial sum of {terms} terms")


# ---------------------------------------------------------------------------
# Orthonormal basis: Cramer route
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CramerSystem:
    """
    Determinant data for degree n.

    fMatrix[k][m] = f_{k,m} (k = 0..n, m = 0..n-1); determinant D_n; Dk[k] = D_{n,k}
    with Dk[0] = -D_n; a0 the free coefficient; hadamardRatio the conditioning
    measure |D_n| / prod of column norms.
    """
    nu: object
    n: int
    fMatrix: tuple
    determinant: object
    Dk: tuple
    a0: object
    hadamardRatio: object
    polynomial: Polynomial


def fCoefficient(nu, k, m, ctx, cRoute=CoefficientRoute.QUADRATURE):
    """f_{k,m} = sum_{r <= 2m} c_{k,r} d_{m,r}"""
    return ctx.mp.fsum(coeffC(nu, k, r, ctx, cRoute) * coeffD(nu, m, r, ctx) for r in range(2 * m + 1))


def fCoefficientCheck(nu, k, m, ctx, cRoute=CoefficientRoute.QUADRATURE):
    """f_{k,m} against (-1)^m m_{k+m} / (m! Gamma(1+nu)) with m_j the squared-weight moments"""
    expected = ((-1) ** m * moment(WeightKind(WeightTag.RHO_SQ, nu), k + m, ctx)
                / (factorial(m) * gamma(1 + ctx.mpf(nu), ctx)))
    return VerificationReport.fromValues(f"f_coefficient[nu={nu},k={k},m={m}]", "4.27",
                                         fCoefficient(nu, k, m, ctx, cRoute), expected, ctx)


def _columnDeterminant(columns, rows, ctx):
    mp = ctx.mp
    size = len(columns)
    if size == 0:
        return mp.one
    matrix = mp.matrix(size, size)
    for j, column in enumerate(columns):
        for i in range(rows):
            matrix[i, j] = column[i]
    return mp.det(matrix)


def cramerSystem(nu, n, ctx, cRoute=CoefficientRoute.QUADRATURE):
    """
    Build f_{k,m}, the determinants D_n, D_{n,k} and the coefficients
    a_{n,k} = -a_{n,0} D_{n,k}/D_n with a_{n,0} fixed by int P_n w x^n = 1/a_{n,n}.

    Raises:
        SingularSystemError: when |D_n| relative to its column norms drops below 2^(-bits/2)
    """
    mp = ctx.mp
    nu = ctx.mpf(nu)
    if nu <= -mp.mpf(1) / 2:
        raise DomainError(f"the Cramer construction needs nu > -1/2, got {nu}")
    f = tuple(tuple(fCoefficient(nu, k, m, ctx, cRoute) for m in range(n)) for k in range(n + 1))
    columns = [f[k] for k in range(1, n + 1)]
    determinant = _columnDeterminant(columns, n, ctx)
    norms = mp.one
    for column in columns:
        norms *= mp.sqrt(mp.fsum(v * v for v in column))
    ratio = abs(determinant) / norms if n else mp.one
    if ratio < ctx.pivotFloor:
        raise SingularSystemError(f"D_{n} is singular at working precision (Hadamard ratio {mp.nstr(ratio, 5)})")
    Dk = [-determinant]
    for k in range(1, n + 1):
        replaced = list(columns)
        replaced[k - 1] = f[0]
        Dk.append(_columnDeterminant(replaced, n, ctx))
    ratios = [-d / determinant for d in Dk]
    sqWeight = WeightKind(WeightTag.RHO_SQ, nu)
    normSum = mp.fsum(ratios[k] * moment(sqWeight, n + k, ctx) for k in range(n + 1))
    denominator = ratios[n] * normSum
    if denominator <= 0:
        raise SingularSystemError(f"normalization of degree {n} is not positive")
    a0 = mp.sqrt(1 / denominator)
    if ratios[n] < 0:
        a0 = -a0
    poly = Polynomial(tuple(a0 * rk for rk in ratios))
    logger.debug("cramer system nu=%s n=%d hadamard ratio %s", nu, n, mp.nstr(ratio, 5))
    return CramerSystem(nu, n, f, determinant, tuple(Dk), a0, ratio, poly)


def routeMismatch(computed, reference):
    """Normwise coefficient mismatch |a - g| / max |g|"""
    scale = reference.maxAbsCoefficient()
    return max(abs(computed.coefficient(k) - reference.coefficient(k))
               for k in range(reference.degree + 1)) / scale


def cramerConstruct(nu, n, ctx, cramerTol=DEFAULT_CRAMER_TOL, gramBasis=None,
                    cRoute=CoefficientRoute.QUADRATURE):
    """
    Degree-n polynomial by the determinant route, cross-checked against the Gram route.

    Returns:
        (CramerSystem, Polynomial)

    Raises:
        RouteMismatchError: when the routes disagree beyond cramerTol
    """
    if n > CRAMER_DEGREE_CAP:
        raise DomainError(f"the Cramer route is capped at degree {CRAMER_DEGREE_CAP}, got {n}")
    system = cramerSystem(nu, n, ctx, cRoute)
    if gramBasis is None or gramBasis.degreeMax < n:
        gramBasis = gramConstruct(WeightKind(WeightTag.RHO_SQ, nu), n, ctx)
    mismatch = routeMismatch(system.polynomial, gramBasis.polynomial(n))
    if mismatch > cramerTol:
        raise RouteMismatchError(f"Cramer and Gram routes differ by {ctx.mp.nstr(mismatch, 5)} at degree {n}")
    return system, system.polynomial


def cramerBasis(nu, nMax, ctx, cramerTol=DEFAULT_CRAMER_TOL, cRoute=CoefficientRoute.QUADRATURE):
    """OrthoBasis from the determinant route, recurrence coefficients from determinant ratios"""
    mp = ctx.mp
    gram = gramConstruct(WeightKind(WeightTag.RHO_SQ, nu), nMax + 1, ctx)
    systems = [cramerConstruct(nu, n, ctx, cramerTol, gram, cRoute)[0] for n in range(nMax + 2)]
    recurA = [mp.zero]
    recurB = []
    for n in range(nMax + 1):
        low, high = systems[n], systems[n + 1]
        if n + 1 <= nMax:
            recurA.append(low.a0 * high.determinant * low.Dk[n]
                          / (high.a0 * low.determinant * high.Dk[n + 1]))
        lowRatio = low.Dk[n - 1] / low.Dk[n] if n > 0 else mp.zero
        recurB.append(lowRatio - high.Dk[n] / high.Dk[n + 1])
    return OrthoBasis(WeightKind(WeightTag.RHO_SQ, nu), nMax,
                      tuple(s.polynomial for s in systems[:nMax + 1]),
                      tuple(recurA), tuple(recurB), ConstructionRoute.CRAMER)


def cramerRecurrenceCheck(cramer, gram, ctx, cramerTol=DEFAULT_CRAMER_TOL):
    """Determinant-ratio recurrence coefficients against the Gram-route ones"""
    reports = []
    for n in range(cramer.degreeMax + 1):
        if n >= 1:
            reports.append(VerificationReport.fromValues(
                f"recurrence_A_determinants[nu={cramer.nu},n={n}]", "4.35",
                cramer.recurA[n], gram.recurA[n], ctx, cramerTol))
        reports.append(VerificationReport.fromValues(
            f"recurrence_B_determinants[nu={cramer.nu},n={n}]", "4.35",
            cramer.recurB[n], gram.recurB[n], ctx, cramerTol))
    return reports


def routeAgreementCheck(nu, nMax, ctx, cramerTol=DEFAULT_CRAMER_TOL, cRoute=CoefficientRoute.QUADRATURE):
    """Coefficient-wise agreement of the Cramer and Gram routes for degrees 0..nMax"""
    gram = gramConstruct(WeightKind(WeightTag.RHO_SQ, nu), nMax, ctx)
    reports = []
    for n in range(nMax + 1):
        system = cramerSystem(nu, n, ctx, cRoute)
        mismatch = routeMismatch(system.polynomial, gram.polynomial(n))
        reports.append(VerificationReport.fromResidual(
            f"route_agreement[nu={nu},n={n}]", "4.28-4.34", mismatch, ctx, cramerTol))
    return reports


# ---------------------------------------------------------------------------
# Proposition-level identities
# ---------------------------------------------------------------------------

def _squaredPolynomialIntegral(poly, factor, sigma, ctx, label):
    result = integrateZeroInf(lambda x: poly(x) ** 2 * factor(x), EndpointProfile(sigma, decay=DecayClass.SQRT_EXPONENTIAL),
                              ctx, label=label)
    return result.value


def prop6Check(nu, n, ctx, basis=None):
    """
    Weighted norms of P_n against neighbouring products:
      int P_n^2 rho_{nu+1} rho_nu      = 1/2 + nu + n
      int P_n^2 x rho_nu rho_{nu-1}    = 1/2 + n
      int P_n^2 x^2 rho_nu rho_{nu-2}  = B_n - (nu-1)(1/2 + n)
      int P_n^2 rho_{nu+2} rho_nu      = B_n + (nu+1)(1/2 + nu + n)

    Returns:
        list of four VerificationReport
    """
    mp = ctx.mp
    nu = ctx.mpf(nu)
    if basis is None or basis.degreeMax < n:
        basis = gramConstruct(WeightKind(WeightTag.RHO_SQ, nu), n, ctx)
    poly = basis.polynomial(n)
    bn = basis.recurB[n]
    half = mp.mpf(1) / 2
    low = float(min(0, nu))
    tag = f"[nu={mp.nstr(nu, 6)},n={n}]"

    def pair(shiftA, shiftB, power):
        return lambda x: x ** power * rhoOrZero(nu + shiftA, x, ctx) * rhoOrZero(nu + shiftB, x, ctx)

    values = [
        ("prop6_product", "4.5", pair(1, 0, 0), low + min(0.0, float(nu) + 1), half + nu + n),
        ("prop6_lower_product", "4.6", pair(0, -1, 1), low + min(0.0, float(nu) - 1) + 1, half + n),
        ("prop6_second_lower", "4.7", pair(0, -2, 2), low + min(0.0, float(nu) - 2) + 2,
         bn - (nu - 1) * (half + n)),
        ("prop6_second_upper", "4.8", pair(2, 0, 0), low, bn + (nu + 1) * (half + nu + n)),
    ]
    return [VerificationReport.fromValues(name + tag, eq,
                                          _squaredPolynomialIntegral(poly, factor, sigma, ctx, name),
                                          expected, ctx)
            for name, eq, factor, sigma, expected in values]


@lru_cache(maxsize=256)
def thetaMoment(nu, p, ctx):
    """
    int_0^inf t^nu e^(-t) theta^p {t^nu e^t Gamma(-nu, t)} dt, with
    theta^p {t^nu e^t Gamma(-nu,t)} = p! Gamma(nu+p+1)/Gamma(nu+1) t^(nu+p) U(nu+p+1, 1+nu, t)
    """
    mp = ctx.mp
    nu = ctx.mpf(nu)
    prefactor = factorial(p) * gammaRatio([nu + p + 1], [nu + 1], ctx)
    sigma = float(min(nu + p, 2 * nu + p))
    profile = EndpointProfile(sigma, logAtZero=(nu == 0))
    integral = integrateZeroInf(lambda t: t ** (2 * nu + p) * mp.exp(-t) * tricomiU(nu + p + 1, 1 + nu, t, ctx),
                                profile, ctx, label="thetaMoment").value
    return prefactor * integral


def theorem1Check(nu, n, m, ctx, basis=None):
    """
    Composition orthogonality in the sense of Laguerre:
    int t^nu e^(-t) P_n(theta) P_m(theta) {t^nu e^t Gamma(-nu,t)} dt = delta_{n,m} / Gamma(1+nu)
    """
    mp = ctx.mp
    nu = ctx.mpf(nu)
    if nu <= -mp.mpf(1) / 2:
        raise DomainError(f"composition orthogonality needs nu > -1/2, got {nu}")
    top = max(n, m)
    if basis is None or basis.degreeMax < top:
        basis = gramConstruct(WeightKind(WeightTag.RHO_SQ, nu), top, ctx)
    product = basis.polynomial(n) * basis.polynomial(m)
    lhs = mp.fsum(c * thetaMoment(nu, p, ctx) for p, c in enumerate(product.coeffs))
    expected = (1 if n == m else 0) / gamma(1 + nu, ctx)
    return VerificationReport.fromValues(f"composition_orthogonality[nu={mp.nstr(nu, 6)},n={n},m={m}]",
                                         "4.11", lhs, expected, ctx)


# ---------------------------------------------------------------------------
# Rodrigues-type representations
# ---------------------------------------------------------------------------

def rodriguesHypergeometric(k, r, nu, ctx=None):
    """3F2(-k, 1+nu+r, 1+r; 1+nu, 1; 1)"""
    return hyp3f2Terminating(k, 1 + nu + r, 1 + r, 1 + nu, 1, ctx)


def rodriguesH(nu, n, k, ctx, system=None, basis=None):
    """
    Laguerre coefficient h_{2n,k} of q_{2n}(t) = sum_k a_{n,k} (-1)^k k! t^k L_k^nu(t):
    h_{2n,k} = -a_{n,0}/D_n sum_r D_{n,r} r! (1+nu)_r 3F2(-k, 1+nu+r, 1+r; 1+nu, 1; 1).

    With a CramerSystem the determinant form is used literally; with an
    OrthoBasis the equivalent coefficient form a_{n,r} r! (1+nu)_r is used.
    """
    mp = ctx.mp
    nu = ctx.mpf(nu)
    if not 0 <= k <= 2 * n:
        raise DomainError(f"h_(2n,k) needs 0 <= k <= 2n, got k={k}, n={n}")
    if system is not None:
        weights = [-system.a0 / system.determinant * system.Dk[r] for r in range(n + 1)]
    else:
        if basis is None:
            basis = gramConstruct(WeightKind(WeightTag.RHO_SQ, nu), n, ctx)
        weights = [basis.polynomial(n).coefficient(r) for r in range(n + 1)]
    return mp.fsum(weights[r] * factorial(r) * pochhammer(1 + nu, r, ctx) * rodriguesHypergeometric(k, r, nu, ctx)
                   for r in range(n + 1))


def rodriguesHTable(nu, poly, ctx):
    """[h_{2n,0}, ..., h_{2n,2n}] for P_n given by its coefficients"""
    mp = ctx.mp
    nu = ctx.mpf(nu)
    n = len(poly.coeffs) - 1
    return [mp.fsum(poly.coefficient(r) * factorial(r) * pochhammer(1 + nu, r, ctx)
                    * rodriguesHypergeometric(k, r, nu, ctx) for r in range(n + 1))
            for k in range(2 * n + 1)]


def associatedPolynomial(nu, poly, ctx):
    """q_{2n}(t) = sum_k a_{n,k} (-1)^k k! t^k L_k^nu(t)"""
    total = Polynomial((ctx.mp.zero,))
    for k, a in enumerate(poly.coeffs):
        total = total + laguerreCoefficients(k, nu, ctx).mulX(k) * ((-1) ** k * factorial(k) * a)
    return total


def rodriguesProjection(nu, poly, k, ctx):
    """k!/Gamma(1+nu+k) int t^nu e^(-t) L_k^nu(t) q_{2n}(t) dt by quadrature"""
    mp = ctx.mp
    nu = ctx.mpf(nu)
    q = associatedPolynomial(nu, poly, ctx)
    profile = EndpointProfile(float(nu), logAtZero=False)
    value = integrateZeroInf(lambda t: t ** nu * mp.exp(-t) * laguerre(k, nu, t, ctx) * q(t),
                             profile, ctx, label="rodriguesProjection").value
    return factorial(k) * value / gamma(1 + nu + k, ctx)


def rodriguesSpecialCases(r, nu):
    """
    Closed values of (1+nu)_r 3F2(-k, 1+nu+r, 1+r; 1+nu, 1; 1), exact in the
    arithmetic of nu: returns (computed, expected) pairs for k = 2r+1, 2r, 2r-1, 2r-2
    """
    def scaled(k):
        return pochhammer(1 + nu, r) * rodriguesHypergeometric(k, r, nu)

    cases = [(scaled(2 * r + 1), 0), (scaled(2 * r), factorial(2 * r) // factorial(r))]
    if r >= 1:
        cases.append((scaled(2 * r - 1), -factorial(2 * r - 1) * (nu + 3 * r) / factorial(r - 1)))
        cases.append((scaled(2 * r - 2),
                      factorial(2 * r - 2) * (2 * r * r * (2 * r + nu - 1) * (2 * r - 1)
                                              + r * (r - 1) * (r + nu - 1) * (r + nu)) / (2 * factorial(r))))
    return cases


def rodriguesValue(nu, n, x, ctx, system=None, basis=None):
    """(1/rho_nu(x)) sum_k h_{2n,k}/k! d^k/dx^k (x^k rho_nu(x))"""
    mp = ctx.mp
    nu = ctx.mpf(nu)
    x = ctx.mpf(x)
    if basis is None and system is None:
        basis = gramConstruct(WeightKind(WeightTag.RHO_SQ, nu), n, ctx)
    h = [rodriguesH(nu, n, k, ctx, system, basis) for k in range(2 * n + 1)]
    total = mp.fsum(h[k] / factorial(k) * diffPower(k, nu).evaluate(x, ctx) for k in range(2 * n + 1))
    return total / rho(nu, x, ctx)


def rodriguesEval(nu, n, x, ctx, system=None, basis=None, rodriguesTol=DEFAULT_RODRIGUES_TOL):
    """
    P_n(x) through its Rodrigues-type representation.

    Raises:
        RouteMismatchError: when the value differs from the directly evaluated P_n(x)
            by more than rodriguesTol (relative)
    """
    mp = ctx.mp
    if basis is None and system is None:
        basis = gramConstruct(WeightKind(WeightTag.RHO_SQ, nu), n, ctx)
    value = rodriguesValue(nu, n, x, ctx, system, basis)
    direct = _directValue(n, x, ctx, system, basis)
    if not ctx.agrees(value, direct, rodriguesTol):
        raise RouteMismatchError(f"Rodrigues value {mp.nstr(value, 15)} differs from P_{n}(x) = {mp.nstr(direct, 15)}")
    return value


def _directValue(n, x, ctx, system, basis):
    x = ctx.mpf(x)
    return system.polynomial(x) if system is not None else basis.evaluate(n, x)


def rodriguesCheck(nu, n, x, ctx, system=None, basis=None, rodriguesTol=DEFAULT_RODRIGUES_TOL):
    mp = ctx.mp
    if basis is None and system is None:
        basis = gramConstruct(WeightKind(WeightTag.RHO_SQ, nu), n, ctx)
    return VerificationReport.fromValues(
        f"rodrigues[nu={mp.nstr(ctx.mpf(nu), 6)},n={n},x={mp.nstr(ctx.mpf(x), 6)}]", "4.42",
        rodriguesValue(nu, n, x, ctx, system, basis), _directValue(n, x, ctx, system, basis), ctx, rodriguesTol)


def _toContext(poly, ctx):
    return Polynomial(tuple(ctx.mpf(c) for c in poly.coeffs))


def corollary2Eval(nu, n, x, ctx, system=None, basis=None, rodriguesTol=DEFAULT_RODRIGUES_TOL):
    """
    P_n(x) from the rho_nu components A of d^k/dx^k(x^k rho_nu); the rho_{nu+1}
    components must cancel as a polynomial.

    Returns:
        (value, bAggregate Polynomial)

    Raises:
        NonvanishingError: when the rho_{nu+1} aggregate has a coefficient above
            verifyTol relative to the size of its summands
        RouteMismatchError: when the value differs from P_n(x) beyond rodriguesTol
    """
    mp = ctx.mp
    nu = ctx.mpf(nu)
    x = ctx.mpf(x)
    if basis is None:
        basis = gramConstruct(WeightKind(WeightTag.RHO_SQ, nu), n, ctx)
    h = [rodriguesH(nu, n, k, ctx, system, basis) for k in range(2 * n + 1)]
    aggregateA = Polynomial((mp.zero,))
    aggregateB = Polynomial((mp.zero,))
    scale = mp.zero
    for k in range(2 * n + 1):
        expr = diffPower(k, nu)
        weight = h[k] / factorial(k)
        partA = _toContext(expr.p.toPolynomial(), ctx) * weight
        partB = _toContext(expr.q.toPolynomial(), ctx) * weight
        aggregateA = aggregateA + partA
        aggregateB = aggregateB + partB
        scale = max(scale, partB.maxAbsCoefficient(), partA.maxAbsCoefficient())
    residual = aggregateB.maxAbsCoefficient() / scale if scale else mp.zero
    if residual > ctx.tol:
        raise NonvanishingError(f"rho_(nu+1) aggregate does not vanish: relative size {mp.nstr(residual, 5)}")
    value = aggregateA(x)
    direct = system.polynomial(x) if system is not None else basis.evaluate(n, x)
    if not ctx.agrees(value, direct, rodriguesTol):
        raise RouteMismatchError(f"type-1 representation {mp.nstr(value, 15)} differs from P_{n}(x)")
    return value, aggregateB


def corollary2Check(nu, n, x, ctx, system=None, basis=None, rodriguesTol=DEFAULT_RODRIGUES_TOL):
    mp = ctx.mp
    if basis is None:
        basis = gramConstruct(WeightKind(WeightTag.RHO_SQ, nu), n, ctx)
    direct = system.polynomial(ctx.mpf(x)) if system is not None else basis.evaluate(n, ctx.mpf(x))
    value, aggregateB = corollary2Eval(nu, n, x, ctx, system, basis, rodriguesTol)
    tag = f"[nu={mp.nstr(ctx.mpf(nu), 6)},n={n},x={mp.nstr(ctx.mpf(x), 6)}]"
    return VerificationReport.combine("type1_representation" + tag, "4.43", [
        VerificationReport.fromValues("type1_value" + tag, "4.43", value, direct, ctx, rodriguesTol),
        VerificationReport.fromResidual("type1_companion_vanishes" + tag, "4.43",
                                        aggregateB.maxAbsCoefficient(), ctx,
                                        note="rho_(nu+1) aggregate, largest coefficient"),
    ])


# ---------------------------------------------------------------------------
# Generating function
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeneratingResult:
    direct: object
    series: object
    difference: object
    printedVariant: object


def _monomialReductionValue(j, nu, x, ratio, ctx):
    """x^j rho_{nu-j}(x) / rho_nu(x) through the reduction polynomials"""
    p = reductionPolynomial(j, nu)
    q = reductionPolynomial(j - 1, nu - 1)
    return ctx.mpf(p(x)) + ctx.mpf(q(x)) * ratio


def generatingPartial(nu, x, z, N, ctx, basis=None):
    """
    Partial sum of G(x, z) = sum_n P_n(x) z^n / n! for n <= N, once from the
    coefficients and once from the Laguerre coefficients h_{2n,k} and the
    reduction polynomials; also the value with 1/(k-j)! in place of 1/j!

    Returns:
        GeneratingResult
    """
    mp = ctx.mp
    nu = ctx.mpf(nu)
    x = ctx.mpf(x)
    z = ctx.mpf(z)
    if basis is None or basis.degreeMax < N:
        basis = gramConstruct(WeightKind(WeightTag.RHO_SQ, nu), N, ctx)
    ratio = rho(nu + 1, x, ctx) / rho(nu, x, ctx)
    direct = mp.fsum(basis.evaluate(n, x) * z ** n / factorial(n) for n in range(N + 1))
    seriesTerms = []
    printedTerms = []
    for n in range(N + 1):
        h = rodriguesHTable(nu, basis.polynomial(n), ctx)
        weight = z ** n / factorial(n)
        for k in range(2 * n + 1):
            for j in range(k + 1):
                reduced = _monomialReductionValue(j, nu, x, ratio, ctx)
                base = weight * h[k] * comb(k, j) * (-1) ** j * reduced
                seriesTerms.append(base / factorial(j))
                printedTerms.append(base / factorial(k - j))
    series = mp.fsum(seriesTerms)
    printed = mp.fsum(printedTerms)
    return GeneratingResult(direct, series, direct - series, printed)


def generatingCheck(nu, x, z, N, ctx, basis=None):
    mp = ctx.mp
    result = generatingPartial(nu, x, z, N, ctx, basis)
    tag = f"[nu={mp.nstr(ctx.mpf(nu), 6)},x={mp.nstr(ctx.mpf(x), 6)},z={mp.nstr(ctx.mpf(z), 6)},N={N}]"
    return [
        VerificationReport.fromValues("generating_function" + tag, "4.47", result.series, result.direct, ctx),
        VerificationReport.advisory("generating_function_printed" + tag, "4.47", result.printedVariant,
                                    result.direct, ctx, "coefficient 1/(k-j)! as printed; 1/j! is the expansion"),
    ]
