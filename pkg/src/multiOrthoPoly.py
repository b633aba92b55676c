"""
Multiple orthogonal polynomials for the weight vector
(rho_nu^2, rho_{nu+1}^2, rho_nu rho_{nu+1}) with an x^alpha factor
Type-1 triples, monic type-2 polynomials, the differential recurrences
between alpha levels and the linear-independence checks behind them
"""

import logging
from dataclasses import dataclass

from polynomial import Polynomial
from precisionCore import (DomainError, NullspaceDimensionError,
                           SingularSystemError)
from orthoPoly import moment, weightedIntegral
from quadrature import DecayClass, EndpointProfile, integrateZeroInf
from specialFunctions import WeightKind, WeightTag, rho, rhoOrZero
from verificationReport import VerificationReport

logger = logging.getLogger(__name__)

DEFAULT_RESIDUAL_TOL = 1e-18
DEFAULT_PROPORTIONALITY_TOL = 1e-12
DEFAULT_DERIVATIVE_TOL = 1e-15
SPOT_POINTS = ("0.5", "1", "2")
MOP_TAGS = (WeightTag.RHO_SQ, WeightTag.RHO_SQ_SHIFT, WeightTag.RHO_PROD)


def weightVector(nu, alpha):
    return tuple(WeightKind(tag, nu, alpha) for tag in MOP_TAGS)


def momentVector(nu, alpha, mu, ctx):
    """
    (int rho_nu^2 x^(alpha+mu), int rho_{nu+1}^2 x^(alpha+mu), int rho_nu rho_{nu+1} x^(alpha+mu))

    Raises:
        DomainError: unless nu > -1/2 and alpha + mu > -1
    """
    return tuple(moment(w, mu, ctx) for w in weightVector(nu, alpha))


@dataclass(frozen=True)
class Type1Solution:
    """
    q = A rho_nu^2 + B rho_{nu+1}^2 + C rho_nu rho_{nu+1}, normalized so that A
    has leading coefficient 1 unless that coefficient vanishes at working
    precision, in which case the largest coefficient is 1 and degenerate is set
    """
    nu: object
    alpha: object
    degrees: tuple
    A: Polynomial
    B: Polynomial
    C: Polynomial
    singularValues: tuple
    degenerate: bool = False

    @property
    def polynomials(self):
        return self.A, self.B, self.C

    def combined(self, x, ctx):
        """q(x) without the x^alpha factor"""
        nu = ctx.mpf(self.nu)
        x = ctx.mpf(x)
        low, high = rho(nu, x, ctx), rho(nu + 1, x, ctx)
        return self.A(x) * low * low + self.B(x) * high * high + self.C(x) * low * high

    def coefficientVector(self):
        return list(self.A.coeffs) + list(self.B.coeffs) + list(self.C.coeffs)

    def toDict(self, nstr, digits=30):
        return {
            'nu': str(self.nu), 'alpha': str(self.alpha), 'degrees': list(self.degrees),
            'A': self.A.toStrings(nstr, digits), 'B': self.B.toStrings(nstr, digits),
            'C': self.C.toStrings(nstr, digits), 'degenerate': self.degenerate,
            'singularValues': [nstr(s, 5) for s in self.singularValues],
        }


@dataclass(frozen=True)
class Type2Solution:
    """Monic p of degree n1+n2+n3 orthogonal to x^(alpha+m) w_i for m < n_i"""
    nu: object
    alpha: object
    multiIndex: tuple
    poly: Polynomial
    conditionEstimate: object

    def toDict(self, nstr, digits=30):
        return {
            'nu': str(self.nu), 'alpha': str(self.alpha), 'multiIndex': list(self.multiIndex),
            'coefficients': self.poly.toStrings(nstr, digits),
            'condition': nstr(self.conditionEstimate, 5),
        }


def _momentColumns(nu, alpha, count, ctx):
    """moments[w][j] for the three weights and j < count"""
    weights = weightVector(nu, alpha)
    return [[moment(w, j, ctx) for j in range(count)] for w in weights]


def type1Solve(nu, alpha, degrees, ctx):
    """
    Nullspace of the conditions int q x^(alpha+m) dx = 0, m = 0..dA+dB+dC+1.

    Args:
        nu, alpha: weight parameters
        degrees: (dA, dB, dC)
        ctx: PrecisionContext

    Returns:
        Type1Solution

    Raises:
        NullspaceDimensionError: if the column-equilibrated system does not have
            exactly one singular value below 2^(-bits/3) relative to the largest
    """
    mp = ctx.mp
    dA, dB, dC = degrees
    if min(degrees) < 0:
        raise DomainError(f"degrees must be non-negative, got {degrees}")
    unknowns = dA + dB + dC + 3
    rows = unknowns - 1
    moments = _momentColumns(nu, alpha, rows + max(degrees) + 1, ctx)
    layout = [(w, j) for w, d in enumerate(degrees) for j in range(d + 1)]
    matrix = mp.matrix(rows, unknowns)
    for m in range(rows):
        for col, (w, j) in enumerate(layout):
            matrix[m, col] = moments[w][j + m]
    scales = []
    for col in range(unknowns):
        norm = mp.sqrt(mp.fsum(matrix[m, col] ** 2 for m in range(rows)))
        scales.append(1 / norm)
        for m in range(rows):
            matrix[m, col] *= scales[col]
    _, singular, vt = mp.svd_r(matrix, full_matrices=True, compute_uv=True)
    values = sorted((singular[i] for i in range(len(singular))), reverse=True)
    if values[-1] < ctx.nullspaceGate * values[0]:
        smallest = ", ".join(mp.nstr(v, 5) for v in values[-2:])
        raise NullspaceDimensionError(f"type-1 system for degrees {degrees} has a nullspace of dimension > 1 "
                                      f"(smallest singular values {smallest})")
    vector = [vt[unknowns - 1, col] * scales[col] for col in range(unknowns)]
    lead = vector[dA]
    largest = max(vector, key=abs)
    degenerate = abs(lead) < ctx.nullspaceGate * abs(largest)
    norm = largest if degenerate else lead
    if degenerate:
        logger.warning("type-1 leading coefficient of A vanishes for degrees %s; normalized by largest", degrees)
    vector = [v / norm for v in vector]
    A = Polynomial(tuple(vector[:dA + 1]))
    B = Polynomial(tuple(vector[dA + 1:dA + dB + 2]))
    C = Polynomial(tuple(vector[dA + dB + 2:]))
    logger.debug("type-1 nu=%s alpha=%s degrees=%s smallest singular value %s", nu, alpha, degrees,
                 mp.nstr(values[-1], 5))
    return Type1Solution(nu, alpha, tuple(degrees), A, B, C, tuple(values), degenerate)


def type1ResidualCheck(solution, ctx, tolerance=DEFAULT_RESIDUAL_TOL):
    """
    Replay the type-1 conditions through quadrature; each residual is relative to
    the sum of the magnitudes of its three weighted pieces
    """
    mp = ctx.mp
    weights = weightVector(solution.nu, solution.alpha)
    conditions = sum(solution.degrees) + 2
    parts = []
    for m in range(conditions):
        pieces = [weightedIntegral(w, poly, ctx, m, label="type1Residual")
                  for w, poly in zip(weights, solution.polynomials)]
        scale = mp.fsum(abs(p) for p in pieces)
        parts.append(VerificationReport.fromResidual(
            f"type1_condition[m={m}]", "5.1", mp.fsum(pieces) / scale, ctx, tolerance))
    tag = f"[nu={solution.nu},alpha={solution.alpha},degrees={solution.degrees}]"
    return VerificationReport.combine("type1_orthogonality" + tag, "5.1", parts)


def type2Solve(nu, alpha, multiIndex, ctx):
    """
    Monic p of degree N = n1+n2+n3 with int p x^(alpha+m) w_i dx = 0 for m < n_i.

    Raises:
        SingularSystemError: when the row-equilibrated system has condition
            number above 2^(bits/2)
    """
    mp = ctx.mp
    if min(multiIndex) < 0:
        raise DomainError(f"multi-index must be non-negative, got {multiIndex}")
    size = sum(multiIndex)
    if size == 0:
        return Type2Solution(nu, alpha, tuple(multiIndex), Polynomial((mp.one,)), mp.one)
    moments = _momentColumns(nu, alpha, size + max(multiIndex), ctx)
    matrix = mp.matrix(size, size)
    rhs = mp.matrix(size, 1)
    row = 0
    for w, count in enumerate(multiIndex):
        for m in range(count):
            scale = 1 / max(abs(moments[w][j + m]) for j in range(size + 1))
            for j in range(size):
                matrix[row, j] = moments[w][j + m] * scale
            rhs[row] = -moments[w][size + m] * scale
            row += 1
    condition = mp.cond(matrix)
    if condition > 1 / ctx.pivotFloor:
        raise SingularSystemError(f"type-2 system for {multiIndex} is singular (condition {mp.nstr(condition, 5)})")
    solution = mp.lu_solve(matrix, rhs)
    poly = Polynomial(tuple(solution[j] for j in range(size)) + (mp.one,))
    return Type2Solution(nu, alpha, tuple(multiIndex), poly, condition)


def type2ResidualCheck(solution, ctx, tolerance=DEFAULT_RESIDUAL_TOL):
    """Replay the three orthogonality blocks through quadrature"""
    mp = ctx.mp
    parts = []
    for w, count in zip(weightVector(solution.nu, solution.alpha), solution.multiIndex):
        for m in range(count):
            value = weightedIntegral(w, solution.poly, ctx, m, label="type2Residual")
            scale = mp.fsum(abs(c) * moment(w, j + m, ctx) for j, c in enumerate(solution.poly.coeffs))
            parts.append(VerificationReport.fromResidual(
                f"type2_condition[{w.tag.value},m={m}]", "A.1-A.3", value / scale, ctx, tolerance))
    tag = f"[nu={solution.nu},alpha={solution.alpha},index={solution.multiIndex}]"
    if not parts:
        return VerificationReport.fromResidual("type2_orthogonality" + tag, "A.1-A.3", 0, ctx, tolerance)
    return VerificationReport.combine("type2_orthogonality" + tag, "A.1-A.3", parts)


def lowerLevelTriple(solution, ctx):
    """
    (A', B', C') with d/dx [x^alpha q^alpha] = x^(alpha-1) (A' rho_nu^2 + B' rho_{nu+1}^2 + C' rho_nu rho_{nu+1})
    """
    nu = ctx.mpf(solution.nu)
    alpha = ctx.mpf(solution.alpha)
    A, B, C = solution.polynomials
    newA = A * (alpha + 2 * nu) + A.derivative().mulX(1) - C.mulX(1)
    newB = B * alpha + B.derivative().mulX(1) - C
    newC = C * (alpha + nu) + C.derivative().mulX(1) - A * 2 - B.mulX(1) * 2
    return newA, newB, newC


def _padded(poly, degree):
    return [poly.coefficient(k) for k in range(degree + 1)]


def theorem5Check(nu, alpha, n, ctx, proportionalityTol=DEFAULT_PROPORTIONALITY_TOL):
    """
    Differential recurrence between the alpha and alpha-1 type-1 families:
    the triple derived from level alpha with degrees (n, n-1, n-1) must be a
    scalar multiple of the level alpha-1 solution with degrees (n, n-1, n),
    and d/dx [x^alpha q^alpha] = lambda x^(alpha-1) q^(alpha-1) at sample points

    Returns:
        VerificationReport
    """
    mp = ctx.mp
    if not (0 <= nu < 0.5) or alpha <= 0 or n < 1:
        raise DomainError(f"need 0 <= nu < 1/2, alpha > 0 and n >= 1, got ({nu}, {alpha}, {n})")
    upper = type1Solve(nu, alpha, (n, n - 1, n - 1), ctx)
    lower = type1Solve(nu, alpha - 1, (n, n - 1, n), ctx)
    candidate = lowerLevelTriple(upper, ctx)
    shape = (n, n - 1, n)
    cand = [c for poly, d in zip(candidate, shape) for c in _padded(poly, d)]
    target = [c for poly, d in zip(lower.polynomials, shape) for c in _padded(poly, d)]
    scalar = mp.fsum(a * b for a, b in zip(cand, target)) / mp.fsum(b * b for b in target)
    spread = max(abs(a - scalar * b) for a, b in zip(cand, target)) / max(abs(a) for a in cand)
    tag = f"[nu={nu},alpha={alpha},n={n}]"
    parts = [
        VerificationReport.fromResidual("theorem5_proportionality" + tag, "5.24-5.26", spread, ctx,
                                        proportionalityTol, note=f"scalar {mp.nstr(scalar, 15)}"),
        VerificationReport("theorem5_scalar_nonzero" + tag, "5.23", scalar, 0, abs(scalar), abs(scalar),
                           ctx.tol, bool(mp.isfinite(scalar) and scalar != 0)),
    ]
    alphaM = ctx.mpf(alpha)
    for point in SPOT_POINTS:
        x = ctx.mpf(point)
        lhs = ctx.mp.diff(lambda s: s ** alphaM * upper.combined(s, ctx), x)
        rhs = scalar * x ** (alphaM - 1) * lower.combined(x, ctx)
        residual = abs(lhs - rhs) / max(abs(lhs), abs(rhs), ctx.underflowFloor)
        parts.append(VerificationReport.fromResidual(f"theorem5_function[x={point}]" + tag, "5.23",
                                                     residual, ctx, proportionalityTol,
                                                     computed=lhs, expected=rhs))
    return VerificationReport.combine("theorem5" + tag, "5.23-5.26", parts)


def theorem6Check(nu, alpha, n, ctx, tolerance=DEFAULT_DERIVATIVE_TOL):
    """d/dx p^alpha_(n+1,n,n+1) = (3n+2) p^(alpha+1)_(n+1,n,n), coefficient-wise"""
    mp = ctx.mp
    if nu < 0 or alpha <= -1:
        raise DomainError(f"need nu >= 0 and alpha > -1, got ({nu}, {alpha})")
    high = type2Solve(nu, alpha, (n + 1, n, n + 1), ctx)
    low = type2Solve(nu, alpha + 1, (n + 1, n, n), ctx)
    derivative = high.poly.derivative()
    scaled = low.poly * (3 * n + 2)
    degree = 3 * n + 1
    residual = (max(abs(derivative.coefficient(k) - scaled.coefficient(k)) for k in range(degree + 1))
                / scaled.maxAbsCoefficient())
    return VerificationReport.fromResidual(f"theorem6[nu={nu},alpha={alpha},n={n}]", "A.4", residual, ctx,
                                           tolerance)


def familyGramMatrix(nu, degrees, ctx):
    """
    Gram matrix under int f g x^2 dx of x^i rho_nu^2 (i <= n), x^j rho_{nu+1}^2 (j <= m)
    and x^k rho_nu rho_{nu+1} (k <= l), scaled to unit diagonal
    """
    mp = ctx.mp
    nuM = ctx.mpf(nu)
    family = [(w, i) for w, d in enumerate(degrees) for i in range(d + 1)]

    def component(w, x):
        low, high = rhoOrZero(nuM, x, ctx), rhoOrZero(nuM + 1, x, ctx)
        return (low * low, high * high, low * high)[w]

    sigmas = (2 * min(0.0, float(nu)), 0.0, min(0.0, float(nu)))
    size = len(family)
    gram = mp.matrix(size, size)
    for a in range(size):
        for b in range(a, size):
            (wa, ia), (wb, ib) = family[a], family[b]
            profile = EndpointProfile(sigmas[wa] + sigmas[wb] + ia + ib + 2,
                                      logAtZero=(nu == 0), decay=DecayClass.SQRT_EXPONENTIAL)
            value = integrateZeroInf(lambda x: x ** (ia + ib + 2) * component(wa, x) * component(wb, x),
                                     profile, ctx, label="familyGram").value
            gram[a, b] = gram[b, a] = value
    diagonal = [mp.sqrt(gram[i, i]) for i in range(size)]
    for a in range(size):
        for b in range(size):
            gram[a, b] /= diagonal[a] * diagonal[b]
    return gram


def theorem4RankCheck(nu, degrees, ctx):
    """
    Smallest eigenvalue of the normalized Gram matrix of the function family;
    a value above the nullspace gate supports linear independence

    Returns:
        (VerificationReport, list of eigenvalues in increasing order)
    """
    mp = ctx.mp
    gram = familyGramMatrix(nu, degrees, ctx)
    eigen, _ = mp.eigsy(gram)
    values = sorted(eigen[i] for i in range(gram.rows))
    smallest = values[0]
    symmetric = all(gram[i, j] == gram[j, i] for i in range(gram.rows) for j in range(gram.cols))
    report = VerificationReport(f"theorem4_gram[nu={nu},degrees={tuple(degrees)}]", "5.18", smallest, 0,
                                smallest, smallest, ctx.nullspaceGate, bool(symmetric and smallest > ctx.nullspaceGate),
                                note=f"smallest eigenvalue {mp.nstr(smallest, 8)}")
    return report, values


def remark3Check(xSamples, ctx):
    """x rho_{-1/2}^2(x) = rho_{1/2}^2(x): the family degenerates at nu = -1/2"""
    mp = ctx.mp
    half = mp.mpf(1) / 2
    parts = []
    for sample in xSamples:
        x = ctx.mpf(sample)
        parts.append(VerificationReport.fromValues(
            f"remark3_witness[x={mp.nstr(x, 6)}]", "R3", x * rho(-half, x, ctx) ** 2, rho(half, x, ctx) ** 2, ctx))
    return VerificationReport.combine("remark3", "R3", parts)
