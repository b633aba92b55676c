"""
Composition orthogonality framework
theta = t D t acting through modified-Laplace pairs (psi, phi), the kernels
Omega of the Laguerre, Hermite and Jacobi measures, and the identity
int p(theta) q(theta) {phi} omega dt = int p q psi Omega dx
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from polynomial import Polynomial
from precisionCore import DomainError, gamma, pochhammer
from quadrature import DecayClass, EndpointProfile, integrateFinite, integrateZeroInf
from orthoPoly import gramConstruct
from specialFunctions import WeightKind, WeightTag, hermiteKernel, rho, tricomiU
from verificationReport import VerificationReport

logger = logging.getLogger(__name__)

JACOBI_DIRECT_BELOW = Fraction(1, 8)


class MeasureTag(Enum):
    LAGUERRE = "laguerre"
    HERMITE = "hermite"
    JACOBI = "jacobi"


@dataclass(frozen=True)
class MeasureKind:
    """
    Classical measure omega(t) dt:
    LAGUERRE t^nu e^(-t) on (0, inf), HERMITE e^(-t^2) on R,
    JACOBI (1-t)^alpha t^beta on [0, 1]
    """
    tag: MeasureTag
    nu: object = 0
    alpha: object = 0
    beta: object = 1

    def __post_init__(self):
        if self.tag is MeasureTag.LAGUERRE and self.nu <= -1:
            raise DomainError(f"Laguerre measure needs nu > -1, got {self.nu}")
        if self.tag is MeasureTag.JACOBI and (self.alpha <= -1 or self.beta <= 0):
            raise DomainError(f"Jacobi measure needs alpha > -1 and beta > 0, got ({self.alpha}, {self.beta})")

    def density(self, t, ctx):
        mp = ctx.mp
        if self.tag is MeasureTag.LAGUERRE:
            return t ** ctx.mpf(self.nu) * mp.exp(-t)
        if self.tag is MeasureTag.HERMITE:
            return mp.exp(-t * t)
        return (1 - t) ** ctx.mpf(self.alpha) * t ** ctx.mpf(self.beta)


@dataclass(frozen=True)
class LaplacePair:
    """
    psi(x) = sum c x^alpha over terms (c, alpha) with alpha > -1, and the induced
    phi(t) = (1/t) int e^(-x/t) psi(x) dx = sum c Gamma(alpha+1) t^alpha
    """
    terms: tuple

    def __post_init__(self):
        if not self.terms:
            raise DomainError("a Laplace pair needs at least one power term")
        for _, alpha in self.terms:
            if alpha <= -1:
                raise DomainError(f"power x^{alpha} is not admissible, need alpha > -1")

    @classmethod
    def power(cls, alpha, coefficient=1):
        return cls(((coefficient, alpha),))

    def psi(self, x, ctx):
        return ctx.mp.fsum(ctx.mpf(c) * x ** ctx.mpf(a) for c, a in self.terms)

    def phi(self, t, ctx):
        return thetaPowerApply(0, self, t, ctx)

    @property
    def lowestPower(self):
        return min(float(a) for _, a in self.terms)


def thetaPowerApply(k, pair, t, ctx):
    """
    theta^k {phi}(t) = (1/t) int e^(-x/t) x^k psi(x) dx = sum c Gamma(alpha+k+1) t^(alpha+k)
    """
    t = ctx.mpf(t)
    if t <= 0:
        raise DomainError(f"theta images are taken at t > 0, got {t}")
    return ctx.mp.fsum(ctx.mpf(c) * gamma(ctx.mpf(a) + k + 1, ctx) * t ** (ctx.mpf(a) + k)
                       for c, a in pair.terms)


def thetaPowerQuadrature(k, pair, t, ctx):
    """The defining integral of theta^k {phi}(t), by quadrature"""
    mp = ctx.mp
    t = ctx.mpf(t)
    profile = EndpointProfile(pair.lowestPower + k)
    value = integrateZeroInf(lambda x: mp.exp(-x / t) * x ** k * pair.psi(x, ctx), profile, ctx,
                             label="thetaPowerQuadrature").value
    return value / t


# Exact bookkeeping of theta images of power terms. A term (c, alpha, scale, exponent)
# stands for c * Gamma(alpha+1) * scale * t^exponent.

def thetaSymbolic(k, pair):
    return tuple((c, a, pochhammer(Fraction(a) + 1, k), Fraction(a) + k) for c, a in pair.terms)


def thetaStep(terms):
    """theta t^b = (b+1) t^(b+1)"""
    return tuple((c, a, scale * (exponent + 1), exponent + 1) for c, a, scale, exponent in terms)


def viskovSymbolic(n, pair):
    """t^n D^n (t^n phi) on the power terms of phi"""
    out = []
    for c, a in pair.terms:
        exponent = Fraction(a) + n
        scale = Fraction(1)
        for _ in range(n):
            scale *= exponent
            exponent -= 1
        out.append((c, a, scale, exponent + n))
    return tuple(out)


def thetaSeedCheck(j, k, pair):
    """theta^j applied to the closed form of theta^k equals theta^(j+k); exact"""
    terms = thetaSymbolic(k, pair)
    for _ in range(j):
        terms = thetaStep(terms)
    return terms == thetaSymbolic(j + k, pair)


def viskovCheck(n, pair):
    """t^n D^n t^n on phi reproduces theta^n phi; exact"""
    return viskovSymbolic(n, pair) == thetaSymbolic(n, pair)


def omegaKernel(measure, x, ctx):
    """
    Omega(x) = int e^(-x/t) omega(t) dt / t.

    Args:
        measure: MeasureKind
        x: positive real
        ctx: PrecisionContext

    Returns:
        rho_nu(x) for LAGUERRE, int_0^inf e^(-x/t - t^2) dt/t for HERMITE and
        Gamma(1+alpha) e^(-x) U(1+alpha, 1-beta, x) for JACOBI
    """
    x = ctx.mpf(x)
    if x <= 0:
        raise DomainError(f"Omega is taken at x > 0, got {x}")
    if measure.tag is MeasureTag.LAGUERRE:
        return rho(ctx.mpf(measure.nu), x, ctx)
    if measure.tag is MeasureTag.HERMITE:
        return hermiteKernel(x, ctx)
    if x < ctx.mpf(JACOBI_DIRECT_BELOW):
        return jacobiKernelDirect(measure, x, ctx)
    alpha = ctx.mpf(measure.alpha)
    return gamma(1 + alpha, ctx) * ctx.mp.exp(-x) * tricomiU(1 + alpha, 1 - ctx.mpf(measure.beta), x, ctx)


def jacobiKernelDirect(measure, x, ctx):
    """int_0^1 (1-t)^alpha t^(beta-1) e^(-x/t) dt"""
    mp = ctx.mp
    x = ctx.mpf(x)
    alpha = ctx.mpf(measure.alpha)
    beta = ctx.mpf(measure.beta)

    def integrand(t):
        if t == 0:
            return mp.zero
        return (1 - t) ** alpha * t ** (beta - 1) * mp.exp(-x / t)

    return integrateFinite(integrand, 0, 1, ctx, singAtB=float(alpha), label="jacobiKernel").value


def _thetaSide(measure, pair, product, ctx):
    """int (p q)(theta) {phi}(t) omega(t) dt; the Hermite case through its even split over (0, inf)"""
    mp = ctx.mp
    coeffs = list(product.coeffs)
    if measure.tag is MeasureTag.HERMITE:
        coeffs = [c * (1 + (-1) ** k) for k, c in enumerate(coeffs)]

    def integrand(t):
        if t == 0:
            return mp.zero
        image = mp.fsum(c * thetaPowerApply(k, pair, t, ctx) for k, c in enumerate(coeffs) if c)
        return image * measure.density(t, ctx)

    low = pair.lowestPower
    if measure.tag is MeasureTag.JACOBI:
        return integrateFinite(integrand, 0, 1, ctx, singAtA=low + float(measure.beta),
                               singAtB=float(measure.alpha), label="compositionTheta").value
    if measure.tag is MeasureTag.LAGUERRE:
        profile = EndpointProfile(low + float(measure.nu))
    else:
        profile = EndpointProfile(low, decay=DecayClass.GAUSSIAN)
    return integrateZeroInf(integrand, profile, ctx, label="compositionTheta").value


def _kernelSide(measure, pair, product, ctx):
    """int p q psi Omega dx; the Hermite case folded onto (0, inf)"""
    mp = ctx.mp
    poly = product
    if measure.tag is MeasureTag.HERMITE:
        poly = Polynomial(tuple(c * (1 + (-1) ** k) for k, c in enumerate(product.coeffs)))

    def integrand(x):
        if x == 0:
            return mp.zero
        return poly(x) * pair.psi(x, ctx) * omegaKernel(measure, x, ctx)

    low = pair.lowestPower
    if measure.tag is MeasureTag.LAGUERRE:
        profile = EndpointProfile(low + min(0.0, float(measure.nu)), logAtZero=(measure.nu == 0),
                                  decay=DecayClass.SQRT_EXPONENTIAL)
    elif measure.tag is MeasureTag.HERMITE:
        profile = EndpointProfile(low, logAtZero=True, decay=DecayClass.SQRT_EXPONENTIAL)
    else:
        profile = EndpointProfile(low, decay=DecayClass.EXPONENTIAL)
    return integrateZeroInf(integrand, profile, ctx, label="compositionKernel").value


def compositionSides(measure, pair, p, q, ctx):
    """(LHS, RHS) of the composition identity for polynomials p, q"""
    product = p * q
    return _thetaSide(measure, pair, product, ctx), _kernelSide(measure, pair, product, ctx)


def verifyIdentity(measure, pair, p, q, ctx):
    """
    Compare int p(theta) q(theta) {phi} omega dt with int p q psi Omega dx.

    Returns:
        VerificationReport with residual |LHS - RHS| / max(|LHS|, |RHS|, 1)
    """
    mp = ctx.mp
    lhs, rhs = compositionSides(measure, pair, p, q, ctx)
    residual = abs(lhs - rhs) / max(abs(lhs), abs(rhs), mp.one)
    eq = {MeasureTag.LAGUERRE: "2.8", MeasureTag.HERMITE: "2.15", MeasureTag.JACOBI: "2.19"}[measure.tag]
    name = (f"composition_identity[{measure.tag.value},psi={_pairLabel(pair)},"
            f"p={_polyLabel(p)},q={_polyLabel(q)}]")
    return VerificationReport.fromResidual(name, eq, residual, ctx, computed=lhs, expected=rhs)


def hermiteNormalizationNote(measure, pair, p, q, ctx):
    """
    The kernel side written with the printed density rho_{1/2,2}(x^2/4)/sqrt(pi)
    over R, which is twice Omega; recorded as an advisory
    """
    lhs, rhs = compositionSides(measure, pair, p, q, ctx)
    return VerificationReport.advisory(
        f"hermite_printed_density[psi={_pairLabel(pair)},p={_polyLabel(p)},q={_polyLabel(q)}]", "2.15",
        2 * rhs, lhs, ctx, "printed density rho_{1/2,2}(x^2/4)/sqrt(pi) equals 2 Omega(|x|)")


def compositionInnerProduct(measure, pair, p, q, ctx):
    """<p, q> through the composition route"""
    return _thetaSide(measure, pair, p * q, ctx)


def innerProductCheck(measure, pair, p, ctx):
    """<p, p> by the composition route against int p^2 psi Omega dx, plus positivity"""
    lhs, rhs = compositionSides(measure, pair, p, p, ctx)
    tag = f"[{measure.tag.value},psi={_pairLabel(pair)},p={_polyLabel(p)}]"
    agreement = VerificationReport.fromValues("inner_product_agreement" + tag, "1.12", lhs, rhs, ctx)
    positive = lhs > 0 or all(c == 0 for c in p.coeffs)
    positivity = VerificationReport("inner_product_positive" + tag, "1.13", lhs, 0,
                                    abs(lhs), abs(lhs), ctx.tol, bool(positive))
    return VerificationReport.combine("inner_product" + tag, "1.12-1.13", [agreement, positivity])


def prudnikovCheck(nu, alpha, n, m, ctx, basis=None):
    """
    Orthonormal P_n for x^alpha rho_nu(x) built from moments; the Laguerre
    composition integral with psi = x^alpha must equal delta_{n,m}.

    Returns:
        VerificationReport combining the composition side and the weighted side
    """
    mp = ctx.mp
    if nu < 0 or alpha <= -1:
        raise DomainError(f"need nu >= 0 and alpha > -1, got ({nu}, {alpha})")
    if basis is None or basis.degreeMax < max(n, m):
        basis = gramConstruct(WeightKind(WeightTag.RHO, nu, alpha), max(n, m), ctx)
    measure = MeasureKind(MeasureTag.LAGUERRE, nu=nu)
    lhs, rhs = compositionSides(measure, LaplacePair.power(alpha), basis.polynomial(n), basis.polynomial(m), ctx)
    expected = 1 if n == m else 0
    tag = f"[nu={nu},alpha={alpha},n={n},m={m}]"
    return VerificationReport.combine(f"prudnikov{tag}", "2.9", [
        VerificationReport.fromValues("prudnikov_composition" + tag, "2.9", lhs, expected, ctx),
        VerificationReport.fromValues("prudnikov_weighted" + tag, "2.9", rhs, expected, ctx),
    ])


def _pairLabel(pair):
    return "+".join(f"{c}x^{a}" for c, a in pair.terms)


def _polyLabel(poly):
    return "[" + ",".join(str(c) for c in poly.coeffs) + "]"
