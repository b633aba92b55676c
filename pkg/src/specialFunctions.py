"""
Special functions for the Macdonald-weight toolkit
K_nu, the weight rho_nu and its products, Laguerre polynomials, Tricomi U,
the upper incomplete gamma, terminating 3F2 at unity, the Hermite-case kernel
and Mellin-Barnes evaluators for the weight products
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from polynomial import Polynomial
from precisionCore import (DomainError, PoleError, UnderflowError, gamma,
                           pochhammer)
from quadrature import (DecayClass, EndpointProfile, GammaProduct,
                        integrateFinite, integrateZeroInf, mellinLineIntegral)
from verificationReport import VerificationReport

logger = logging.getLogger(__name__)

KERNEL_MARGIN_BITS = 20
MELLIN_LINE_OFFSET = 0.5


class WeightTag(Enum):
    RHO = "rho"
    RHO_SQ = "rho2"
    RHO_PROD = "product"
    RHO_SQ_SHIFT = "rho2shift"


@dataclass(frozen=True)
class WeightKind:
    """A weight x^alphaPower * w(x) with w one of rho_nu, rho_nu^2, rho_{nu+1}rho_nu, rho_{nu+1}^2"""
    tag: WeightTag
    nu: object
    alphaPower: object = 0

    def __post_init__(self):
        if self.alphaPower <= -1:
            raise DomainError(f"alphaPower must exceed -1, got {self.alphaPower}")
        if self.tag in (WeightTag.RHO_SQ, WeightTag.RHO_PROD) and self.nu <= -0.5:
            raise DomainError(f"{self.tag.value} weight needs nu > -1/2, got {self.nu}")

    def profile(self, extraPower=0):
        """Endpoint profile of x^extraPower times this weight"""
        nu = float(self.nu)
        if self.tag is WeightTag.RHO:
            sigma = min(0.0, nu)
            decay = DecayClass.SQRT_EXPONENTIAL
        elif self.tag is WeightTag.RHO_SQ:
            sigma = 2 * min(0.0, nu)
            decay = DecayClass.SQRT_EXPONENTIAL
        elif self.tag is WeightTag.RHO_PROD:
            sigma = min(0.0, nu) + min(0.0, nu + 1)
            decay = DecayClass.SQRT_EXPONENTIAL
        else:
            sigma = 2 * min(0.0, nu + 1)
            decay = DecayClass.SQRT_EXPONENTIAL
        logAtZero = nu == 0 or (self.tag in (WeightTag.RHO_PROD, WeightTag.RHO_SQ_SHIFT) and nu == -1)
        return EndpointProfile(sigma + float(self.alphaPower) + extraPower, logAtZero, decay)

    def evaluate(self, x, ctx):
        """Weight value at x; zero where rho underflows, for use inside integrands"""
        x = ctx.mpf(x)
        if self.tag is WeightTag.RHO:
            value = rhoOrZero(self.nu, x, ctx)
        elif self.tag is WeightTag.RHO_SQ:
            value = rhoOrZero(self.nu, x, ctx) ** 2
        elif self.tag is WeightTag.RHO_PROD:
            value = rhoOrZero(self.nu + 1, x, ctx) * rhoOrZero(self.nu, x, ctx)
        else:
            value = rhoOrZero(self.nu + 1, x, ctx) ** 2
        if self.alphaPower:
            value *= x ** ctx.mpf(self.alphaPower)
        return value


def _besselKLogEstimate(nu, z, ctx):
    # leading large-z asymptotics of ln K_nu(z)
    mp = ctx.mp
    return mp.log(mp.sqrt(mp.pi / (2 * z))) - z + (nu * nu) / (2 * z)


@lru_cache(maxsize=65536)
def besselK(nu, z, ctx):
    """
    Macdonald function K_nu(z) for real nu and z > 0.

    Raises:
        UnderflowError: when K_nu(z) falls below 2^(-2*bits)
    """
    mp = ctx.mp
    nu = ctx.mpf(nu)
    z = ctx.mpf(z)
    if z <= 0:
        raise DomainError(f"besselK needs z > 0, got {z}")
    if _besselKLogEstimate(nu, z, ctx) < mp.log(ctx.underflowFloor):
        raise UnderflowError(f"K_{mp.nstr(nu, 8)}({mp.nstr(z, 8)}) is below 2^-{2 * ctx.bits}")
    return mp.besselk(nu, z)


def besselKIntegral(nu, z, ctx):
    """K_nu(z) from its cosh integral, the independent quadrature route"""
    mp = ctx.mp
    nu = abs(ctx.mpf(nu))
    z = ctx.mpf(z)
    if z <= 0:
        raise DomainError(f"besselKIntegral needs z > 0, got {z}")
    budget = (ctx.bits + KERNEL_MARGIN_BITS) * mp.ln2
    height = mp.one
    while z * (mp.cosh(height) - 1) - nu * height < budget:
        height += 1
    result = integrateFinite(lambda t: mp.exp(-z * (mp.cosh(t) - 1)) * mp.cosh(nu * t),
                             0, height, ctx, label="besselKIntegral",
                             breakpoints=range(1, int(height)))
    return mp.exp(-z) * result.value


@lru_cache(maxsize=65536)
def rho(nu, x, ctx):
    """The weight rho_nu(x) = 2 x^(nu/2) K_nu(2 sqrt x), x > 0"""
    mp = ctx.mp
    x = ctx.mpf(x)
    if x <= 0:
        raise DomainError(f"rho needs x > 0, got {x}")
    nu = ctx.mpf(nu)
    return 2 * x ** (nu / 2) * besselK(nu, 2 * mp.sqrt(x), ctx)


def rhoOrZero(nu, x, ctx):
    """rho_nu(x), or zero once it drops below the underflow floor"""
    try:
        return rho(nu, x, ctx)
    except UnderflowError:
        return ctx.mp.zero


def rhoSquared(nu, x, ctx):
    return rho(nu, x, ctx) ** 2


def rhoProduct(nu, x, ctx):
    """u_nu(x) = rho_{nu+1}(x) rho_nu(x)"""
    return rho(ctx.mpf(nu) + 1, x, ctx) * rho(nu, x, ctx)


def laguerre(n, nu, t, ctx=None):
    """L_n^nu(t) by the three-term recurrence; exact for Fraction inputs when ctx is None"""
    if n < 0:
        raise DomainError(f"laguerre degree must be nonnegative, got {n}")
    if ctx is not None:
        nu = ctx.mpf(nu)
        t = ctx.mpf(t)
    previous, current = 0 * t, 1 + 0 * t
    for k in range(n):
        previous, current = current, ((2 * k + 1 + nu - t) * current - (k + nu) * previous) / (k + 1)
    return current


def laguerreCoefficients(n, nu, ctx=None):
    """Monomial coefficients of L_n^nu, lowest degree first"""
    if ctx is not None:
        nu = ctx.mpf(nu)
        one = ctx.mp.one
    else:
        one = 1
    coeffs = []
    factorialJ = 1
    for j in range(n + 1):
        if j:
            factorialJ *= j
        factorialRest = 1
        for i in range(2, n - j + 1):
            factorialRest *= i
        sign = -1 if j % 2 else 1
        coeffs.append(sign * one * pochhammer(nu + j + 1, n - j) / (factorialRest * factorialJ))
    return Polynomial(tuple(coeffs))


@lru_cache(maxsize=65536)
def tricomiU(a, b, x, ctx):
    """Confluent hypergeometric U(a, b, x) for a > 0, x > 0"""
    a = ctx.mpf(a)
    x = ctx.mpf(x)
    if a <= 0:
        raise DomainError(f"tricomiU is restricted to a > 0, got {a}")
    if x <= 0:
        raise DomainError(f"tricomiU needs x > 0, got {x}")
    return ctx.mp.hyperu(a, ctx.mpf(b), x)


def tricomiUIntegral(a, b, x, ctx):
    """U(a, b, x) from (1/Gamma(a)) int t^(a-1) (1+t)^(b-a-1) e^(-x t) dt"""
    mp = ctx.mp
    a = ctx.mpf(a)
    b = ctx.mpf(b)
    x = ctx.mpf(x)
    if a <= 0:
        raise DomainError(f"tricomiU is restricted to a > 0, got {a}")
    profile = EndpointProfile(float(a) - 1)
    result = integrateZeroInf(lambda t: t ** (a - 1) * (1 + t) ** (b - a - 1) * mp.exp(-x * t),
                              profile, ctx, label="tricomiUIntegral")
    return result.value / gamma(a, ctx)


def upperIncompleteGamma(a, z, ctx):
    """Gamma(a, z) = int_z^inf e^(-u) u^(a-1) du"""
    a = ctx.mpf(a)
    z = ctx.mpf(z)
    if z < 0:
        raise DomainError(f"upperIncompleteGamma needs z >= 0, got {z}")
    if z == 0:
        if a <= 0:
            raise DomainError(f"Gamma({a}, 0) diverges")
        return gamma(a, ctx)
    return ctx.mp.gammainc(a, z)


def upperIncompleteGammaIntegral(a, z, ctx):
    """Gamma(a, z) for z > 0 with e^(-z) pulled out of the tail integral"""
    mp = ctx.mp
    a = ctx.mpf(a)
    z = ctx.mpf(z)
    if z <= 0:
        raise DomainError("the integral route needs z > 0")
    result = integrateZeroInf(lambda u: (z + u) ** (a - 1) * mp.exp(-u), EndpointProfile(), ctx,
                              label="upperIncompleteGammaIntegral")
    return mp.exp(-z) * result.value


def hyp3f2Terminating(k, a2, a3, b1, b2, ctx=None):
    """
    3F2(-k, a2, a3; b1, b2; 1) as its (k+1)-term sum.

    Without a context the sum is carried in the arithmetic of the parameters,
    so Fraction parameters give exact values.
    """
    if k < 0:
        raise DomainError(f"terminating 3F2 needs k >= 0, got {k}")
    if ctx is not None:
        a2, a3, b1, b2 = (ctx.mpf(v) for v in (a2, a3, b1, b2))
        term = ctx.mp.one
    else:
        term = 1
    total = term
    for j in range(k):
        denominator = (b1 + j) * (b2 + j)
        if denominator == 0:
            raise PoleError(f"lower parameter reaches zero at term {j + 1}")
        term = term * (j - k) * (a2 + j) * (a3 + j) / (denominator * (j + 1))
        total += term
    return total


def _productLine(ctx, nu, shiftNumerator):
    nu = ctx.mpf(nu)
    return max(ctx.mp.zero, -nu, -2 * nu - shiftNumerator) + ctx.mpf(MELLIN_LINE_OFFSET)


def mbRhoSquaredSpec(nu, ctx):
    """Gamma-product integrand of the Mellin-Barnes form of rho_nu^2"""
    mp = ctx.mp
    nu = ctx.mpf(nu)
    return GammaProduct(numerator=((1, 2 * nu), (1, nu), (1, 0)),
                        denominator=((1, nu + mp.mpf(1) / 2),),
                        prefactor=2 * mp.sqrt(mp.pi) * mp.power(4, -nu),
                        argScale=4)


def mbRhoProductSpec(nu, ctx):
    """Gamma-product integrand of the Mellin-Barnes form of rho_{nu+1} rho_nu"""
    mp = ctx.mp
    nu = ctx.mpf(nu)
    return GammaProduct(numerator=((1, 2 * nu + 1), (1, nu), (1, 0)),
                        denominator=((1, nu + mp.mpf(1) / 2),),
                        prefactor=mp.sqrt(mp.pi) * mp.power(4, -nu),
                        argScale=4)


def mbRhoSquared(nu, x, ctx, gammaLine=None):
    """rho_nu(x)^2 by its Mellin-Barnes line integral; returns a MellinResult"""
    line = _productLine(ctx, nu, 0) if gammaLine is None else gammaLine
    return mellinLineIntegral(mbRhoSquaredSpec(nu, ctx), line, x, ctx)


def mbRhoProduct(nu, x, ctx, gammaLine=None):
    """rho_{nu+1}(x) rho_nu(x) by its Mellin-Barnes line integral; returns a MellinResult"""
    line = _productLine(ctx, nu, 1) if gammaLine is None else gammaLine
    return mellinLineIntegral(mbRhoProductSpec(nu, ctx), line, x, ctx)


@lru_cache(maxsize=65536)
def hermiteKernel(x, ctx):
    """int_0^inf exp(-x/t - t^2) dt/t for x > 0"""
    mp = ctx.mp
    x = ctx.mpf(x)
    if x <= 0:
        raise DomainError(f"hermiteKernel needs x > 0, got {x}")
    result = integrateZeroInf(lambda t: mp.exp(-x / t - t * t) / t, EndpointProfile(), ctx,
                              label="hermiteKernel")
    return result.value


def hermiteKernelMellin(x, ctx):
    """
    The same kernel through (1/2 sqrt pi) times the Gamma(s)^2 Gamma(s+1/2)
    line integral at argument x^2/4; returns a MellinResult
    """
    mp = ctx.mp
    x = ctx.mpf(x)
    spec = GammaProduct(numerator=((1, 0), (1, 0), (1, mp.mpf(1) / 2)),
                        prefactor=1 / (2 * mp.sqrt(mp.pi)))
    return mellinLineIntegral(spec, MELLIN_LINE_OFFSET, x * x / 4, ctx)


def laguerreRepCheck(nu, n, x, ctx):
    """
    Check int_0^inf t^(nu+n-1) e^(-t-x/t) L_n^nu(t) dt = (-1)^n x^n rho_nu(x) / n!.

    Returns:
        VerificationReport
    """
    mp = ctx.mp
    nu = ctx.mpf(nu)
    x = ctx.mpf(x)
    if nu <= -1 or (n == 0 and nu <= 0):
        raise DomainError(f"Laguerre representation needs nu > -1 (nu > 0 for n = 0), got {nu}")

    def integrand(t):
        return t ** (nu + n - 1) * mp.exp(-t - x / t) * laguerre(n, nu, t, ctx)

    lhs = integrateZeroInf(integrand, EndpointProfile(), ctx, label="laguerreRepCheck").value
    rhs = (-1) ** n * x ** n * rho(nu, x, ctx) / mp.factorial(n)
    return VerificationReport.fromValues(f"laguerre_representation[nu={mp.nstr(nu, 6)},n={n}]",
                                         "3.1", lhs, rhs, ctx)
