"""
Precision core for the Macdonald-weight orthogonal polynomial toolkit
Holds the precision/tolerance policy, the error hierarchy and the gamma-family helpers
"""

import logging
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import mpmath

logger = logging.getLogger(__name__)

DEFAULT_BITS = 320
DEFAULT_VERIFY_TOL = 1e-25
DEFAULT_QUAD_TARGET = 1e-40
MIN_BITS = 64


class ConfigurationError(ValueError):
    """Raised when a precision or run configuration is invalid"""


class NumericalError(ArithmeticError):
    """Base class for every numerical failure raised by the toolkit"""


class PoleError(NumericalError):
    """Argument hits a pole of a gamma-type function"""


class DomainError(NumericalError):
    """Argument outside the domain where the quantity is defined"""


class NonConvergenceError(NumericalError):
    """Quadrature or truncation did not reach its target"""


class UnderflowError(NumericalError):
    """Result is below the representable floor 2^(-2*bits)"""


class SingularSystemError(NumericalError):
    """Linear system is singular at working precision"""


class NullspaceDimensionError(SingularSystemError):
    """Homogeneous system does not have a one-dimensional nullspace"""


class PositivityLossError(NumericalError):
    """Hankel factorization pivots collapsed below the precision floor"""


class RouteMismatchError(NumericalError):
    """Two independent construction routes disagree beyond tolerance"""


class NonvanishingError(NumericalError):
    """An aggregate that must vanish identically did not"""


class PolynomialityError(AssertionError):
    """Negative powers survived where the calculus guarantees a polynomial"""


@dataclass(frozen=True)
class PrecisionContext:
    """
    Working precision plus tolerance policy, threaded through every computation.

    Each context owns a private mpmath context so that two contexts with
    different precisions never interfere.
    """
    bits: int = DEFAULT_BITS
    verifyTol: float = DEFAULT_VERIFY_TOL
    quadTarget: float = DEFAULT_QUAD_TARGET
    mp: mpmath.MPContext = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.bits, int) or self.bits < MIN_BITS:
            raise ConfigurationError(f"bits must be an integer >= {MIN_BITS}, got {self.bits!r}")
        if not (0 < self.quadTarget <= self.verifyTol < 1):
            raise ConfigurationError(
                f"need 0 < quadTarget <= verifyTol < 1, got quadTarget={self.quadTarget}, "
                f"verifyTol={self.verifyTol}")
        mpContext = mpmath.MPContext()
        mpContext.prec = self.bits
        object.__setattr__(self, 'mp', mpContext)

    def withBits(self, bits, verifyTol=None, quadTarget=None):
        """Return a copy at another precision, optionally with new tolerances"""
        return replace(self, bits=bits,
                       verifyTol=self.verifyTol if verifyTol is None else verifyTol,
                       quadTarget=self.quadTarget if quadTarget is None else quadTarget)

    def mpf(self, value):
        """Convert int, float, str, Fraction or mpf into a real of this context"""
        if isinstance(value, Fraction):
            return self.mp.mpf(value.numerator) / value.denominator
        return self.mp.mpf(value)

    @property
    def tol(self):
        return self.mp.mpf(self.verifyTol)

    @property
    def target(self):
        return self.mp.mpf(self.quadTarget)

    @property
    def pivotFloor(self):
        """Smallest admissible relative Hankel pivot, 2^(-bits/2)"""
        return self.mp.ldexp(1, -(self.bits // 2))

    @property
    def nullspaceGate(self):
        """Relative singular-value gate for nullspace extraction, 2^(-bits/3)"""
        return self.mp.ldexp(1, -(self.bits // 3))

    @property
    def underflowFloor(self):
        return self.mp.ldexp(1, -2 * self.bits)

    def residual(self, computed, expected):
        """
        Residual under the tolerance policy.

        Returns:
            (absolute, relative, policy) where policy is the relative residual
            when |expected| > 1 and the absolute residual otherwise
        """
        absolute = abs(computed - expected)
        magnitude = abs(expected)
        relative = absolute / magnitude if magnitude else absolute
        policy = relative if magnitude > 1 else absolute
        return absolute, relative, policy

    def agrees(self, computed, expected, tol=None):
        limit = self.tol if tol is None else self.mpf(tol)
        return self.residual(computed, expected)[2] <= limit


def _isNonPositiveInteger(ctx, x):
    return x <= 0 and ctx.mp.isint(x)


def gamma(x, ctx):
    """Euler gamma function at full working precision"""
    x = ctx.mpf(x)
    if _isNonPositiveInteger(ctx, x):
        raise PoleError(f"gamma has a pole at {x}")
    return ctx.mp.gamma(x)


def pochhammer(a, n, ctx=None):
    """
    Rising factorial (a)_n as a direct product.

    Without a context the product is taken in the arithmetic of `a` itself,
    so Fraction arguments stay exact.
    """
    if n < 0:
        raise DomainError(f"pochhammer needs a nonnegative count, got {n}")
    if ctx is not None:
        a = ctx.mpf(a)
        result = ctx.mp.one
    else:
        result = 1
    for i in range(n):
        result *= a + i
    return result


def logGammaComplex(s, ctx):
    """Principal branch of ln Gamma(s) for complex s"""
    s = ctx.mp.mpc(s)
    if s.imag == 0 and _isNonPositiveInteger(ctx, s.real):
        raise PoleError(f"log-gamma has a pole at {s.real}")
    return ctx.mp.loggamma(s)


def beta(a, b, ctx):
    """Euler beta function B(a, b) = Gamma(a)Gamma(b)/Gamma(a+b)"""
    a = ctx.mpf(a)
    b = ctx.mpf(b)
    if a <= 0 or b <= 0:
        raise DomainError(f"beta needs positive arguments, got ({a}, {b})")
    return ctx.mp.beta(a, b)


def gammaRatio(numerators, denominators, ctx):
    """
    Product of Gamma(num) over product of Gamma(den), evaluated in log space.

    All arguments must be positive; used for moment formulas whose factors
    overflow individually at large degree.
    """
    logSum = ctx.mp.zero
    for value in numerators:
        value = ctx.mpf(value)
        if value <= 0:
            raise DomainError(f"gamma argument {value} is not positive")
        logSum += ctx.mp.loggamma(value)
    for value in denominators:
        value = ctx.mpf(value)
        if value <= 0:
            raise DomainError(f"gamma argument {value} is not positive")
        logSum -= ctx.mp.loggamma(value)
    return ctx.mp.exp(logSum)


def defaultQuadLevel(bits):
    """Tanh-sinh level mpmath would pick for this precision"""
    return int(4 + max(0.0, math.log2(bits / 30.0))) + 2


def exactRational(value):
    """Exact Fraction for int, float, str, Fraction or finite mpf input"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, float, str)):
        return Fraction(value)
    magnitude = abs(value)
    rational = Fraction(int(magnitude.man)) * Fraction(2) ** int(magnitude.exp)
    return -rational if value < 0 else rational
