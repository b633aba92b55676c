"""
Quadrature engine
Double-exponential integration on (0, inf) and finite intervals, and
vertical-line Mellin-Barnes integrals; the oracle for every identity check
"""

import logging
from dataclasses import dataclass
from enum import Enum

from precisionCore import (DomainError, NonConvergenceError, PoleError,
                           defaultQuadLevel, logGammaComplex)

logger = logging.getLogger(__name__)

LEVEL_HEADROOM = 3
MELLIN_START_HEIGHT = 4
MELLIN_MAX_HEIGHT = 4096
MELLIN_PANEL = 2


class DecayClass(Enum):
    """Decay of the integrand as x -> inf"""
    EXPONENTIAL = "exp(-c x)"
    SQRT_EXPONENTIAL = "exp(-c sqrt x)"
    GAUSSIAN = "exp(-c x^2)"
    POWER = "power"


@dataclass(frozen=True)
class EndpointProfile:
    """Behaviour of an integrand at 0 (x^sigma, optional log factor) and at infinity"""
    singExpAtZero: float = 0.0
    logAtZero: bool = False
    decay: DecayClass = DecayClass.EXPONENTIAL

    def __post_init__(self):
        if self.singExpAtZero <= -1:
            raise DomainError(f"endpoint exponent {self.singExpAtZero} is not integrable")


@dataclass(frozen=True)
class QuadResult:
    value: object
    errEstimate: object
    levelsUsed: int
    converged: bool = True


@dataclass(frozen=True)
class MellinResult:
    """Real part of a Mellin-Barnes line integral plus its imaginary residue"""
    value: object
    imagPart: object
    errEstimate: object
    truncation: object


def _escalate(ctx, integrand, points, label, startBoost=0):
    """Run tanh-sinh with increasing level caps until the error meets quadTarget"""
    mp = ctx.mp
    base = defaultQuadLevel(ctx.bits)
    level = max(3, base - 2 + startBoost)
    cap = base + LEVEL_HEADROOM
    value = error = None
    while level <= cap:
        value, error = mp.quad(integrand, points, error=True, maxdegree=level)
        error = abs(error)
        if error <= ctx.target * max(mp.one, abs(value)):
            return QuadResult(value, error, level, True)
        logger.debug("%s: level %d error %s, escalating", label, level, mp.nstr(error, 3))
        level += 1
    raise NonConvergenceError(
        f"{label}: error estimate {mp.nstr(error, 5)} above target after level {cap}")


def integrateZeroInf(f, profile, ctx, label="integrateZeroInf"):
    """
    Integrate f over (0, inf).

    Args:
        f: integrand taking one real of ctx
        profile: EndpointProfile describing the endpoint behaviour
        ctx: PrecisionContext

    Returns:
        QuadResult whose error estimate meets quadTarget * max(1, |value|)
    """
    mp = ctx.mp
    if profile.decay is DecayClass.SQRT_EXPONENTIAL:
        def integrand(u):
            return 2 * u * f(u * u)
    else:
        integrand = f
    return _escalate(ctx, integrand, [0, 1, mp.inf], label, 2 if profile.logAtZero else 0)


def integrateFinite(f, a, b, ctx, singAtA=0.0, singAtB=0.0, label="integrateFinite", breakpoints=()):
    """Integrate f over [a, b]; integrable algebraic singularities allowed at the endpoints"""
    a = ctx.mpf(a)
    b = ctx.mpf(b)
    if not a < b:
        raise DomainError(f"need a < b, got [{a}, {b}]")
    if singAtA <= -1 or singAtB <= -1:
        raise DomainError("endpoint singularity is not integrable")
    inner = sorted(ctx.mpf(p) for p in breakpoints if a < p < b)
    return _escalate(ctx, f, [a] + inner + [b], label)


@dataclass(frozen=True)
class GammaProduct:
    """
    Integrand prefactor * prod Gamma(a_i s + b_i) / prod Gamma(c_j s + d_j) * (argScale x)^(-s).

    numerator, denominator: tuples of (scale, shift) pairs with positive scale.
    """
    numerator: tuple
    denominator: tuple = ()
    prefactor: object = 1
    argScale: object = 1

    def leftmostAllowedLine(self):
        """Contour must lie right of every numerator pole"""
        return max(-shift / scale for scale, shift in self.numerator)

    def logValue(self, s, ctx):
        total = ctx.mp.zero
        for scale, shift in self.numerator:
            total += logGammaComplex(scale * s + shift, ctx)
        for scale, shift in self.denominator:
            total -= logGammaComplex(scale * s + shift, ctx)
        return total


def mellinLineIntegral(spec, gammaLine, x, ctx):
    """
    (1/2 pi i) * integral over Re s = gammaLine of spec(s) (argScale x)^(-s) ds.

    The vertical line is truncated symmetrically at |Im s| = T where the
    integrand has decayed below quadTarget relative to its value on the real
    axis, and the truncated line is split into panels integrated by tanh-sinh.
    """
    mp = ctx.mp
    gammaLine = ctx.mpf(gammaLine)
    x = ctx.mpf(x)
    if x <= 0:
        raise DomainError("Mellin-Barnes evaluation needs x > 0")
    for scale, shift in spec.numerator:
        pole = (-ctx.mpf(shift)) / scale
        if gammaLine <= pole:
            if mp.isint(gammaLine * scale + shift) and gammaLine * scale + shift <= 0:
                raise PoleError(f"contour Re s = {gammaLine} passes through a pole")
            raise DomainError(f"contour Re s = {gammaLine} lies left of the pole at {pole}")
    logArg = mp.log(ctx.mpf(spec.argScale) * x)
    logPrefactor = mp.log(ctx.mpf(spec.prefactor)) if spec.prefactor != 1 else mp.zero

    def integrand(y):
        s = mp.mpc(gammaLine, y)
        return mp.exp(spec.logValue(s, ctx) + logPrefactor - s * logArg)

    reference = abs(integrand(mp.zero))
    height = ctx.mpf(MELLIN_START_HEIGHT)
    while abs(integrand(height)) > ctx.target * reference * mp.mpf('1e-3'):
        height *= 2
        if height > MELLIN_MAX_HEIGHT:
            raise NonConvergenceError("Mellin-Barnes integrand does not decay along the line")
    panels = int(mp.ceil(height / MELLIN_PANEL))
    points = [-height + k * (2 * height / (2 * panels)) for k in range(2 * panels + 1)]
    result = _escalate(ctx, integrand, points, "mellinLineIntegral")
    total = result.value / (2 * mp.pi)
    return MellinResult(mp.re(total), mp.im(total), result.errEstimate / (2 * mp.pi), height)
