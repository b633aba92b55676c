"""
Dense polynomial over high-precision reals
Coefficients are stored lowest degree first; instances are immutable
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Polynomial:
    """Dense coefficient vector c_0 + c_1 x + ... + c_d x^d"""
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if not coeffs:
            coeffs = (0,)
        object.__setattr__(self, 'coeffs', coeffs)

    @classmethod
    def constant(cls, value):
        return cls((value,))

    @classmethod
    def monomial(cls, degree, coefficient=1):
        return cls((0,) * degree + (coefficient,))

    @property
    def degree(self):
        """Index of the highest stored coefficient that is not exactly zero"""
        for k in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[k] != 0:
                return k
        return 0

    @property
    def leadingCoefficient(self):
        return self.coeffs[self.degree]

    def coefficient(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def trimmed(self):
        return Polynomial(self.coeffs[:self.degree + 1])

    def __call__(self, x):
        # Horner
        result = 0
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(tuple(self.coefficient(k) + other.coefficient(k) for k in range(size)))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other if isinstance(other, Polynomial) else -other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial(tuple(c * other for c in self.coeffs))
        product = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                product[i + j] += a * b
        return Polynomial(tuple(product))

    __rmul__ = __mul__

    def mulX(self, power=1):
        """Multiply by x^power"""
        return Polynomial((0,) * power + self.coeffs)

    def derivative(self):
        if len(self.coeffs) == 1:
            return Polynomial((0 * self.coeffs[0],))
        return Polynomial(tuple(k * self.coeffs[k] for k in range(1, len(self.coeffs))))

    def maxAbsCoefficient(self):
        return max(abs(c) for c in self.coeffs)

    def toStrings(self, nstr, digits=30):
        """Coefficients rendered with the given mpmath nstr, lowest degree first"""
        return [nstr(c, digits) for c in self.coeffs]
