import logging
from fractions import Fraction
from math import lcm
from typing import Iterable, List, Sequence, Tuple, Union

from core.exceptions import DomainError
from utils.helpers import format_fraction

# Set up logging
logger = logging.getLogger(__name__)

RationalLike = Union[int, str, Fraction]


def to_rational(value: RationalLike) -> Fraction:
    """
    Convert an integer, a "p/q" string or a Fraction into a reduced Fraction

    Args:
        value (RationalLike): Value to convert

    Returns:
        Fraction: Reduced rational with positive denominator

    Raises:
        DomainError: If the value is a float or an unparsable string
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise DomainError(f"Exact rational expected, got {type(value).__name__}: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    try:
        text = str(value).strip()
        if "." in text or "e" in text.lower():
            raise ValueError("decimal notation")
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise DomainError(f"Invalid rational {value!r}: {e}") from e


def _normalize(coeffs: Iterable[RationalLike]) -> Tuple[Fraction, ...]:
    values = [to_rational(c) for c in coeffs]
    n = len(values)
    while n and values[n - 1] == 0:
        n -= 1
    return tuple(values[:n])


class ExactPoly:
    """
    Dense univariate polynomial with rational coefficients.

    Index j of ``coeffs`` holds the coefficient of x^j. The highest stored
    coefficient is nonzero; the zero polynomial stores no coefficients.
    Instances are immutable.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        object.__setattr__(self, "_coeffs", _normalize(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("ExactPoly is immutable")

    # Constructors

    @classmethod
    def constant(cls, value: RationalLike) -> "ExactPoly":
        return cls([value])

    @classmethod
    def x(cls) -> "ExactPoly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, degree: int, coeff: RationalLike = 1) -> "ExactPoly":
        return cls([0] * degree + [coeff])

    @classmethod
    def from_linear_factors(cls, shifts: Sequence[RationalLike]) -> "ExactPoly":
        """Build the product of (x + s) over the given shifts"""
        result = cls.constant(1)
        for s in shifts:
            result = result * cls([s, 1])
        return result

    # Basic properties

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree of the polynomial, -1 for the zero polynomial"""
        return len(self._coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_constant(self) -> bool:
        return len(self._coeffs) <= 1

    def is_monic(self) -> bool:
        return self.leading == 1

    def coefficient(self, j: int) -> Fraction:
        if 0 <= j < len(self._coeffs):
            return self._coeffs[j]
        return Fraction(0)

    # Arithmetic

    def __add__(self, other: "ExactPoly") -> "ExactPoly":
        other = _coerce(other)
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        res = list(a)
        for i, c in enumerate(b):
            res[i] += c
        return ExactPoly(res)

    __radd__ = __add__

    def __neg__(self) -> "ExactPoly":
        return ExactPoly(-c for c in self._coeffs)

    def __sub__(self, other: "ExactPoly") -> "ExactPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other: "ExactPoly") -> "ExactPoly":
        return _coerce(other) - self

    def __mul__(self, other: "ExactPoly") -> "ExactPoly":
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return ExactPoly()
        res = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                res[i + j] += a * b
        return ExactPoly(res)

    __rmul__ = __mul__

    def scale(self, factor: RationalLike) -> "ExactPoly":
        """Multiply every coefficient by a rational scalar"""
        f = to_rational(factor)
        return ExactPoly(c * f for c in self._coeffs)

    def derivative(self) -> "ExactPoly":
        return ExactPoly(j * c for j, c in enumerate(self._coeffs) if j > 0)

    def times_x(self, power: int = 1) -> "ExactPoly":
        if self.is_zero():
            return self
        return ExactPoly([0] * power + list(self._coeffs))

    def reflect(self) -> "ExactPoly":
        """Substitute x -> -x"""
        return ExactPoly(c if j % 2 == 0 else -c for j, c in enumerate(self._coeffs))

    def __call__(self, point: RationalLike) -> Fraction:
        """Exact Horner evaluation at a rational point"""
        x = to_rational(point)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, point: RationalLike) -> int:
        value = self(point)
        return (value > 0) - (value < 0)

    def divmod(self, divisor: "ExactPoly") -> Tuple["ExactPoly", "ExactPoly"]:
        """
        Exact polynomial long division

        Args:
            divisor (ExactPoly): Nonzero divisor

        Returns:
            Tuple[ExactPoly, ExactPoly]: Quotient and remainder with deg(rem) < deg(divisor)

        Raises:
            DomainError: If the divisor is the zero polynomial
        """
        divisor = _coerce(divisor)
        if divisor.is_zero():
            raise DomainError("Polynomial division by the zero polynomial")
        rem = list(self._coeffs)
        d = divisor.degree
        lead = divisor.leading
        if len(rem) - 1 < d:
            return ExactPoly(), self
        quot = [Fraction(0)] * (len(rem) - d)
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k] / lead
            if c == 0:
                continue
            quot[k - d] = c
            for i, b in enumerate(divisor._coeffs):
                rem[k - d + i] -= c * b
        return ExactPoly(quot), ExactPoly(rem[:d])

    def __floordiv__(self, other: "ExactPoly") -> "ExactPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "ExactPoly") -> "ExactPoly":
        return self.divmod(other)[1]

    def monic(self) -> "ExactPoly":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading)

    def gcd(self, other: "ExactPoly") -> "ExactPoly":
        """Monic greatest common divisor; gcd(0, 0) is the zero polynomial"""
        a, b = self.monic(), _coerce(other).monic()
        while not b.is_zero():
            a, b = b, (a % b).monic()
        return a

    # Structure

    def lowest_degree(self) -> int:
        """Index of the lowest nonzero coefficient (multiplicity of the root x=0)"""
        if self.is_zero():
            raise DomainError("The zero polynomial has no lowest nonzero coefficient")
        return next(j for j, c in enumerate(self._coeffs) if c != 0)

    def strip_x_power(self) -> Tuple[int, "ExactPoly"]:
        """Split p = x^k q with q(0) != 0"""
        k = self.lowest_degree()
        return k, ExactPoly(self._coeffs[k:])

    def integer_coefficients(self) -> List[int]:
        """Coefficients scaled by the lcm of the denominators"""
        scale = 1
        for c in self._coeffs:
            scale = lcm(scale, c.denominator)
        return [int(c * scale) for c in self._coeffs]

    def cauchy_bound(self) -> Fraction:
        """Every real root lies in (-B, B) with B = 1 + max|c_j / lead|"""
        if self.is_zero():
            raise DomainError("The zero polynomial has no root bound")
        lead = abs(self.leading)
        return 1 + max((abs(c) / lead for c in self._coeffs[:-1]), default=Fraction(0))

    # Dunder plumbing

    def __eq__(self, other) -> bool:
        if isinstance(other, ExactPoly):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self._coeffs == _normalize([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __repr__(self) -> str:
        return f"ExactPoly([{', '.join(format_fraction(c) for c in self._coeffs)}])"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for j in range(self.degree, -1, -1):
            c = self._coeffs[j]
            if c == 0:
                continue
            mag = format_fraction(abs(c))
            if j == 0:
                body = mag
            else:
                power = "x" if j == 1 else f"x^{j}"
                body = power if abs(c) == 1 else f"{mag}*{power}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text

    def to_strings(self) -> List[str]:
        """Coefficient list as exact rational strings, lowest degree first"""
        return [format_fraction(c) for c in self._coeffs] or ["0"]


def _coerce(value) -> ExactPoly:
    if isinstance(value, ExactPoly):
        return value
    return ExactPoly.constant(value)
