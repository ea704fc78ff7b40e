"""Exact rational arithmetic and the coefficient-domain contract.

``Rational`` is :class:`fractions.Fraction`; it already keeps the canonical
form (positive denominator, reduced, zero as 0/1).  The helpers below add the
error vocabulary of this package on top of it.

Three coefficient domains exist:

* ``EXACT`` -- :class:`ExactRational`, the default.
* ``APPROX`` -- :class:`ApproxReal`, binary64 floats.  Anything with
  ``abs(c) <= tol`` (default 1e-12) is treated as zero, so comparisons in this
  mode are approximate.
* ``COMPLEX_APPROX`` -- :class:`ComplexApprox`, Python complex numbers.  Used
  internally for non-real polynomial branches; it is not ordered.
"""

from __future__ import annotations

import cmath
import enum
import math
import re
from fractions import Fraction
from numbers import Rational as _RationalABC

from .errors import (
    CoefficientRootUnavailable,
    DivisionByZero,
    DomainError,
    NegativeLeadingCoefficient,
    ZeroDenominator,
)

Rational = Fraction

try:  # machine-backed rationals for inner loops; results are always Fraction
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover
    _mpq = None


def to_work(q: Fraction):
    """Rational in the fastest available representation for bulk arithmetic."""
    return _mpq(q.numerator, q.denominator) if _mpq is not None else q


def from_work(q) -> Fraction:
    return q if isinstance(q, Fraction) else Fraction(int(q.numerator), int(q.denominator))

__all__ = [
    "Rational",
    "Ordering",
    "rat_normalize",
    "rat_arith",
    "rat_compare",
    "parse_rational",
    "format_rational",
    "as_rational",
    "integer_root",
    "CoefficientDomain",
    "ExactRational",
    "ApproxReal",
    "ComplexApprox",
    "EXACT",
    "APPROX",
    "COMPLEX_APPROX",
    "promote",
]


class Ordering(enum.Enum):
    LT = "LT"
    EQ = "EQ"
    GT = "GT"
    INDETERMINATE = "IndeterminateAtTruncation"

    @classmethod
    def from_sign(cls, s: int) -> "Ordering":
        return cls.LT if s < 0 else cls.GT if s > 0 else cls.EQ

    def __str__(self) -> str:
        return self.value


def rat_normalize(n: int, d: int) -> Fraction:
    if d == 0:
        raise ZeroDenominator(f"zero denominator in {n}/{d}")
    return Fraction(n, d)


def rat_arith(op: str, a: Fraction, b: Fraction) -> Fraction:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise DivisionByZero(f"{a} / 0")
        return a / b
    raise ValueError(f"unknown rational operation {op!r}")


def rat_compare(a: Fraction, b: Fraction) -> Ordering:
    # Fraction compares by cross-multiplication
    return Ordering.from_sign((a > b) - (a < b))


_RAT_RE = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*([+-]?\d+))?\s*\Z")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into canonical form."""
    m = _RAT_RE.match(text)
    if not m:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    return rat_normalize(num, den)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and rational strings; refuse floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def integer_root(k: int, n: int) -> int | None:
    """Exact nonnegative n-th root of ``k >= 0``, or None."""
    if k < 0:
        raise ValueError("negative radicand")
    if k < 2:
        return k
    if n == 2:
        r = math.isqrt(k)
        return r if r * r == k else None
    # Newton iteration on integers, starting above the root
    r = 1 << -(-k.bit_length() // n)
    while True:
        s = ((n - 1) * r + k // r ** (n - 1)) // n
        if s >= r:
            break
        r = s
    return r if r**n == k else None


class CoefficientDomain:
    """Contract for a coefficient field: zero, one, add, neg, mul, inv,
    compare-with-zero and an optional principal real root."""

    name = "abstract"
    rank = 0
    ordered = True

    def __init__(self, tol: float = 0.0):
        self.tol = tol

    @property
    def zero(self):
        return self.convert(0)

    @property
    def one(self):
        return self.convert(1)

    def convert(self, value):
        raise NotImplementedError

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if self.is_zero(a):
            raise DivisionByZero("inverse of zero coefficient")
        return self.one / a

    def is_zero(self, c) -> bool:
        raise NotImplementedError

    def sign(self, c) -> int:
        raise NotImplementedError

    def root(self, c, n: int):
        raise NotImplementedError

    def sqrt(self, c):
        return self.root(c, 2)

    def format(self, c) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"{type(self).__name__}(tol={self.tol!r})" if self.tol else f"{type(self).__name__}()"


class ExactRational(CoefficientDomain):
    name = "exact"
    rank = 0

    def convert(self, value):
        return as_rational(value)

    def is_zero(self, c) -> bool:
        return c == 0

    def sign(self, c) -> int:
        return (c > 0) - (c < 0)

    def root(self, c, n: int):
        if n < 1:
            raise ValueError("root index must be positive")
        if c < 0:
            if n % 2 == 0:
                raise NegativeLeadingCoefficient(f"even root of negative coefficient {c}")
            return -self.root(-c, n)
        num = integer_root(c.numerator, n)
        den = integer_root(c.denominator, n)
        if num is None or den is None:
            raise CoefficientRootUnavailable(
                f"{format_rational(c)} has no rational root of degree {n}; use approximate coefficients"
            )
        return Fraction(num, den)

    def format(self, c) -> str:
        return format_rational(c)


class ApproxReal(CoefficientDomain):
    name = "approx"
    rank = 1

    def __init__(self, tol: float = 1e-12):
        super().__init__(tol)

    def convert(self, value):
        if isinstance(value, complex):
            if value.imag != 0:
                raise TypeError("complex value in a real domain")
            value = value.real
        return float(value)

    def is_zero(self, c) -> bool:
        return abs(c) <= self.tol

    def sign(self, c) -> int:
        if abs(c) <= self.tol:
            return 0
        return 1 if c > 0 else -1

    def root(self, c, n: int):
        if c < 0:
            if n % 2 == 0:
                raise NegativeLeadingCoefficient(f"even root of negative coefficient {c!r}")
            return -((-c) ** (1.0 / n))
        if n == 2:
            return math.sqrt(c)
        return c ** (1.0 / n)

    def format(self, c) -> str:
        return repr(float(c))


class ComplexApprox(CoefficientDomain):
    name = "complex"
    rank = 2
    ordered = False

    def __init__(self, tol: float = 1e-12):
        super().__init__(tol)

    def convert(self, value):
        return complex(value)

    def is_zero(self, c) -> bool:
        return abs(c) <= self.tol

    def sign(self, c) -> int:
        raise DomainError("complex coefficients carry no order")

    def root(self, c, n: int):
        # principal branch
        return cmath.exp(cmath.log(c) / n) if c != 0 else 0j

    def format(self, c) -> str:
        return repr(complex(c))


EXACT = ExactRational()
APPROX = ApproxReal()
COMPLEX_APPROX = ComplexApprox()


def promote(a: CoefficientDomain, b: CoefficientDomain) -> CoefficientDomain:
    return a if a.rank >= b.rank else b
