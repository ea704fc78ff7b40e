"""The field R(i) over the series field, with |x + iy| = sqrt(x^2 + y^2)."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import IndeterminateAtTruncation, NotInvertible, ZeroPolynomial
from .exact_core import APPROX, as_rational
from .series import (
    INF,
    Classification,
    Series,
    lower_bound,
    series_add,
    series_inv,
    series_mul,
    series_neg,
    series_sqrt,
    series_sub,
)

__all__ = [
    "ComplexSeries",
    "ComplexClass",
    "Perturbation",
    "cx_arith",
    "cx_abs",
    "cx_classify",
    "algebraic_unit_bound",
    "check_infinitesimal_perturbation",
]

ComplexClass = Classification


@dataclass(frozen=True)
class ComplexSeries:
    re: Series
    im: Series = Series()

    @classmethod
    def from_coefficients(cls, s: Series) -> "ComplexSeries":
        """Split a series with complex coefficients into real and imaginary parts."""
        re = Series([(e, complex(c).real) for e, c in s.terms], s.trunc, APPROX)
        im = Series([(e, complex(c).imag) for e, c in s.terms], s.trunc, APPROX)
        return cls(re, im)

    @classmethod
    def of(cls, re, im=0) -> "ComplexSeries":
        coerce = lambda v: v if isinstance(v, Series) else Series.const(v)  # noqa: E731
        return cls(coerce(re), coerce(im))

    @property
    def is_zero(self) -> bool:
        return self.re.is_zero and self.im.is_zero

    def to_approx(self) -> "ComplexSeries":
        return ComplexSeries(self.re.to_approx(), self.im.to_approx())

    def __add__(self, w):
        return cx_arith("add", self, w)

    def __sub__(self, w):
        return cx_arith("sub", self, w)

    def __mul__(self, w):
        return cx_arith("mul", self, w)

    def __truediv__(self, w):
        return cx_arith("div", self, w)

    def __neg__(self):
        return ComplexSeries(series_neg(self.re), series_neg(self.im))

    def __str__(self) -> str:
        from .parser import format_complex

        return format_complex(self)


def _norm2(z: ComplexSeries) -> Series:
    return series_add(series_mul(z.re, z.re), series_mul(z.im, z.im))


def cx_arith(op: str, z: ComplexSeries, w: ComplexSeries | None = None, order=None) -> ComplexSeries:
    if op == "conj":
        return ComplexSeries(z.re, series_neg(z.im))
    if op == "neg":
        return -z
    if w is None:
        raise TypeError(f"{op} needs two operands")
    if op == "add":
        return ComplexSeries(series_add(z.re, w.re), series_add(z.im, w.im))
    if op == "sub":
        return ComplexSeries(series_sub(z.re, w.re), series_sub(z.im, w.im))
    if op == "mul":
        return ComplexSeries(
            series_sub(series_mul(z.re, w.re), series_mul(z.im, w.im)),
            series_add(series_mul(z.re, w.im), series_mul(z.im, w.re)),
        )
    if op == "div":
        if w.is_zero:
            raise NotInvertible("division by exact zero")
        inv_norm = series_inv(_norm2(w), order)
        num = cx_arith("mul", z, cx_arith("conj", w))
        return ComplexSeries(series_mul(num.re, inv_norm), series_mul(num.im, inv_norm))
    raise ValueError(f"unknown complex operation {op!r}")


def cx_abs(z: ComplexSeries, order=None) -> Series:
    """Absolute value sqrt(re^2 + im^2), computed in the components' domain."""
    n2 = _norm2(z)
    if n2.is_zero:
        return n2
    return series_sqrt(n2, order)


def cx_classify(z: ComplexSeries) -> Classification:
    """Zero / Infinitesimal / Unit / Infinite from the smaller component valuation."""
    if z.is_zero:
        return Classification.ZERO
    known = [s.terms[0][0] for s in (z.re, z.im) if s.terms]
    bounds = [s.trunc for s in (z.re, z.im) if not s.terms and s.trunc != INF]
    if not known:
        raise IndeterminateAtTruncation("both components are unknown below their truncation")
    v = min(known)
    if any(b <= v for b in bounds):
        raise IndeterminateAtTruncation("a component may still undercut the known valuation")
    if v > 0:
        return Classification.INFINITESIMAL
    return Classification.UNIT if v == 0 else Classification.INFINITE


def algebraic_unit_bound(coefficients) -> Fraction:
    """Root-modulus bound ``1 + (d/|q0|) * max_{k>=1} |q_k|`` for
    ``q0 x^d + q1 x^(d-1) + ... + qd`` (coefficients leading first)."""
    q = [as_rational(c) for c in coefficients]
    while q and q[0] == 0:
        q.pop(0)
    if len(q) < 2:
        raise ZeroPolynomial("need a polynomial of degree >= 1 with nonzero leading coefficient")
    d = len(q) - 1
    return 1 + Fraction(d) / abs(q[0]) * max(abs(c) for c in q[1:])


class Perturbation(enum.Enum):
    CONSISTENT = "Consistent"
    VIOLATION = "Violation"

    def __str__(self) -> str:
        return self.value


def _is_constant(z: ComplexSeries) -> bool:
    return all(s.is_exact and all(e == 0 for e, _ in s.terms) for s in (z.re, z.im))


def check_infinitesimal_perturbation(z, dx: ComplexSeries) -> Perturbation:
    """For a Gaussian rational ``z``: z + dx is a constant iff dx == 0."""
    if isinstance(z, tuple):
        zc = ComplexSeries.of(as_rational(z[0]), as_rational(z[1]))
    else:
        zc = ComplexSeries.of(as_rational(z))
    moved = cx_arith("add", zc, dx)
    ok = _is_constant(moved) == dx.is_zero
    return Perturbation.CONSISTENT if ok else Perturbation.VIOLATION


def lower_valuation_bound(z: ComplexSeries):
    return min(lower_bound(z.re), lower_bound(z.im))
