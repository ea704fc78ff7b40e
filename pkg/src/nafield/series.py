"""Truncated generalized power series in a positive infinitesimal ``t``.

A :class:`Series` is a finite, strictly ascending list of ``(exponent,
coefficient)`` pairs plus a truncation order ``trunc``: the element is known
modulo terms of exponent >= ``trunc``.  ``trunc == inf`` means the listed
terms are the whole element.  Exponents are exact rationals, so every Puiseux
series (and every finite-support Levi-Civita element with rational exponents)
is representable to any finite order.

The order is the one where a nonzero element is positive iff the coefficient of
its lowest power of ``t`` is positive.  ``t`` is then a positive infinitesimal
and ``1/t`` is infinitely large.
"""

from __future__ import annotations

import enum
import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import qpoly
from .errors import (
    IndeterminateAtTruncation,
    NotFinite,
    NotInvertible,
    UnsupportedRule,
)
from .exact_core import (
    APPROX,
    COMPLEX_APPROX,
    EXACT,
    CoefficientDomain,
    Ordering,
    as_rational,
    from_work,
    promote,
    to_work,
)

INF = math.inf

# relative precision used when an exact input needs an infinite expansion
DEFAULT_ORDER = Fraction(16)

__all__ = [
    "INF",
    "DEFAULT_ORDER",
    "Series",
    "ValuationOutcome",
    "Classification",
    "SupportClass",
    "SupportDescriptor",
    "series_make",
    "valuation",
    "lower_bound",
    "series_add",
    "series_neg",
    "series_sub",
    "series_mul",
    "series_inv",
    "series_div",
    "series_pow",
    "series_sqrt",
    "series_nth_root",
    "series_compare",
    "classify",
    "standard_part",
    "in_infinitesimals",
    "validate_support",
    "monoid",
    "T",
]


class ValuationOutcome(enum.Enum):
    ZERO_ELEMENT = "ZeroElement"
    INDETERMINATE = "IndeterminateAtTruncation"

    def __str__(self) -> str:
        return self.value


class Classification(enum.Enum):
    ZERO = "Zero"
    INFINITESIMAL = "Infinitesimal"
    UNIT = "Unit"
    INFINITE = "Infinite"

    def __str__(self) -> str:
        return self.value


def _as_trunc(value) -> Fraction | float:
    if value is None or value == INF:
        return INF
    return as_rational(value)


def _infer_domain(coeffs: Iterable) -> CoefficientDomain:
    dom = EXACT
    for c in coeffs:
        if isinstance(c, complex):
            return COMPLEX_APPROX
        if isinstance(c, float):
            dom = APPROX
    return dom


class Series:
    """Immutable truncated series; build with :func:`series_make`."""

    __slots__ = ("terms", "trunc", "domain")

    terms: tuple[tuple[Fraction, object], ...]
    trunc: Fraction | float
    domain: CoefficientDomain

    def __init__(self, terms=(), trunc=INF, domain: CoefficientDomain | None = None):
        s = series_make(terms, trunc, domain)
        object.__setattr__(self, "terms", s.terms)
        object.__setattr__(self, "trunc", s.trunc)
        object.__setattr__(self, "domain", s.domain)

    @classmethod
    def _raw(cls, terms: tuple, trunc, domain: CoefficientDomain) -> "Series":
        obj = object.__new__(cls)
        object.__setattr__(obj, "terms", terms)
        object.__setattr__(obj, "trunc", trunc)
        object.__setattr__(obj, "domain", domain)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    # constructors -----------------------------------------------------------

    @classmethod
    def const(cls, c, domain: CoefficientDomain | None = None) -> "Series":
        return series_make([(0, c)], INF, domain)

    @classmethod
    def monomial(cls, c, exponent, domain: CoefficientDomain | None = None) -> "Series":
        return series_make([(exponent, c)], INF, domain)

    @classmethod
    def zero(cls, trunc=INF, domain: CoefficientDomain = EXACT) -> "Series":
        return cls._raw((), _as_trunc(trunc), domain)

    # inspection -------------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.trunc == INF

    @property
    def is_zero(self) -> bool:
        """True only for the exact zero element."""
        return not self.terms and self.trunc == INF

    @property
    def is_determinate(self) -> bool:
        return bool(self.terms) or self.trunc == INF

    @property
    def leading(self):
        return self.terms[0] if self.terms else None

    def coefficient(self, exponent):
        e = as_rational(exponent)
        if e >= self.trunc:
            raise IndeterminateAtTruncation(f"coefficient of t^{e} lies beyond O(t^{self.trunc})")
        for ex, c in self.terms:
            if ex == e:
                return c
        return self.domain.zero

    def truncate(self, order) -> "Series":
        order = _as_trunc(order)
        if order >= self.trunc:
            return self
        return Series._raw(tuple(tc for tc in self.terms if tc[0] < order), order, self.domain)

    def to_domain(self, domain: CoefficientDomain) -> "Series":
        if domain is self.domain:
            return self
        return series_make([(e, domain.convert(c)) for e, c in self.terms], self.trunc, domain)

    def to_approx(self) -> "Series":
        return self if self.domain.rank >= APPROX.rank else self.to_domain(APPROX)

    def shift(self, exponent) -> "Series":
        """Multiply by ``t**exponent``."""
        e = as_rational(exponent)
        return Series._raw(tuple((x + e, c) for x, c in self.terms), self.trunc + e, self.domain)

    def scale(self, c) -> "Series":
        return series_mul(self, Series.const(c))

    # python protocol --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, float)):
            other = Series.const(other)
        if not isinstance(other, Series):
            return NotImplemented
        return self.terms == other.terms and self.trunc == other.trunc

    def __hash__(self) -> int:
        return hash((self.terms, self.trunc))

    def __repr__(self) -> str:
        return f"Series({self!s})"

    def __str__(self) -> str:
        from .parser import format_series

        return format_series(self)

    def __neg__(self) -> "Series":
        return series_neg(self)

    def __add__(self, other) -> "Series":
        return series_add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other) -> "Series":
        return series_sub(self, _coerce(other))

    def __rsub__(self, other) -> "Series":
        return series_sub(_coerce(other), self)

    def __mul__(self, other) -> "Series":
        return series_mul(self, _coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Series":
        return series_div(self, _coerce(other))

    def __rtruediv__(self, other) -> "Series":
        return series_div(_coerce(other), self)

    def __pow__(self, alpha) -> "Series":
        return series_pow(self, alpha)


def _coerce(x) -> Series:
    if isinstance(x, Series):
        return x
    if isinstance(x, (int, Fraction, float, complex)):
        return Series.const(x)
    raise TypeError(f"cannot combine Series with {type(x).__name__}")


def _canon(acc: dict, trunc, domain: CoefficientDomain) -> Series:
    is_zero = domain.is_zero
    terms = tuple(sorted((e, c) for e, c in acc.items() if e < trunc and not is_zero(c)))
    return Series._raw(terms, trunc, domain)


def series_make(terms: Iterable = (), trunc=INF, domain: CoefficientDomain | None = None) -> Series:
    """Canonical Series: duplicates merged, zeros dropped, terms >= trunc dropped."""
    terms = [(as_rational(e), c) for e, c in terms]
    if domain is None:
        domain = _infer_domain(c for _, c in terms)
    acc: dict = {}
    for e, c in terms:
        c = domain.convert(c)
        acc[e] = acc[e] + c if e in acc else c
    return _canon(acc, _as_trunc(trunc), domain)


def T(exponent=1) -> Series:
    """The generator ``t`` (or an exact power of it)."""
    return Series._raw(((as_rational(exponent), Fraction(1)),), INF, EXACT)


# valuation ------------------------------------------------------------------


def valuation(x: Series):
    """Lowest exponent with a nonzero coefficient, or a :class:`ValuationOutcome`."""
    if x.terms:
        return x.terms[0][0]
    return ValuationOutcome.ZERO_ELEMENT if x.trunc == INF else ValuationOutcome.INDETERMINATE


def lower_bound(x: Series):
    """A certified lower bound for the valuation (``inf`` for exact zero)."""
    return x.terms[0][0] if x.terms else x.trunc


def _determinate_valuation(x: Series) -> Fraction:
    if x.terms:
        return x.terms[0][0]
    if x.trunc == INF:
        raise NotInvertible("exact zero has no leading term")
    raise IndeterminateAtTruncation(f"no known term below O(t^{x.trunc})")


# ring operations ------------------------------------------------------------


def _unify(a: Series, b: Series) -> tuple[Series, Series, CoefficientDomain]:
    if a.domain is b.domain:
        return a, b, a.domain
    dom = promote(a.domain, b.domain)
    return a.to_domain(dom), b.to_domain(dom), dom


def series_add(a: Series, b: Series) -> Series:
    a, b, dom = _unify(a, b)
    trunc = min(a.trunc, b.trunc)
    acc = {e: c for e, c in a.terms if e < trunc}
    for e, c in b.terms:
        if e >= trunc:
            break
        acc[e] = acc[e] + c if e in acc else c
    return _canon(acc, trunc, dom)


def series_neg(a: Series) -> Series:
    return Series._raw(tuple((e, -c) for e, c in a.terms), a.trunc, a.domain)


def series_sub(a: Series, b: Series) -> Series:
    return series_add(a, series_neg(b))


def _common_denominator(*groups) -> int:
    den = 1
    for group in groups:
        for e in group:
            den = math.lcm(den, e.denominator)
    return den


def _scaled(e: Fraction, den: int) -> int:
    return e.numerator * (den // e.denominator)


def series_mul(a: Series, b: Series) -> Series:
    a, b, dom = _unify(a, b)
    trunc = min(a.trunc + lower_bound(b), b.trunc + lower_bound(a))
    if not a.terms or not b.terms:
        return Series._raw((), trunc, dom)
    # convolve on integer exponents over a common denominator; hashing and
    # comparing Fractions dominates the cost otherwise
    den = _common_denominator((e for e, _ in a.terms), (e for e, _ in b.terms), () if trunc == INF else (trunc,))
    bound = INF if trunc == INF else _scaled(trunc, den)
    fast = dom is EXACT
    work = to_work if fast else (lambda c: c)
    bt = [(_scaled(e, den), work(c)) for e, c in b.terms]
    b0 = bt[0][0]
    acc: dict = {}
    for e1, c1 in a.terms:
        c1 = work(c1)
        k1 = _scaled(e1, den)
        if k1 + b0 >= bound:
            break
        for k2, c2 in bt:
            k = k1 + k2
            if k >= bound:
                break
            if k in acc:
                acc[k] += c1 * c2
            else:
                acc[k] = c1 * c2
    if fast:
        terms = tuple((Fraction(k, den), from_work(c)) for k, c in sorted(acc.items()) if c)
    else:
        is_zero = dom.is_zero
        terms = tuple((Fraction(k, den), c) for k, c in sorted(acc.items()) if not is_zero(c))
    return Series._raw(terms, trunc, dom)


def _int_monoid(gens: list[int], bound) -> list[int]:
    gens = sorted(set(gens))
    out = []
    seen = {0}
    heap = [0]
    while heap:
        m = heapq.heappop(heap)
        out.append(m)
        for g in gens:
            n = m + g
            if n >= bound:
                break
            if n not in seen:
                seen.add(n)
                heapq.heappush(heap, n)
    return out


def monoid(generators: Sequence[Fraction], bound) -> list[Fraction]:
    """Sorted elements < bound of the additive monoid spanned by positive generators."""
    gens = [as_rational(g) for g in generators]
    bound = as_rational(bound)
    den = _common_denominator(gens, (bound,))
    return [Fraction(m, den) for m in _int_monoid([_scaled(g, den) for g in gens], _scaled(bound, den))]


def _split_unit(x: Series):
    """Write ``x = c * t**v * (1 + u)``; returns (c, v, u_terms, rel) where the
    infinitesimal ``u`` is known below relative exponent ``rel``."""
    v = _determinate_valuation(x)
    c = x.terms[0][1]
    rel = x.trunc - v if x.trunc != INF else INF
    inv_c = x.domain.one / c
    u = [(e - v, cx * inv_c) for e, cx in x.terms[1:]]
    return c, v, u, rel


def _one_plus_u_pow(u: list, alpha: Fraction, bound, domain: CoefficientDomain) -> dict:
    """Coefficients of ``(1 + u)**alpha`` below ``bound``.

    With theta = t d/dt, (1 + u) theta(y) = alpha * y * theta(u) gives
    m * y_m = sum_s u_s * y_{m-s} * ((alpha + 1) * s - m), valid for any
    positive rational exponents s.
    """
    y = {Fraction(0): domain.one}
    if not u:
        return y
    a1 = alpha + 1
    bound = as_rational(bound)
    den = _common_denominator((e for e, _ in u), (bound,))
    # with integer exponents S = s*den and M = m*den the factor
    # ((alpha + 1) * s - m) / m becomes ((alpha + 1) * S - M) / M
    fast = domain is EXACT
    if fast:
        a1 = to_work(a1)
    us = [(_scaled(e, den), to_work(c) if fast else c) for e, c in u]
    coeffs = {0: to_work(domain.one) if fast else domain.one}
    for m in _int_monoid([k for k, _ in us], _scaled(bound, den))[1:]:
        acc = None
        for k, c in us:
            if k > m:
                break
            prev = coeffs.get(m - k)
            if prev is None:
                continue
            term = c * prev * (a1 * k - m)
            acc = term if acc is None else acc + term
        if acc is not None and not domain.is_zero(acc):
            coeffs[m] = acc / m
    return {Fraction(m, den): (from_work(c) if fast else c) for m, c in coeffs.items()}


def _resolve_order(order) -> Fraction:
    return DEFAULT_ORDER if order is None else as_rational(order)


def series_pow(x: Series, alpha, order=None) -> Series:
    """``x**alpha`` for rational ``alpha``; principal branch for roots.

    Nonnegative integer powers use repeated multiplication and stay exact for
    exact input.  Otherwise the result carries relative precision equal to
    that of ``x`` (or ``order`` when ``x`` is exact and the expansion is
    infinite).
    """
    alpha = as_rational(alpha)
    if alpha.denominator == 1 and alpha >= 0:
        n = alpha.numerator
        result = Series.const(1, x.domain)
        base = x
        while n:
            if n & 1:
                result = series_mul(result, base)
            n >>= 1
            if n:
                base = series_mul(base, base)
        return result
    if x.is_zero:
        if alpha < 0:
            raise NotInvertible("negative power of exact zero")
        return x
    c, v, u, rel = _split_unit(x)
    dom = x.domain
    if alpha.denominator == 1:
        lead = dom.one / c ** (-alpha.numerator)
    else:
        r = dom.root(c, alpha.denominator)
        lead = r**alpha.numerator if alpha.numerator >= 0 else dom.one / r ** (-alpha.numerator)
    v_out = v * alpha
    if not u and rel == INF:
        return Series._raw(((v_out, lead),), INF, dom)
    bound = rel if rel != INF else _resolve_order(order)
    y = _one_plus_u_pow(u, alpha, bound, dom)
    return _canon({v_out + e: lead * cy for e, cy in y.items()}, v_out + bound, dom)


def series_inv(x: Series, order=None) -> Series:
    """Multiplicative inverse.  Exact monomials invert exactly; other exact
    input is expanded to relative precision ``order`` (default 16)."""
    if x.is_zero:
        raise NotInvertible("inverse of exact zero")
    return series_pow(x, -1, order)


def series_div(a: Series, b: Series, order=None) -> Series:
    return series_mul(a, series_inv(b, order))


def series_nth_root(x: Series, n: int, order=None) -> Series:
    if n < 1:
        raise ValueError("root index must be a positive integer")
    return series_pow(x, Fraction(1, n), order)


def series_sqrt(x: Series, order=None) -> Series:
    return series_nth_root(x, 2, order)


# order ----------------------------------------------------------------------


def sign(x: Series) -> int:
    if x.terms:
        return x.domain.sign(x.terms[0][1])
    if x.trunc == INF:
        return 0
    raise IndeterminateAtTruncation(f"sign unknown below O(t^{x.trunc})")


def series_compare(a: Series, b: Series) -> Ordering:
    d = series_sub(a, b)
    if d.terms:
        return Ordering.from_sign(d.domain.sign(d.terms[0][1]))
    return Ordering.EQ if d.trunc == INF else Ordering.INDETERMINATE


def classify(x: Series) -> Classification:
    v = valuation(x)
    if v is ValuationOutcome.ZERO_ELEMENT:
        return Classification.ZERO
    if v is ValuationOutcome.INDETERMINATE:
        raise IndeterminateAtTruncation(f"no known term below O(t^{x.trunc})")
    if v > 0:
        return Classification.INFINITESIMAL
    return Classification.UNIT if v == 0 else Classification.INFINITE


def in_infinitesimals(x: Series) -> bool:
    """Membership in the ideal of infinitesimals (zero included).

    Unlike :func:`classify` this succeeds for ``O(t^k)`` with ``k > 0``.
    """
    return lower_bound(x) > 0


def standard_part(x: Series):
    if classify(x) is Classification.INFINITE:
        raise NotFinite("infinitely large element has no standard part")
    return x.coefficient(0)


# supports -------------------------------------------------------------------


class SupportClass(enum.Enum):
    LEFT_FINITE = "LeftFinite"
    WELL_ORDERED_NOT_LEFT_FINITE = "WellOrderedNotLeftFinite"
    NOT_WELL_ORDERED = "NotWellOrdered"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SupportDescriptor:
    """A finite head of exponents plus an optional tail ``k -> p(k)/q(k)``
    for ``k >= start``.  Polynomials are ascending coefficient lists."""

    head: tuple[Fraction, ...] = ()
    tail_num: tuple[Fraction, ...] | None = None
    tail_den: tuple[Fraction, ...] = (Fraction(1),)
    start: int = 1

    def tail_value(self, k: int) -> Fraction:
        return qpoly.peval(self.tail_num, Fraction(k)) / qpoly.peval(self.tail_den, Fraction(k))


def validate_support(s: SupportDescriptor) -> SupportClass:
    """Classify the exponent set ``head ∪ {p(k)/q(k) : k >= start}``."""
    if s.tail_num is None:
        return SupportClass.LEFT_FINITE
    p = qpoly.trim([as_rational(c) for c in s.tail_num])
    q = qpoly.trim([as_rational(c) for c in s.tail_den])
    if not q:
        raise UnsupportedRule("tail denominator is identically zero")
    for r, _ in qpoly.rational_roots(q):
        if r.denominator == 1 and r >= s.start:
            raise UnsupportedRule(f"tail denominator vanishes at k = {r}")
    if not p:
        return SupportClass.LEFT_FINITE
    dp, dq = len(p) - 1, len(q) - 1
    if dp > dq:
        # diverges; direction from the ratio of leading coefficients
        up = (p[-1] > 0) == (q[-1] > 0)
        return SupportClass.LEFT_FINITE if up else SupportClass.NOT_WELL_ORDERED
    # finite limit: monotonicity from the numerator of the derivative
    slope = qpoly.psub(qpoly.pmul(qpoly.pderiv(p), q), qpoly.pmul(p, qpoly.pderiv(q)))
    if not slope:
        return SupportClass.LEFT_FINITE
    if slope[-1] > 0:
        return SupportClass.WELL_ORDERED_NOT_LEFT_FINITE
    return SupportClass.NOT_WELL_ORDERED
