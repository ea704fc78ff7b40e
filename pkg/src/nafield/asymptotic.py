"""A decidable fragment of the ultrapower hyperreals.

Elements are finite sums of terms ``c * b**n * n**q * log(n)**p``.  Any two
such sums are eventually comparable (the difference is eventually dominated
by its fastest-growing term), so every comparison is already settled on the
cofinite filter and holds for every free ultrafilter.

Growth keys ``(b, q, p)`` compare lexicographically: an exponential factor
beats any power of ``n``, which beats any power of ``log n``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import OutsideFragment
from .exact_core import Ordering, as_rational
from .series import Classification

__all__ = [
    "GrowthTerm",
    "HyperSeq",
    "RhoClass",
    "growth_compare",
    "hyper_classify",
    "rho_classify",
    "hyper_arith",
    "hyper_abs",
    "RHO",
]

_ONE = Fraction(1)
_ZERO = Fraction(0)
CONSTANT_KEY = (_ONE, _ZERO, 0)


def _num(x):
    return x if isinstance(x, float) else as_rational(x)


@dataclass(frozen=True)
class GrowthTerm:
    coeff: Fraction | float
    base: Fraction | float = _ONE
    power: Fraction = _ZERO
    log: int = 0

    def __post_init__(self):
        if self.coeff == 0:
            raise ValueError("growth term with zero coefficient")
        if self.base <= 0:
            raise ValueError("exponential base must be positive")
        if self.log < 0:
            raise OutsideFragment("negative powers of log(n) are outside the fragment")

    @property
    def key(self) -> tuple:
        return (self.base, self.power, self.log)

    def value_at(self, n: int):
        n = mpmath.mpf(n)
        v = mpmath.mpf(self.coeff.numerator) / self.coeff.denominator if isinstance(self.coeff, Fraction) else mpmath.mpf(self.coeff)
        b = self.base
        if b != 1:
            bm = mpmath.mpf(b.numerator) / b.denominator if isinstance(b, Fraction) else mpmath.mpf(b)
            v *= bm**n
        if self.power:
            q = self.power
            v *= n ** (mpmath.mpf(q.numerator) / q.denominator)
        if self.log:
            v *= mpmath.log(n) ** self.log
        return v


@dataclass(frozen=True)
class HyperSeq:
    """Sum of growth terms, dominant first; no terms means the zero class."""

    terms: tuple[GrowthTerm, ...] = ()

    @classmethod
    def from_terms(cls, terms) -> "HyperSeq":
        acc: dict = {}
        for t in terms:
            acc[t.key] = acc.get(t.key, 0) + t.coeff
        kept = [GrowthTerm(c, *k) for k, c in acc.items() if c != 0]
        kept.sort(key=lambda t: t.key, reverse=True)
        return cls(tuple(kept))

    @classmethod
    def from_tuples(cls, items) -> "HyperSeq":
        terms = []
        for c, b, q, p in items:
            if c == 0:
                continue
            terms.append(GrowthTerm(_num(c), _num(b), as_rational(q), int(p)))
        return cls.from_terms(terms)

    @classmethod
    def const(cls, c) -> "HyperSeq":
        return cls.from_tuples([(c, 1, 0, 0)])

    @classmethod
    def monomial(cls, c=1, base=1, power=0, log=0) -> "HyperSeq":
        return cls.from_tuples([(c, base, power, log)])

    @property
    def dominant(self) -> GrowthTerm | None:
        return self.terms[0] if self.terms else None

    def value_at(self, n: int):
        """Numeric value of the representative sequence at index ``n``."""
        with mpmath.workdps(60):
            return mpmath.fsum(t.value_at(n) for t in self.terms) if self.terms else mpmath.mpf(0)

    def __add__(self, other: "HyperSeq") -> "HyperSeq":
        return hyper_arith("add", self, other)

    def __sub__(self, other: "HyperSeq") -> "HyperSeq":
        return hyper_arith("sub", self, other)

    def __mul__(self, other: "HyperSeq") -> "HyperSeq":
        return hyper_arith("mul", self, other)

    def __neg__(self) -> "HyperSeq":
        return hyper_arith("neg", self)

    def __str__(self) -> str:
        from .parser import format_hyperseq

        return format_hyperseq(self)


class RhoClass(enum.Enum):
    NEGLIGIBLE = "Negligible"
    MODERATE_NOT_NEGLIGIBLE = "ModerateNotNegligible"
    NOT_MODERATE = "NotModerate"

    def __str__(self) -> str:
        return self.value


RHO = HyperSeq.monomial(1, 1, -1, 0)  # <1/n>


def hyper_arith(op: str, a: HyperSeq, b: HyperSeq | None = None) -> HyperSeq:
    if op == "neg":
        return HyperSeq(tuple(GrowthTerm(-t.coeff, t.base, t.power, t.log) for t in a.terms))
    if op == "inv":
        if len(a.terms) != 1:
            raise OutsideFragment("only single-term elements have inverses inside the fragment")
        t = a.terms[0]
        if t.log:
            raise OutsideFragment("1/log(n)^p is outside the fragment")
        return HyperSeq((GrowthTerm(1 / t.coeff, 1 / t.base, -t.power, 0),))
    if b is None:
        raise TypeError(f"{op} needs two operands")
    if op == "add":
        return HyperSeq.from_terms(a.terms + b.terms)
    if op == "sub":
        return HyperSeq.from_terms(a.terms + hyper_arith("neg", b).terms)
    if op == "mul":
        return HyperSeq.from_terms(
            GrowthTerm(x.coeff * y.coeff, x.base * y.base, x.power + y.power, x.log + y.log)
            for x in a.terms
            for y in b.terms
        )
    raise ValueError(f"unknown operation {op!r}")


def growth_compare(a: HyperSeq, b: HyperSeq) -> Ordering:
    d = hyper_arith("sub", a, b)
    if not d.terms:
        return Ordering.EQ
    return Ordering.GT if d.terms[0].coeff > 0 else Ordering.LT


def hyper_abs(x: HyperSeq) -> HyperSeq:
    return hyper_arith("neg", x) if x.terms and x.terms[0].coeff < 0 else x


def hyper_classify(x: HyperSeq) -> Classification:
    if not x.terms:
        return Classification.ZERO
    key = x.terms[0].key
    if key > CONSTANT_KEY:
        return Classification.INFINITE
    return Classification.UNIT if key == CONSTANT_KEY else Classification.INFINITESIMAL


def _check_rho(rho: HyperSeq) -> None:
    # rho = c * n^(-q), c > 0, q > 0: rho^(-k) grows like n^(qk), so the
    # moderate/negligible classes coincide with those of <1/n>.
    if len(rho.terms) != 1:
        raise OutsideFragment("scale must be a single growth term")
    t = rho.terms[0]
    if t.base != 1 or t.log or t.power >= 0 or t.coeff <= 0:
        raise OutsideFragment("scale must have the form c * n^(-q) with c > 0, q > 0")


def rho_classify(x: HyperSeq, rho: HyperSeq | None = None) -> RhoClass:
    """Membership in the negligible / moderate classes for the scale ``rho``
    (default ``<1/n>``)."""
    if rho is not None:
        _check_rho(rho)
    if not x.terms:
        return RhoClass.NEGLIGIBLE
    base = x.terms[0].base
    if base > 1:
        return RhoClass.NOT_MODERATE
    if base < 1:
        return RhoClass.NEGLIGIBLE
    return RhoClass.MODERATE_NOT_NEGLIGIBLE
