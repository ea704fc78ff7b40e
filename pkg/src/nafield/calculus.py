"""Infinitesimal calculus on series.

Evaluating an expression at ``x0 + t`` (``t`` a positive infinitesimal) gives
every derivative at once: the coefficient of ``t**n`` is ``f^(n)(x0)/n!``.
Limits substitute ``c + t``, ``c - t`` or ``±1/t`` and read off the finite
part.

Field operations are exact.  ``exp``, ``log``, ``sin`` and ``cos`` are
expanded about the standard part of their (finite) argument; their
coefficients stay rational only at the points where the function value is
rational (``exp``/``sin``/``cos`` at 0, ``log`` at 1) and switch to
approximate floats elsewhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import (
    CoefficientRootUnavailable,
    DomainError,
    IndeterminateAtTruncation,
    LimitDoesNotExist,
    TruncationTooShallow,
)
from .exact_core import APPROX, EXACT, as_rational
from .series import (
    DEFAULT_ORDER,
    INF,
    Series,
    T,
    in_infinitesimals,
    monoid,
    series_add,
    series_div,
    series_mul,
    series_neg,
    series_pow,
    series_sub,
    standard_part,
)

__all__ = [
    "Expr",
    "Const",
    "Var",
    "Neg",
    "Add",
    "Sub",
    "Mul",
    "Div",
    "PowRat",
    "Sqrt",
    "Exp",
    "Log",
    "Sin",
    "Cos",
    "FUNCTIONS",
    "LeibnizTrace",
    "LimitResult",
    "eval_expr",
    "derivative",
    "leibniz_trace",
    "limit",
    "satisfies_limit_criterion",
]


# expression tree ------------------------------------------------------------


class Expr:
    """Base node.  Operators build trees, so ``Var() ** 3 / 2`` works."""

    __slots__ = ()

    def __add__(self, o):
        return Add(self, _lift(o))

    def __radd__(self, o):
        return Add(_lift(o), self)

    def __sub__(self, o):
        return Sub(self, _lift(o))

    def __rsub__(self, o):
        return Sub(_lift(o), self)

    def __mul__(self, o):
        return Mul(self, _lift(o))

    def __rmul__(self, o):
        return Mul(_lift(o), self)

    def __truediv__(self, o):
        return Div(self, _lift(o))

    def __rtruediv__(self, o):
        return Div(_lift(o), self)

    def __neg__(self):
        return Neg(self)

    def __pow__(self, q):
        return PowRat(self, as_rational(q))


def _lift(o) -> Expr:
    return o if isinstance(o, Expr) else Const(as_rational(o))


@dataclass(frozen=True)
class Const(Expr):
    value: Fraction


@dataclass(frozen=True)
class Var(Expr):
    name: str = "x"


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class PowRat(Expr):
    base: Expr
    exponent: Fraction


@dataclass(frozen=True)
class Sqrt(Expr):
    arg: Expr


@dataclass(frozen=True)
class Exp(Expr):
    arg: Expr


@dataclass(frozen=True)
class Log(Expr):
    arg: Expr


@dataclass(frozen=True)
class Sin(Expr):
    arg: Expr


@dataclass(frozen=True)
class Cos(Expr):
    arg: Expr


FUNCTIONS = {"sqrt": Sqrt, "exp": Exp, "log": Log, "sin": Sin, "cos": Cos}


# elementary functions on finite series ---------------------------------------


def _finite_parts(x: Series, fname: str):
    """Split a finite ``x`` into (standard part, infinitesimal terms, bound)."""
    if x.terms and x.terms[0][0] < 0:
        raise DomainError(f"{fname} of an infinitely large argument")
    if x.trunc <= 0:
        raise IndeterminateAtTruncation(f"standard part of the argument of {fname} is unknown")
    a = x.coefficient(0)
    u = [(e, c) for e, c in x.terms if e > 0]
    return a, u, x.trunc


def _transcendental(value: float, what: str, strict: bool) -> float:
    if strict:
        raise CoefficientRootUnavailable(f"{what} is not rational; approximate coefficients required")
    return value


def _recurrence_support(u, bound):
    if not u:
        return []
    return monoid([e for e, _ in u], bound)[1:]


def _exp_of_infinitesimal(u, bound, dom) -> dict:
    # theta(y) = y * theta(u)
    y = {Fraction(0): dom.one}
    for m in _recurrence_support(u, bound):
        acc = dom.zero
        for s, us in u:
            if s > m:
                break
            prev = y.get(m - s)
            if prev is not None:
                acc = acc + s * us * prev
        if not dom.is_zero(acc):
            y[m] = acc / m
    return y


def _sin_cos_of_infinitesimal(u, bound, dom) -> tuple[dict, dict]:
    # theta(S) = C * theta(u), theta(C) = -S * theta(u)
    S: dict = {}
    C = {Fraction(0): dom.one}
    for m in _recurrence_support(u, bound):
        sacc, cacc = dom.zero, dom.zero
        for s, us in u:
            if s > m:
                break
            k = m - s
            if k in C:
                sacc = sacc + s * us * C[k]
            if k in S:
                cacc = cacc - s * us * S[k]
        if not dom.is_zero(sacc):
            S[m] = sacc / m
        if not dom.is_zero(cacc):
            C[m] = cacc / m
    return S, C


def _log_one_plus(w, bound, dom) -> dict:
    # (1 + w) theta(L) = theta(w)
    wd = dict(w)
    L: dict = {}
    for m in _recurrence_support(w, bound):
        acc = m * wd.get(m, dom.zero)
        for s, ws in w:
            if s >= m:
                break
            prev = L.get(m - s)
            if prev is not None:
                acc = acc - ws * (m - s) * prev
        if not dom.is_zero(acc):
            L[m] = acc / m
    return L


def _from_coeffs(coeffs: dict, bound, dom, u) -> Series:
    trunc = INF if (bound == INF and not u) else bound
    return Series(list(coeffs.items()), trunc, dom)


def _apply_function(node: Expr, x: Series, order: Fraction, strict: bool) -> Series:
    name = type(node).__name__.lower()
    a, u, xbound = _finite_parts(x, name)
    dom = x.domain
    bound = min(xbound, order) if u or xbound != INF else INF
    if isinstance(node, Exp):
        base = _from_coeffs(_exp_of_infinitesimal(u, bound, dom), bound, dom, u)
        if a == 0:
            return base
        return base.scale(_transcendental(math.exp(a), f"exp({a})", strict))
    if isinstance(node, (Sin, Cos)):
        S, C = _sin_cos_of_infinitesimal(u, bound, dom)
        sin_u = _from_coeffs(S, bound, dom, u)
        cos_u = _from_coeffs(C, bound, dom, u)
        if a == 0:
            return sin_u if isinstance(node, Sin) else cos_u
        sa = _transcendental(math.sin(a), f"sin({a})", strict)
        ca = _transcendental(math.cos(a), f"cos({a})", strict)
        if isinstance(node, Sin):
            return series_add(sin_u.scale(ca), cos_u.scale(sa))
        return series_sub(cos_u.scale(ca), sin_u.scale(sa))
    if isinstance(node, Log):
        if dom.sign(a) <= 0:
            raise DomainError("log needs a positive standard part")
        inv_a = dom.one / a
        w = [(e, c * inv_a) for e, c in u]
        base = _from_coeffs(_log_one_plus(w, bound, dom), bound, dom, u)
        if a == 1:
            return base
        return series_add(base, Series.const(_transcendental(math.log(a), f"log({a})", strict)))
    raise TypeError(f"not an elementary function node: {node!r}")


# keeps coefficient sizes bounded for untrusted input such as x^10000000000
MAX_POWER = 4096
MAX_RESULT_BITS = 1 << 20


def _power(x: Series, q: Fraction, order: Fraction, strict: bool) -> Series:
    if abs(q.numerator) > MAX_POWER or q.denominator > MAX_POWER:
        raise DomainError(f"exponent {q} exceeds the supported magnitude {MAX_POWER}")
    if x.domain is EXACT and x.terms:
        bits = max(c.numerator.bit_length() + c.denominator.bit_length() for _, c in x.terms)
        if bits * abs(q.numerator) > MAX_RESULT_BITS:
            raise DomainError("power would produce coefficients beyond the supported size")
    try:
        return series_pow(x, q, order)
    except CoefficientRootUnavailable:
        if strict:
            raise
        return series_pow(x.to_approx(), q, order)


def eval_expr(
    e: Expr,
    point: Series | Mapping[str, Series],
    order=None,
    strict: bool = False,
) -> Series:
    """Evaluate ``e`` with every variable bound to ``point`` (or by name).

    ``order`` is the working truncation for infinite expansions (default 16).
    With ``strict`` set, anything that would need a non-rational coefficient
    raises :class:`CoefficientRootUnavailable` instead of switching to floats.
    """
    order = DEFAULT_ORDER if order is None else as_rational(order)
    env = point if isinstance(point, Mapping) else None

    def ev(n: Expr) -> Series:
        if isinstance(n, Const):
            return Series.const(n.value)
        if isinstance(n, Var):
            if env is None:
                return point
            try:
                return env[n.name]
            except KeyError:
                raise DomainError(f"unbound variable {n.name!r}") from None
        if isinstance(n, Neg):
            return series_neg(ev(n.arg))
        if isinstance(n, Add):
            return series_add(ev(n.left), ev(n.right))
        if isinstance(n, Sub):
            return series_sub(ev(n.left), ev(n.right))
        if isinstance(n, Mul):
            return series_mul(ev(n.left), ev(n.right))
        if isinstance(n, Div):
            return series_div(ev(n.left), ev(n.right), order)
        if isinstance(n, PowRat):
            return _power(ev(n.base), n.exponent, order, strict)
        if isinstance(n, Sqrt):
            return _power(ev(n.arg), Fraction(1, 2), order, strict)
        if isinstance(n, (Exp, Log, Sin, Cos)):
            return _apply_function(n, ev(n.arg), order, strict)
        raise TypeError(f"unknown expression node {n!r}")

    return ev(e)


# derivatives ----------------------------------------------------------------


@dataclass(frozen=True)
class LeibnizTrace:
    """``step1`` is the quotient (f(x0 + dx) - f(x0)) / dx with dx = t;
    ``step2`` is its standard part (dropping every infinitesimal term)."""

    step1: Series
    step2: object


def leibniz_trace(e: Expr, x0, order=None) -> LeibnizTrace:
    x0 = as_rational(x0)
    shifted = eval_expr(e, Series.const(x0) + T(), order)
    at_point = eval_expr(e, Series.const(x0), order)
    quotient = series_sub(shifted, at_point).shift(-1)
    return LeibnizTrace(quotient, standard_part(quotient))


def _agree(a, b) -> bool:
    if isinstance(a, float) or isinstance(b, float):
        return math.isclose(a, b, rel_tol=1e-9, abs_tol=APPROX.tol)
    return a == b


def derivative(e: Expr, x0, n: int = 1, order=None):
    """n-th derivative at ``x0`` as ``n! * [t^n] f(x0 + t)``.

    For ``n == 1`` the Leibniz quotient route is computed as well and must
    agree with the Taylor coefficient.
    """
    if n < 1:
        raise ValueError("derivative order must be >= 1")
    work = DEFAULT_ORDER if order is None else as_rational(order)
    if n >= work:
        raise TruncationTooShallow(f"order {n} needs working truncation > {n}, have {work}")
    x0 = as_rational(x0)
    s = eval_expr(e, Series.const(x0) + T(), work)
    if s.trunc <= n:
        raise TruncationTooShallow(f"t^{n} coefficient lies beyond O(t^{s.trunc})")
    value = s.coefficient(n) * math.factorial(n)
    if n == 1:
        step2 = leibniz_trace(e, x0, work).step2
        if not _agree(value, step2):
            raise RuntimeError(f"derivative routes disagree: {value!r} vs {step2!r}")
    return value


# limits ---------------------------------------------------------------------


@dataclass(frozen=True)
class LimitResult:
    kind: str  # "Value", "Infinite" or "IndeterminateAtTruncation"
    value: object = None
    sign: int = 0

    def __str__(self) -> str:
        if self.kind == "Value":
            from .parser import format_coefficient

            return format_coefficient(self.value)
        if self.kind == "Infinite":
            return "Infinite(+)" if self.sign > 0 else "Infinite(-)"
        return self.kind


_INDETERMINATE = LimitResult("IndeterminateAtTruncation")


def _read_limit(s: Series) -> LimitResult:
    if s.terms and s.terms[0][0] < 0:
        return LimitResult("Infinite", sign=s.domain.sign(s.terms[0][1]))
    if s.trunc <= 0:
        return _INDETERMINATE
    value = s.coefficient(0)
    if not in_infinitesimals(series_sub(s, Series.const(value, s.domain))):
        raise RuntimeError("limit criterion failed for a finite value")
    return LimitResult("Value", value)


def _same(a: LimitResult, b: LimitResult) -> bool:
    if a.kind != b.kind:
        return False
    if a.kind == "Value":
        return _agree(a.value, b.value)
    return a.sign == b.sign


def _is_inf(to, positive: bool) -> bool:
    if isinstance(to, str):
        return to.strip().lower() in (("inf", "+inf", "infinity", "+infinity") if positive else ("-inf", "-infinity"))
    return isinstance(to, float) and to == (math.inf if positive else -math.inf)


def limit(e: Expr, to, side: str = "both", order=None) -> LimitResult:
    """Limit of ``e`` as x approaches ``to`` (a rational, ``'inf'`` or ``'-inf'``).

    x is replaced by ``c + t`` (right), ``c - t`` (left) or ``±1/t``; a finite
    result's standard part is the limit.
    """
    if _is_inf(to, True):
        return _read_limit(eval_expr(e, T(-1), order))
    if _is_inf(to, False):
        return _read_limit(eval_expr(e, -T(-1), order))
    c = Series.const(as_rational(to))
    if side == "right":
        return _read_limit(eval_expr(e, c + T(), order))
    if side == "left":
        return _read_limit(eval_expr(e, c - T(), order))
    if side != "both":
        raise ValueError(f"side must be left, right or both, not {side!r}")
    right = _read_limit(eval_expr(e, c + T(), order))
    left = _read_limit(eval_expr(e, c - T(), order))
    if right.kind == left.kind == _INDETERMINATE.kind:
        return _INDETERMINATE
    if not _same(right, left):
        raise LimitDoesNotExist(f"one-sided limits differ: left {left}, right {right}")
    return right


def satisfies_limit_criterion(e: Expr, point: Series, value, order=None) -> bool:
    """True iff f(point) - value is infinitesimal (zero included)."""
    s = eval_expr(e, point, order)
    return in_infinitesimals(series_sub(s, Series.const(value, s.domain)))
