"""Roots of polynomials over the series field (Newton-Puiseux).

Each branch starts from a Newton polygon edge: an edge of slope ``-g`` through
the points ``(i, val(a_i))`` gives leading terms ``c * t**g`` where ``c`` runs
over the nonzero roots of the edge's characteristic polynomial.  A simple
characteristic root is lifted by Newton iteration (it converges because the
correction always has valuation above ``g``); a repeated one is handled by
substituting ``y = c * t**g + y1`` and recursing on the roots of larger
valuation.  Exponents are rational throughout, so ramification needs no
change of variable.

Characteristic roots are found exactly over Q in exact mode (a real root
that is irrational raises :class:`CoefficientRootUnavailable`) and with
``numpy.roots`` otherwise.  Non-real branches are always approximate.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import qpoly
from .complex_ext import ComplexSeries
from .errors import (
    CoefficientRootUnavailable,
    DomainError,
    IndeterminateAtTruncation,
    NoRealBranch,
    NotSquareFree,
)
from .exact_core import COMPLEX_APPROX, EXACT, Ordering, as_rational, promote
from .series import (
    INF,
    Series,
    lower_bound,
    series_add,
    series_compare,
    series_inv,
    series_mul,
    series_sub,
)

__all__ = [
    "SeriesPolynomial",
    "poly_eval",
    "newton_puiseux",
    "odd_degree_real_root",
    "is_square_free",
]

MAX_NEWTON_STEPS = 200
_CLUSTER_TOL = 1e-5
_REAL_TOL = 1e-9


@dataclass(frozen=True)
class SeriesPolynomial:
    """``sum(coefficients[i] * y**i)``."""

    coefficients: tuple[Series, ...]

    def __init__(self, coefficients: Sequence):
        cs = [c if isinstance(c, Series) else Series.const(c) for c in coefficients]
        while cs and cs[-1].is_zero:
            cs.pop()
        if len(cs) < 2:
            raise DomainError("polynomial must have degree >= 1")
        if not cs[-1].terms:
            raise IndeterminateAtTruncation("leading coefficient has no known term")
        object.__setattr__(self, "coefficients", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def domain(self):
        d = EXACT
        for c in self.coefficients:
            d = promote(d, c.domain)
        return d

    def derivative(self) -> list[Series]:
        return [c.scale(i) for i, c in enumerate(self.coefficients)][1:]

    def to_domain(self, dom) -> "SeriesPolynomial":
        return SeriesPolynomial([c.to_domain(dom) for c in self.coefficients])

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coefficients):
            if c.is_zero:
                continue
            y = "" if i == 0 else ("*y" if i == 1 else f"*y^{i}")
            parts.append(f"({c}){y}")
        return " + ".join(parts)


def _horner(coeffs: Sequence[Series], x: Series) -> Series:
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = series_add(series_mul(acc, x), c)
    return acc


def poly_eval(p: SeriesPolynomial, x: Series) -> Series:
    return _horner(p.coefficients, x)


# square-freeness --------------------------------------------------------------


def _strip(cs: list[Series]) -> list[Series]:
    while cs and cs[-1].is_zero:
        cs.pop()
    if cs and not cs[-1].terms:
        raise IndeterminateAtTruncation("cannot decide square-freeness at this truncation")
    return cs


def _prem(a: list[Series], b: list[Series]) -> list[Series]:
    """Division-free pseudo-remainder of a by b."""
    r = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        new = [series_mul(c, lb) for c in r[:-1]]
        for i, c in enumerate(b[:-1]):
            new[shift + i] = series_sub(new[shift + i], series_mul(lr, c))
        r = _strip(new)
        if not r:
            break
    return r


def is_square_free(p: SeriesPolynomial) -> bool:
    """gcd(p, p') is constant, via a pseudo-remainder sequence."""
    a = list(p.coefficients)
    b = _strip(p.derivative())
    while len(b) >= 2:
        r = _prem(a, b)
        if not r:
            return False
        a, b = b, r
    return bool(b)


# characteristic roots -------------------------------------------------------


def _cluster(values: list[complex]) -> list[tuple[complex, int]]:
    groups: list[list[complex]] = []
    for z in sorted(values, key=lambda z: (z.real, z.imag)):
        for g in groups:
            if abs(g[0] - z) <= _CLUSTER_TOL * max(1.0, abs(z)):
                g.append(z)
                break
        else:
            groups.append([z])
    return [(sum(g) / len(g), len(g)) for g in groups]


def _polish(arr: np.ndarray, z: complex) -> complex:
    deriv = np.polyder(arr)
    for _ in range(4):
        d = np.polyval(deriv, z)
        if d == 0:
            break
        z = complex(z - np.polyval(arr, z) / d)
    return z


def _numeric_roots(coeffs: list) -> list[tuple[complex, int]]:
    arr = np.array([complex(c) for c in reversed(coeffs)], dtype=complex)
    groups = _cluster([complex(z) for z in np.roots(arr)])
    return [(_polish(arr, z) if m == 1 else z, m) for z, m in groups]


def _char_roots(coeffs: list, dom, real_only: bool) -> list[tuple[object, int, object]]:
    """Nonzero roots of ``sum(coeffs[k] z^k)`` as (value, multiplicity, domain)."""
    out = []
    if dom is EXACT:
        rat = qpoly.rational_roots(coeffs)
        out.extend((r, m, EXACT) for r, m in rat if r != 0)
        rest = qpoly.deflate(coeffs, rat)
        if len(rest) >= 2:
            if qpoly.count_real_roots(rest) > 0:
                raise CoefficientRootUnavailable(
                    "a branch needs an irrational real coefficient; use approximate coefficients"
                )
            if not real_only:
                out.extend((z, m, COMPLEX_APPROX) for z, m in _numeric_roots(rest))
        return out
    for z, m in _numeric_roots(coeffs):
        if dom is not COMPLEX_APPROX and abs(z.imag) <= _REAL_TOL * max(1.0, abs(z)):
            out.append((z.real, m, dom))
        elif dom is COMPLEX_APPROX:
            out.append((z, m, COMPLEX_APPROX))
        elif not real_only:
            out.append((z, m, COMPLEX_APPROX))
    return out


# Newton polygon ---------------------------------------------------------------


def _lower_hull(points: list[tuple[int, Fraction]]) -> list[tuple[int, Fraction]]:
    hull: list = []
    for p in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def _edges(coeffs: list[Series]):
    """Yield (slope value g, characteristic coefficients) per polygon edge."""
    pts = [(i, c.terms[0][0]) for i, c in enumerate(coeffs) if c.terms]
    hull = _lower_hull(pts)
    unknown = [(i, c.trunc) for i, c in enumerate(coeffs) if not c.terms and not c.is_exact]
    for i, bound in unknown:
        if i < hull[0][0] or i > hull[-1][0]:
            raise IndeterminateAtTruncation("a polynomial coefficient is unknown at this truncation")
        for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
            if x1 <= i <= x2 and bound <= y1 + (y2 - y1) * Fraction(i - x1, x2 - x1):
                raise IndeterminateAtTruncation("a polynomial coefficient is unknown at this truncation")
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        g = (y1 - y2) / (x2 - x1)
        level = y1 + x1 * g
        char = []
        for k in range(x1, x2 + 1):
            c = coeffs[k]
            on_edge = c.terms and c.terms[0][0] + k * g == level
            char.append(c.terms[0][1] if on_edge else c.domain.zero)
        yield g, char


def _taylor_shift(coeffs: list[Series], s: Series) -> list[Series]:
    """Coefficients of p(s + y) in y."""
    n = len(coeffs) - 1
    powers = [Series.const(1, s.domain)]
    for _ in range(n):
        powers.append(series_mul(powers[-1], s))
    out = []
    for j in range(n + 1):
        acc = Series.zero(domain=s.domain)
        for i in range(j, n + 1):
            if coeffs[i].is_zero:
                continue
            acc = series_add(acc, series_mul(coeffs[i], powers[i - j]).scale(math.comb(i, j)))
        out.append(acc)
    return out


# lifting ----------------------------------------------------------------------


def _finite_sum(x: Series, below) -> Series:
    return Series._raw(tuple(tc for tc in x.terms if tc[0] < below), INF, x.domain)


def _newton(p: list[Series], dp: list[Series], r: Series, goal: Fraction) -> Series:
    """Lift an approximate simple root ``r`` until p(root) = O(t^goal).

    Iterates are exact finite sums; the declared truncation of the result is
    raised until Horner evaluation of the truncated root certifies the goal.
    """
    v_r = r.terms[0][0] if r.terms else Fraction(0)
    spread = min(
        (lower_bound(c) + (i - 1) * v_r for i, c in enumerate(p) if i >= 1 and not c.is_zero),
        default=Fraction(0),
    )
    target = goal - min(Fraction(0), spread)
    for _ in range(MAX_NEWTON_STEPS):
        res = _horner(p, r)
        if res.is_zero:
            return r
        d = _horner(dp, r)
        if not d.terms:
            raise IndeterminateAtTruncation("derivative vanishes to working precision")
        w = d.terms[0][0]
        target = max(target, goal - w)
        gap = lower_bound(res) - w
        if gap >= target:
            root = Series._raw(r.terms, target, r.domain)
            lb = lower_bound(_horner(p, root))
            if lb >= goal:
                return root
            target += goal - lb
            continue
        if not res.terms:
            raise IndeterminateAtTruncation("polynomial coefficients are not known precisely enough")
        step = series_mul(res, series_inv(d, target - gap))
        r = _finite_sum(series_sub(r, step), target)
    raise RuntimeError("Newton lifting did not converge")


def _branches(p0, dp0, shifted, prefix: Series, floor, real_only: bool, goal, depth=0) -> list[Series]:
    if depth > 64:
        raise RuntimeError("branch separation did not terminate")
    out: list[Series] = []
    coeffs = list(shifted)
    if coeffs[0].is_zero:
        out.append(prefix)
        coeffs = coeffs[1:]
    if len(coeffs) < 2:
        return out
    dom = coeffs[0].domain
    for c in coeffs:
        dom = promote(dom, c.domain)
    for g, char in _edges(coeffs):
        if floor is not None and g <= floor:
            continue
        char = [dom.convert(c) for c in char]
        for c, mult, cdom in _char_roots(char, dom, real_only):
            lead = Series.monomial(c, g, cdom)
            if cdom is COMPLEX_APPROX and dom is not COMPLEX_APPROX:
                P0 = [a.to_domain(cdom) for a in p0]
                DP0 = [a.to_domain(cdom) for a in dp0]
                cur = [a.to_domain(cdom) for a in coeffs]
                base = prefix.to_domain(cdom)
            else:
                P0, DP0, cur, base = p0, dp0, coeffs, prefix
            start = series_add(base, lead)
            if mult == 1:
                out.append(_newton(P0, DP0, start, goal))
            else:
                out.extend(_branches(P0, DP0, _taylor_shift(cur, lead), start, g, real_only, goal, depth + 1))
    return out


def _order_desc(a: Series, b: Series) -> int:
    o = series_compare(a, b)
    return -1 if o is Ordering.GT else 1 if o is Ordering.LT else 0


def newton_puiseux(p: SeriesPolynomial, order=8, real_only: bool = True, check_square_free: bool = True):
    """Fractional-power series roots ``r`` of ``p`` with p(r) = O(t^order).

    With ``real_only`` (default) the real branches are returned as Series,
    largest first.  Otherwise every branch is returned as a ComplexSeries;
    real branches have an exactly zero imaginary part.
    """
    goal = as_rational(order)
    if check_square_free and not is_square_free(p):
        raise NotSquareFree("polynomial has a repeated factor over the series field")
    p0 = list(p.coefficients)
    dp0 = p.derivative()
    roots = _branches(p0, dp0, p0, Series.zero(domain=p.domain), None, real_only, goal)
    real = sorted((r for r in roots if r.domain is not COMPLEX_APPROX), key=functools.cmp_to_key(_order_desc))
    if real_only:
        if not real:
            raise NoRealBranch("no real branch exists")
        return real
    cplx = [ComplexSeries.from_coefficients(r) for r in roots if r.domain is COMPLEX_APPROX]
    return [ComplexSeries(r, Series.zero(domain=r.domain)) for r in real] + cplx


def odd_degree_real_root(p: SeriesPolynomial, order=8) -> Series:
    if p.degree % 2 == 0:
        raise DomainError("polynomial degree must be odd")
    try:
        return newton_puiseux(p, order, real_only=True)[0]
    except NoRealBranch as exc:  # pragma: no cover - would contradict real closedness
        raise RuntimeError("odd-degree polynomial without a real branch") from exc
