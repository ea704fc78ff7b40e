from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from support import exact_series, nonzero_series

from nafield.errors import (
    CoefficientRootUnavailable,
    IndeterminateAtTruncation,
    NegativeLeadingCoefficient,
    NotFinite,
    NotInvertible,
    UnsupportedRule,
)
from nafield.exact_core import APPROX, Ordering
from nafield.parser import format_series
from nafield.series import (
    INF,
    Classification,
    Series,
    SupportClass,
    SupportDescriptor,
    T,
    ValuationOutcome,
    classify,
    in_infinitesimals,
    lower_bound,
    monoid,
    series_add,
    series_compare,
    series_inv,
    series_mul,
    series_nth_root,
    series_pow,
    series_sqrt,
    series_sub,
    standard_part,
    validate_support,
    valuation,
)

F = Fraction
ONE = Series.const(1)


def S(*terms, trunc=INF):
    return Series(terms, trunc)


# construction and valuation ---------------------------------------------------


def test_make_canonical():
    assert format_series(S((0, 3), (F(1, 2), 2))) == "3 + 2t^{1/2}"
    assert format_series(S((2, 2), (3, -100))) == "2t^2 - 100t^3"
    assert format_series(S((1, 0), (0, 5))) == "5"
    assert S((1, 2), (1, 3)) == S((1, 5))
    assert S((1, 1), (5, 1), trunc=3).terms == ((1, 1),)


def test_valuation():
    assert valuation(S((2, 1), (3, -100))) == 2
    assert valuation(Series()) is ValuationOutcome.ZERO_ELEMENT
    assert valuation(Series((), 5)) is ValuationOutcome.INDETERMINATE


def test_coefficient_beyond_truncation():
    x = S((0, 1), trunc=2)
    assert x.coefficient(1) == 0
    with pytest.raises(IndeterminateAtTruncation):
        x.coefficient(2)


# ring operations ------------------------------------------------------------


def test_add_examples():
    assert (S((0, 1), (1, 1)) + S((0, 1), (1, -1))) == Series.const(2)
    r = series_add(S((1, 1), trunc=3), S((2, 1), trunc=2))
    assert r.terms == ((1, 1),) and r.trunc == 2
    x = S((1, 3), (2, 1))
    assert x + Series() == x


def test_mul_examples():
    assert S((0, 1), (1, 1)) * S((0, 1), (1, -1)) == S((0, 1), (2, -1))
    assert T() * T(-1) == ONE
    a = S((0, 1), (1, 1), trunc=3)
    r = a * a
    assert r.terms == ((0, 1), (1, 2), (2, 1)) and r.trunc == 3


def test_mul_truncation_rule():
    # (t + O(t^3)) * (t^2 + O(t^4)) is known modulo t^5
    r = series_mul(S((1, 1), trunc=3), S((2, 1), trunc=4))
    assert r.trunc == 5 and r.terms == ((3, 1),)


def test_inverse_examples():
    assert series_inv(T()) == T(-1)
    r = series_inv(S((0, 1), (1, -1), trunc=3))
    assert format_series(r) == "1 + t + t^2 + O(t^{3})"
    with pytest.raises(NotInvertible):
        series_inv(Series())
    with pytest.raises(IndeterminateAtTruncation):
        series_inv(Series((), 4))


def test_inverse_default_order():
    # exact non-monomial input: result known to relative order 16
    r = series_inv(S((0, 1), (1, -1)))
    assert r.trunc == 16 and len(r.terms) == 16
    r = series_inv(S((2, 1), (3, 1)))
    assert r.trunc == 14 and r.terms[0] == (-2, 1)


def test_sqrt_examples():
    assert series_sqrt(T(2)) == T()
    r = series_sqrt(S((0, 1), (1, 1), trunc=3))
    assert r.terms == ((0, 1), (1, F(1, 2)), (2, F(-1, 8))) and r.trunc == 3
    with pytest.raises(CoefficientRootUnavailable):
        series_sqrt(Series.const(2))
    with pytest.raises(NegativeLeadingCoefficient):
        series_sqrt(S((0, -1), (1, 1)))
    approx = series_sqrt(Series.const(2).to_domain(APPROX))
    assert abs(approx.terms[0][1] - 2**0.5) < 1e-15


def test_rational_power_oracle():
    # (1 + t)^(-1/3) = 1 - t/3 + 2t^2/9 - 14t^3/81 + ...  (binomial series)
    r = series_pow(S((0, 1), (1, 1)), F(-1, 3), 4)
    assert r.terms == ((0, 1), (1, F(-1, 3)), (2, F(2, 9)), (3, F(-14, 81)))
    assert series_nth_root(S((3, -8)), 3) == S((1, -2))


def test_monoid():
    assert monoid([F(1, 2), F(2, 3)], 2) == [0, F(1, 2), F(2, 3), 1, F(7, 6), F(4, 3), F(3, 2), F(5, 3), F(11, 6)]


# order ----------------------------------------------------------------------


def test_compare_examples():
    assert series_compare(S((2, 2), (3, -100)), Series()) is Ordering.GT
    assert series_compare(T(), Series.const(F(1, 5))) is Ordering.LT
    x = S((0, 1), (1, 1), trunc=2)
    assert series_compare(x, x) is Ordering.INDETERMINATE
    assert series_compare(ONE, ONE) is Ordering.EQ


@pytest.mark.parametrize("n", range(1, 101))
def test_archimedean_violation(n):
    assert series_compare(T(), Series.const(F(1, n))) is Ordering.LT
    assert series_compare(T(), Series()) is Ordering.GT


def test_classify_examples():
    assert classify(T()) is Classification.INFINITESIMAL
    assert classify(T(-2)) is Classification.INFINITE
    assert classify(S((0, 3), (1, 5))) is Classification.UNIT
    assert classify(Series()) is Classification.ZERO
    with pytest.raises(IndeterminateAtTruncation):
        classify(Series((), 3))


def test_standard_part_examples():
    assert standard_part(S((0, 3), (1, 5))) == 3
    assert standard_part(T()) == 0
    with pytest.raises(NotFinite):
        standard_part(T(-1))


def test_in_infinitesimals():
    assert in_infinitesimals(Series())
    assert in_infinitesimals(S((1, 1), trunc=4))
    assert in_infinitesimals(Series((), 1))
    assert not in_infinitesimals(ONE)


# properties ---------------------------------------------------------------


@given(exact_series, exact_series, exact_series)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert (a - a).is_zero


@settings(max_examples=60)
@given(nonzero_series)
def test_inverse_round_trip(x):
    for order in (4, 8, 16):
        assert lower_bound(series_mul(x, series_inv(x, order)) - ONE) >= order


@given(exact_series, exact_series, exact_series)
def test_order_axioms(a, b, c):
    ab = series_compare(a, b)
    ba = series_compare(b, a)
    assert ab is not Ordering.INDETERMINATE
    assert (ab, ba) in {(Ordering.LT, Ordering.GT), (Ordering.GT, Ordering.LT), (Ordering.EQ, Ordering.EQ)}
    assert series_compare(a + c, b + c) is ab
    if series_compare(c, Series()) is Ordering.GT:
        assert series_compare(a * c, b * c) is ab
    if ab is Ordering.LT and series_compare(b, c) is Ordering.LT:
        assert series_compare(a, c) is Ordering.LT


@given(nonzero_series)
def test_reciprocal_duality(x):
    is_small = classify(x) is Classification.INFINITESIMAL
    assert is_small == (classify(series_inv(x, 8)) is Classification.INFINITE)


@given(exact_series, exact_series)
def test_standard_part_is_homomorphism(a, b):
    assume(all(classify(s) is not Classification.INFINITE for s in (a, b)))
    assert standard_part(a + b) == standard_part(a) + standard_part(b)
    assert standard_part(a * b) == standard_part(a) * standard_part(b)


@settings(max_examples=60)
@given(nonzero_series)
def test_sqrt_round_trip(x):
    assume(x.terms[0][1] > 0)
    try:
        r = series_sqrt(x, 8)
    except CoefficientRootUnavailable:
        return
    v = valuation(r)
    representative = Series(r.terms)
    # r is known modulo t^trunc, so r^2 is known modulo t^(trunc + v)
    assert lower_bound(series_sub(representative * representative, x)) >= r.trunc + v
    assert lower_bound(series_sub(r * r, x)) >= r.trunc + min(v, 0)


# supports -------------------------------------------------------------------


def test_support_examples():
    assert validate_support(SupportDescriptor((F(0),), (0, 1), (1, 1))) is SupportClass.WELL_ORDERED_NOT_LEFT_FINITE
    assert validate_support(SupportDescriptor((F(-1), F(0)), (0, 1))) is SupportClass.LEFT_FINITE
    assert validate_support(SupportDescriptor((), (1,), (0, 1))) is SupportClass.NOT_WELL_ORDERED
    assert validate_support(SupportDescriptor((F(1), F(2)))) is SupportClass.LEFT_FINITE
    with pytest.raises(UnsupportedRule):
        validate_support(SupportDescriptor((), (1,), (-2, 1)))
