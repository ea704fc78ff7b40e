from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from support import exact_series

from nafield.calculus import Div, Neg, PowRat, Sin, Var
from nafield.complex_ext import ComplexSeries
from nafield.errors import NafieldError
from nafield.exact_core import APPROX
from nafield.parser import (
    ParseError,
    format_complex,
    format_series,
    parse_complex,
    parse_expr,
    parse_hyperseq,
    parse_series,
    parse_series_poly,
    parse_support,
)
from nafield.series import Series, SupportDescriptor

F = Fraction


def test_expr_examples():
    assert parse_expr("x^3") == PowRat(Var(), F(3))
    assert parse_expr("sin(x)/x") == Div(Sin(Var()), Var())
    with pytest.raises(ParseError) as info:
        parse_expr("x^(1/2")
    assert info.value.kind == "UnbalancedParen"
    assert (info.value.span.start, info.value.span.end) == (2, 3)


def test_expr_precedence():
    assert parse_expr("-x^2") == Neg(PowRat(Var(), F(2)))
    assert parse_expr("x^2^3") == PowRat(Var(), F(8))
    assert parse_expr("2x") == parse_expr("2*x")


@pytest.mark.parametrize(
    "text, kind",
    [
        ("", "EmptyInput"),
        ("   ", "EmptyInput"),
        ("foo(x)", "UnknownFunction"),
        ("(x + 1", "UnbalancedParen"),
        ("x + 1)", "UnbalancedParen"),
        ("x +", "UnexpectedToken"),
        ("1e9999 + x", "BadNumber"),
        ("x^(1/0)", "BadNumber"),
        ("x $ 2", "UnexpectedToken"),
    ],
)
def test_expr_errors(text, kind):
    with pytest.raises(ParseError) as info:
        parse_expr(text)
    assert info.value.kind == kind
    assert 0 <= info.value.span.start <= info.value.span.end <= len(text.encode())


def test_series_examples():
    assert parse_series("2t^2 - 100t^3") == Series([(2, 2), (3, -100)])
    with pytest.raises(ParseError) as info:
        parse_series("1 + t/??")
    assert info.value.kind == "UnexpectedToken"
    s = parse_series("1 + 2t^(1/2) + O(t^3)")
    assert s.terms == ((0, 1), (F(1, 2), 2)) and s.trunc == 3


def test_format_examples():
    assert format_series(Series([(1, 1)])) == "t"
    assert format_series(Series([(-1, 1)])) == "t^{-1}"
    assert format_series(Series([(0, 3), (F(1, 2), 2)], 3)) == "3 + 2t^{1/2} + O(t^{3})"
    assert format_series(Series()) == "0"
    assert format_series(Series((), 2)) == "O(t^{2})"


def test_series_spelling_variants():
    canonical = parse_series("1/2*t^{1/2} - 3t^2")
    for text in ("1/2 t^(1/2) - 3*t^2", "1/2*t^{1/2} − 3·t^2", "-3t^2 + 1/2*t^(1/2)"):
        assert parse_series(text) == canonical


def test_decimal_coefficients_are_approximate():
    s = parse_series("1.5 - 2.25*t")
    assert s.domain is APPROX and s.terms == ((0, 1.5), (1, -2.25))
    assert parse_series(format_series(s)) == s


@given(exact_series, st.one_of(st.none(), st.integers(-3, 6)))
def test_series_round_trip(s, trunc):
    if trunc is not None:
        s = s.truncate(trunc)
    assert parse_series(format_series(s)) == s


@given(exact_series, exact_series)
def test_complex_round_trip(re, im):
    z = ComplexSeries(re, im)
    back = parse_complex(format_complex(z))
    assert back == z


def test_complex_forms():
    assert parse_complex("3 + i*(4)") == ComplexSeries.of(3, 4)
    assert parse_complex("i") == ComplexSeries.of(0, 1)
    assert parse_complex("i*(t^{-1})") == ComplexSeries(Series(), Series([(-1, 1)]))


def test_hyper_forms():
    assert str(parse_hyperseq("n^2 * 3^n + 1")) == "3^n * n^2 + 1"
    assert str(parse_hyperseq("1/n")) == "n^{-1}"


def test_support_forms():
    assert parse_support("0 | k/(k+1)") == SupportDescriptor((F(0),), (F(0), F(1)), (F(1), F(1)), 1)
    assert parse_support("-1, 0 | k @ 3").start == 3
    assert parse_support("1/2, 2/3").tail_num is None


def test_series_polynomial_forms():
    p = parse_series_poly("y^3 + t*y - (1 + t)/2")
    assert p.degree == 3
    assert p.coefficients[0] == Series([(0, F(-1, 2)), (1, F(-1, 2))])
    assert p.coefficients[1] == Series([(1, 1)])


@given(st.text(max_size=40))
def test_fuzzed_text_never_crashes(text):
    for parse in (parse_expr, parse_series, parse_complex, parse_hyperseq):
        try:
            parse(text)
        except ParseError as exc:
            assert 0 <= exc.span.start <= exc.span.end <= len(text.encode("utf-8", "surrogatepass"))
    for parse in (parse_series_poly, parse_support):
        try:
            parse(text)
        except NafieldError:
            pass
