from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nafield.complex_ext import ComplexSeries, cx_arith
from nafield.errors import CoefficientRootUnavailable, DomainError, NoRealBranch, NotSquareFree
from nafield.exact_core import APPROX, COMPLEX_APPROX
from nafield.parser import format_series, parse_series_poly
from nafield.real_closure import SeriesPolynomial, is_square_free, newton_puiseux, odd_degree_real_root, poly_eval
from nafield.series import INF, Series, T, lower_bound

F = Fraction

# roots of y^5 - t*y - 1 and y^3 + y - t, frozen from a sympy fixed-point
# iteration (y = (1 + t*y)^(1/5) and y = t - y^3)
QUINTIC_BRANCH = [(0, 1), (1, F(1, 5)), (2, F(-1, 25)), (3, F(1, 125)), (5, F(-21, 15625)), (6, F(78, 78125)), (7, F(-187, 390625))]
CUBIC_BRANCH = [(1, 1), (3, -1), (5, 3), (7, -12)]


def test_poly_eval_examples():
    p = parse_series_poly("y^2 - t")
    assert poly_eval(p, T(F(1, 2))).is_zero
    assert poly_eval(parse_series_poly("y - 1"), Series([(0, 1), (1, 1)])) == T()
    assert poly_eval(parse_series_poly("y^3"), T()) == T(3)


def test_polynomial_invariants():
    with pytest.raises(DomainError):
        SeriesPolynomial([Series.const(1)])
    p = SeriesPolynomial([T(), Series.const(0), Series.const(1), Series()])
    assert p.degree == 2


def test_square_root_of_t():
    roots = newton_puiseux(parse_series_poly("y^2 - t"), 3)
    assert roots == [T(F(1, 2)), -T(F(1, 2))]


def test_square_root_of_one_plus_t():
    roots = newton_puiseux(parse_series_poly("y^2 - (1 + t)"), 3)
    assert [format_series(r) for r in roots] == ["1 + 1/2*t - 1/8*t^2 + O(t^{3})", "-1 - 1/2*t + 1/8*t^2 + O(t^{3})"]


def test_cube_root_real_only():
    assert newton_puiseux(parse_series_poly("y^3 - t"), 2) == [T(F(1, 3))]


def test_cubic_with_linear_term():
    assert format_series(newton_puiseux(parse_series_poly("y^3 + y - t"), 3)[0]) == "t + O(t^{3})"
    root = newton_puiseux(parse_series_poly("y^3 + y - t"), 8)[0]
    assert list(root.terms) == CUBIC_BRANCH


def test_quintic_branch_matches_oracle():
    p = parse_series_poly("y^5 - t*y - 1")
    [root] = newton_puiseux(p, 8)
    assert list(root.terms) == QUINTIC_BRANCH and root.trunc == 8


def test_repeated_characteristic_root_is_separated():
    # (y - t)^2 = t^3 splits into t +- t^(3/2)
    roots = newton_puiseux(parse_series_poly("y^2 - 2*t*y + t^2 - t^3"), 4)
    assert roots == [T() + T(F(3, 2)), T() - T(F(3, 2))]


def test_negative_valuation_branches():
    assert newton_puiseux(parse_series_poly("t*y^2 - 1"), 4) == [T(F(-1, 2)), -T(F(-1, 2))]


def test_zero_root():
    roots = newton_puiseux(parse_series_poly("y^2 - t*y"), 4)
    assert roots == [T(), Series()]


def test_errors():
    with pytest.raises(NotSquareFree):
        newton_puiseux(parse_series_poly("(y - 1)^2"), 3)
    with pytest.raises(NoRealBranch):
        newton_puiseux(parse_series_poly("y^2 + t"), 3)
    with pytest.raises(CoefficientRootUnavailable):
        newton_puiseux(parse_series_poly("y^2 - 2"), 3)
    with pytest.raises(DomainError):
        odd_degree_real_root(parse_series_poly("y^2 - t"), 3)


def test_approx_mode_handles_irrational_constants():
    roots = newton_puiseux(parse_series_poly("y^2 - 2 - t").to_domain(APPROX), 6)
    assert len(roots) == 2
    for r in roots:
        assert r.domain is APPROX
        assert lower_bound(poly_eval(parse_series_poly("y^2 - 2 - t").to_domain(APPROX), r)) >= 6


def test_odd_degree_examples():
    assert odd_degree_real_root(parse_series_poly("y^3 - t"), 4) == T(F(1, 3))
    linear = odd_degree_real_root(parse_series_poly("y - (2t^2 - 100t^3)"), 4)
    assert linear == Series([(2, 2), (3, -100)])


def test_complex_branch_count_equals_degree():
    for text in ("y^3 - t", "y^2 + 1", "y^5 - t*y - 1", "y^4 + t"):
        p = parse_series_poly(text)
        roots = newton_puiseux(p, 5, real_only=False)
        assert len(roots) == p.degree
        pc = p.to_domain(COMPLEX_APPROX)
        for z in roots:
            assert isinstance(z, ComplexSeries)
            if z.im.is_zero:
                continue
            combined = Series(
                [(e, complex(c)) for e, c in z.re.terms] + [(e, 1j * c) for e, c in z.im.terms],
                min(z.re.trunc, z.im.trunc),
            )
            residual = poly_eval(pc, combined)
            assert lower_bound(residual) >= 5


def test_real_branches_have_exactly_zero_imaginary_part():
    roots = newton_puiseux(parse_series_poly("y^3 - t"), 4, real_only=False)
    real = [z for z in roots if z.im.is_zero]
    assert len(real) == 1 and real[0].re == T(F(1, 3))
    assert cx_arith("conj", real[0]) == real[0]


def test_square_free_check():
    assert is_square_free(parse_series_poly("y^2 - t"))
    assert not is_square_free(parse_series_poly("y^3 - 2*t*y^2 + t^2*y"))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=3), min_size=2, max_size=3, unique=True),
       st.sampled_from([1, 2, 3]))
def test_residual_property_on_product_polynomials(constants, order):
    # p = prod (y - c_i - t^k * c_i) has distinct rational-series roots
    p = [Series.const(1)]
    for c in constants:
        factor = [Series([(0, -c), (order, -c)]), Series.const(1)]
        out = [Series() for _ in range(len(p) + 1)]
        for i, a in enumerate(p):
            for j, b in enumerate(factor):
                out[i + j] = out[i + j] + a * b
        p = out
    poly = SeriesPolynomial(p)
    roots = newton_puiseux(poly, 8)
    assert len(roots) == len(constants)
    for r in roots:
        assert lower_bound(poly_eval(poly, r)) >= 8
        assert r.trunc == INF or r.trunc >= 8
