"""Exact arithmetic in non-Archimedean ordered fields.

Truncated generalized power series in an infinitesimal ``t`` with rational
exponents, their real closure via Newton-Puiseux lifting, the complex
extension, a Leibniz-style calculus on top of them, and a decidable fragment
of the sequence hyperreals.
"""

from .errors import *  # noqa: F401,F403
from .exact_core import APPROX, COMPLEX_APPROX, EXACT, Ordering, Rational, parse_rational
from .series import (
    INF,
    Classification,
    Series,
    SupportClass,
    SupportDescriptor,
    T,
    classify,
    in_infinitesimals,
    series_add,
    series_compare,
    series_div,
    series_inv,
    series_mul,
    series_pow,
    series_sqrt,
    series_sub,
    standard_part,
    validate_support,
    valuation,
)
from .real_closure import SeriesPolynomial, newton_puiseux, odd_degree_real_root, poly_eval
from .complex_ext import ComplexSeries, algebraic_unit_bound, cx_abs, cx_arith, cx_classify
from .calculus import derivative, eval_expr, leibniz_trace, limit
from .asymptotic import HyperSeq, RhoClass, growth_compare, hyper_classify, rho_classify
from .parser import (
    ParseError,
    format_series,
    parse_complex,
    parse_expr,
    parse_hyperseq,
    parse_series,
    parse_series_poly,
    parse_support,
)

__version__ = "0.1.0"
