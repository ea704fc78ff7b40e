"""Text formats: expressions, series, complex series, hyper-sequences,
polynomials in ``y`` over series, and support descriptors.

Expression grammar (``-x^2`` is ``-(x^2)``)::

    expr   := term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*          # also NUMBER IDENT adjacency: 2x
    unary  := ('-'|'+') unary | power
    power  := base ('^' exponent)?              # exponent chains associate right
    base   := NUMBER | VAR | FUNC '(' expr ')' | '(' expr ')'
    exponent := ['-'|'+'] (NUMBER ['/' NUMBER] | '(' rational ')' | '{' rational '}')

Series grammar::

    series := ['-'] sterm (('+'|'-') sterm)* ['+' 'O(t^' exponent ')']
    sterm  := coeff ['*'] 't' ['^' exponent] | coeff | 't' ['^' exponent]
    coeff  := NUMBER ['/' NUMBER]

A coefficient written with a decimal point or exponent (``1.5``, ``2e-3``) is
an approximate float; everything else is exact.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from . import qpoly
from .errors import DomainError, NafieldError, UnsupportedRule
from .exact_core import APPROX, EXACT, format_rational
from .series import INF, Series, SupportDescriptor, T, series_make, series_mul, series_pow

__all__ = [
    "SourceSpan",
    "ParseError",
    "parse_expr",
    "parse_series",
    "parse_complex",
    "parse_hyperseq",
    "parse_series_poly",
    "parse_support",
    "format_series",
    "format_coefficient",
    "format_complex",
    "format_hyperseq",
    "format_exponent",
]

MAX_DEPTH = 200
MAX_POWER_EXPONENT = 64
MAX_DECIMAL_EXPONENT = 1000
MAX_POLY_DEGREE = 256


@dataclass(frozen=True)
class SourceSpan:
    """Byte offsets into the UTF-8 encoded input."""

    start: int
    end: int


class ParseError(NafieldError, ValueError):
    KINDS = ("UnexpectedToken", "UnbalancedParen", "BadNumber", "UnknownFunction", "EmptyInput")

    def __init__(self, kind: str, span: SourceSpan, message: str):
        assert kind in self.KINDS
        super().__init__(f"{kind} at {span.start}..{span.end}: {message}")
        self.parse_kind = kind
        self.span = span
        self.message = message

    @property
    def kind(self) -> str:
        return self.parse_kind


# tokens ---------------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # NUM IDENT OP LPAR RPAR LBRACE RBRACE COMMA PIPE AT EOF
    text: str
    start: int
    end: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^−·])
  | (?P<lpar>\()
  | (?P<rpar>\))
  | (?P<lbrace>\{)
  | (?P<rbrace>\})
  | (?P<comma>,)
  | (?P<pipe>\|)
  | (?P<at>@)
    """,
    re.VERBOSE,
)

_OP_ALIASES = {"−": "-", "·": "*"}


class _Lexer:
    def __init__(self, text: str):
        self.text = text

    def span(self, start: int, end: int) -> SourceSpan:
        # char offsets -> UTF-8 byte offsets
        if self.text.isascii():
            return SourceSpan(start, end)
        enc = lambda i: len(self.text[:i].encode("utf-8", "surrogatepass"))  # noqa: E731
        return SourceSpan(enc(start), enc(end))

    def error(self, kind: str, start: int, end: int, message: str) -> ParseError:
        return ParseError(kind, self.span(start, end), message)

    def tokens(self) -> list[Token]:
        out, pos, text = [], 0, self.text
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if not m:
                raise self.error("UnexpectedToken", pos, pos + 1, f"unexpected character {text[pos]!r}")
            kind = m.lastgroup
            if kind != "ws":
                val = m.group()
                if kind == "op":
                    val = _OP_ALIASES.get(val, val)
                out.append(Token(kind.upper(), val, m.start(), m.end()))
            pos = m.end()
        out.append(Token("EOF", "", len(text), len(text)))
        return out


def _is_decimal(text: str) -> bool:
    return any(ch in text for ch in ".eE")


class _Parser:
    def __init__(self, text: str):
        if not isinstance(text, str):
            raise TypeError("parser input must be str")
        self.lex = _Lexer(text)
        if not text.strip():
            raise self.lex.error("EmptyInput", 0, len(text), "empty input")
        self.toks = self.lex.tokens()
        self.i = 0
        self.depth = 0

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def advance(self) -> Token:
        t = self.toks[self.i]
        if t.kind != "EOF":
            self.i += 1
        return t

    def at_op(self, *ops: str) -> bool:
        return self.tok.kind == "OP" and self.tok.text in ops

    def fail(self, tok: Token | None = None, msg: str | None = None, kind: str = "UnexpectedToken"):
        tok = tok or self.tok
        if msg is None:
            msg = "unexpected end of input" if tok.kind == "EOF" else f"unexpected {tok.text!r}"
        return self.lex.error(kind, tok.start, tok.end, msg)

    def expect_end(self):
        if self.tok.kind != "EOF":
            if self.tok.kind == "RPAR" or self.tok.kind == "RBRACE":
                raise self.fail(kind="UnbalancedParen", msg=f"unmatched {self.tok.text!r}")
            raise self.fail()

    def close(self, opener: Token, kind: str):
        if self.tok.kind != kind:
            if self.tok.kind == "EOF":
                raise self.lex.error("UnbalancedParen", opener.start, opener.end, f"unclosed {opener.text!r}")
            raise self.fail()
        self.advance()

    def enter(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise self.fail(msg="nesting too deep")

    def leave(self):
        self.depth -= 1

    # numbers
    def number_value(self, tok: Token, exact: bool):
        text = tok.text
        if not _is_decimal(text):
            return Fraction(int(text))
        ex = text.lower().partition("e")[2]
        if ex and abs(int(ex)) > MAX_DECIMAL_EXPONENT:
            raise self.fail(tok, f"exponent out of range in {text!r}", "BadNumber")
        if exact:
            return Fraction(text)
        val = float(text)
        if not math.isfinite(val):
            raise self.fail(tok, f"not a finite number: {text!r}", "BadNumber")
        return val

    def signed_rational(self) -> Fraction:
        """['-'|'+'] NUMBER ['/' ['-'] NUMBER], exact."""
        neg = False
        while self.at_op("-", "+"):
            neg ^= self.advance().text == "-"
        if self.tok.kind != "NUM":
            raise self.fail()
        num_tok = self.advance()
        val = self.number_value(num_tok, exact=True)
        if self.at_op("/") and (self.peek().kind == "NUM" or (self.peek().kind == "OP" and self.peek().text == "-")):
            self.advance()
            den_neg = False
            if self.at_op("-"):
                self.advance()
                den_neg = True
            if self.tok.kind != "NUM":
                raise self.fail(kind="BadNumber")
            den_tok = self.advance()
            den = self.number_value(den_tok, exact=True)
            if den == 0:
                raise self.lex.error("BadNumber", num_tok.start, den_tok.end, "zero denominator")
            val = val / den
            if den_neg:
                val = -val
        return -val if neg else val

    def exponent(self) -> Fraction:
        """Exponent after '^': signed rational, '(' rational ')' or '{' rational '}'."""
        if self.tok.kind in ("LPAR", "LBRACE"):
            opener = self.advance()
            self.enter()
            val = self.signed_rational()
            self.close(opener, "RPAR" if opener.kind == "LPAR" else "RBRACE")
            self.leave()
        else:
            val = self.signed_rational()
        if self.at_op("^"):
            tok = self.advance()
            self.enter()
            outer = self.exponent()
            self.leave()
            if outer.denominator != 1 or abs(outer) > MAX_POWER_EXPONENT:
                raise self.fail(tok, "exponent of an exponent must be a small integer", "BadNumber")
            if val == 0 and outer < 0:
                raise self.fail(tok, "zero to a negative power", "BadNumber")
            if abs(val.numerator).bit_length() * abs(outer) > 4096 or val.denominator.bit_length() * abs(outer) > 4096:
                raise self.fail(tok, "exponent too large", "BadNumber")
            val = val ** int(outer)
        return val


# expressions ----------------------------------------------------------------


class _ExprParser(_Parser):
    def __init__(self, text: str, variables):
        super().__init__(text)
        self.variables = tuple(variables)

    def parse(self):
        e = self.expr()
        self.expect_end()
        return e

    def expr(self):
        from .calculus import Add, Sub

        self.enter()
        node = self.term()
        while self.at_op("+", "-"):
            op = self.advance().text
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        self.leave()
        return node

    def term(self):
        from .calculus import Div, Mul

        node = self.unary()
        while True:
            if self.at_op("*", "/"):
                op = self.advance().text
                rhs = self.unary()
                node = Mul(node, rhs) if op == "*" else Div(node, rhs)
            elif self.tok.kind == "IDENT" and self.toks[self.i - 1].kind == "NUM" and self.toks[self.i - 1].end == self.tok.start:
                node = Mul(node, self.unary())
            else:
                return node

    def unary(self):
        from .calculus import Neg

        if self.at_op("-", "+"):
            op = self.advance().text
            self.enter()
            inner = self.unary()
            self.leave()
            return Neg(inner) if op == "-" else inner
        return self.power()

    def power(self):
        from .calculus import PowRat

        base = self.base()
        if self.at_op("^"):
            self.advance()
            return PowRat(base, self.exponent())
        return base

    def base(self):
        from .calculus import FUNCTIONS, Const, Var

        tok = self.tok
        if tok.kind == "NUM":
            self.advance()
            return Const(self.number_value(tok, exact=True))
        if tok.kind == "IDENT":
            self.advance()
            if self.tok.kind == "LPAR":
                if tok.text not in FUNCTIONS:
                    raise self.fail(tok, f"unknown function {tok.text!r}", "UnknownFunction")
                opener = self.advance()
                arg = self.expr()
                self.close(opener, "RPAR")
                return FUNCTIONS[tok.text](arg)
            if tok.text in self.variables:
                return Var(tok.text)
            if tok.text in FUNCTIONS:
                raise self.fail(msg=f"expected '(' after {tok.text!r}")
            raise self.fail(tok, f"unknown identifier {tok.text!r}")
        if tok.kind == "LPAR":
            opener = self.advance()
            inner = self.expr()
            self.close(opener, "RPAR")
            return inner
        if tok.kind in ("RPAR", "RBRACE"):
            raise self.fail(kind="UnbalancedParen", msg=f"unmatched {tok.text!r}")
        raise self.fail()


def parse_expr(text: str, variables=("x",)):
    """Parse an expression over the given variable names into an ``Expr``."""
    return _ExprParser(text, variables).parse()


# series ---------------------------------------------------------------------


class _SeriesParser(_Parser):
    def series(self, stop_at_i: bool = False) -> Series:
        terms, floats, trunc = [], False, INF
        neg = False
        if self.at_op("-", "+"):
            neg = self.advance().text == "-"
        while True:
            if self.tok.kind == "IDENT" and self.tok.text == "O":
                trunc = self.tail()
                break
            exp, coeff = self.sterm()
            floats |= isinstance(coeff, float)
            terms.append((exp, -coeff if neg else coeff))
            if self.at_op("+", "-"):
                nxt = self.peek()
                if stop_at_i and nxt.kind == "IDENT" and nxt.text == "i":
                    break
                neg = self.advance().text == "-"
                continue
            break
        domain = APPROX if floats else EXACT
        return series_make(terms, trunc, domain)

    def tail(self):
        self.advance()  # O
        if self.tok.kind != "LPAR":
            raise self.fail()
        opener = self.advance()
        if not (self.tok.kind == "IDENT" and self.tok.text == "t"):
            raise self.fail()
        self.advance()
        exp = Fraction(1)
        if self.at_op("^"):
            self.advance()
            exp = self.exponent()
        self.close(opener, "RPAR")
        return exp

    def coefficient(self):
        tok = self.advance()
        val = self.number_value(tok, exact=False)
        if self.at_op("/") and self.peek().kind == "NUM":
            self.advance()
            den_tok = self.advance()
            den = self.number_value(den_tok, exact=False)
            if den == 0:
                raise self.lex.error("BadNumber", tok.start, den_tok.end, "zero denominator")
            val = val / den
        return val

    def sterm(self):
        coeff = Fraction(1)
        if self.tok.kind == "NUM":
            coeff = self.coefficient()
            if self.at_op("*"):
                self.advance()
                if not (self.tok.kind == "IDENT" and self.tok.text == "t"):
                    raise self.fail()
            elif not (self.tok.kind == "IDENT" and self.tok.text == "t"):
                return Fraction(0), coeff
        if self.tok.kind == "IDENT" and self.tok.text == "t":
            self.advance()
            exp = Fraction(1)
            if self.at_op("^"):
                self.advance()
                exp = self.exponent()
            return exp, coeff
        raise self.fail()


def parse_series(text: str) -> Series:
    """Parse a series literal such as ``"1 + 2t^(1/2) + O(t^3)"``."""
    p = _SeriesParser(text)
    s = p.series()
    p.expect_end()
    return s


def parse_complex(text: str):
    """Parse ``"RE + i*(IM)"``; either part may be omitted."""
    from .complex_ext import ComplexSeries

    p = _SeriesParser(text)
    re_part = Series()
    if not (p.tok.kind == "IDENT" and p.tok.text == "i") and not (
        p.at_op("-", "+") and p.peek().kind == "IDENT" and p.peek().text == "i"
    ):
        re_part = p.series(stop_at_i=True)
    im_part = Series()
    if p.tok.kind != "EOF":
        neg = False
        if p.at_op("-", "+"):
            neg = p.advance().text == "-"
        if not (p.tok.kind == "IDENT" and p.tok.text == "i"):
            raise p.fail()
        p.advance()
        if p.at_op("*"):
            p.advance()
            if p.tok.kind != "LPAR":
                raise p.fail()
            opener = p.advance()
            im_part = p.series()
            p.close(opener, "RPAR")
        else:
            im_part = Series.const(1)
        if neg:
            im_part = -im_part
    p.expect_end()
    return ComplexSeries(re_part, im_part)


# hyper-sequences ------------------------------------------------------------


class _HyperParser(_Parser):
    def hyperseq(self):
        from .asymptotic import HyperSeq

        terms = []
        neg = False
        if self.at_op("-", "+"):
            neg = self.advance().text == "-"
        while True:
            c, b, q, p = self.hterm()
            terms.append((-c if neg else c, b, q, p))
            if self.at_op("+", "-"):
                neg = self.advance().text == "-"
                continue
            break
        self.expect_end()
        return HyperSeq.from_tuples(terms)

    def hterm(self):
        c, b, q, p = self.hfactor()
        while True:
            if self.at_op("*", "/"):
                op_tok = self.advance()
                c2, b2, q2, p2 = self.hfactor()
                if op_tok.text == "*":
                    c, b, q, p = c * c2, b * b2, q + q2, p + p2
                else:
                    if c2 == 0 or p2:
                        raise self.fail(op_tok, "cannot divide by this factor")
                    c, b, q, p = c / c2, b / b2, q - q2, p - p2
            elif self.tok.kind == "IDENT" and self.toks[self.i - 1].kind in ("NUM", "RPAR"):
                c2, b2, q2, p2 = self.hfactor()
                c, b, q, p = c * c2, b * b2, q + q2, p + p2
            else:
                return c, b, q, p

    def hfactor(self):
        one, zero = Fraction(1), Fraction(0)
        tok = self.tok
        if tok.kind == "IDENT" and tok.text == "n":
            self.advance()
            q = Fraction(1)
            if self.at_op("^"):
                self.advance()
                q = self.exponent()
            return one, one, q, 0
        if tok.kind == "IDENT" and tok.text == "log":
            self.advance()
            if self.tok.kind != "LPAR":
                raise self.fail()
            opener = self.advance()
            if not (self.tok.kind == "IDENT" and self.tok.text == "n"):
                raise self.fail()
            self.advance()
            self.close(opener, "RPAR")
            p = 1
            if self.at_op("^"):
                self.advance()
                e = self.exponent()
                if e.denominator != 1 or e < 0:
                    raise self.fail(msg="log(n) power must be a nonnegative integer", kind="BadNumber")
                p = int(e)
            return one, one, zero, p
        if tok.kind == "LPAR":
            opener = self.advance()
            val = self.signed_rational()
            self.close(opener, "RPAR")
            return self.maybe_base(val)
        if tok.kind == "NUM":
            self.advance()
            return self.maybe_base(self.number_value(tok, exact=False))
        if tok.kind == "IDENT":
            raise self.fail(tok, f"unknown identifier {tok.text!r}")
        if tok.kind in ("RPAR", "RBRACE"):
            raise self.fail(kind="UnbalancedParen", msg=f"unmatched {tok.text!r}")
        raise self.fail()

    def maybe_base(self, val):
        one, zero = Fraction(1), Fraction(0)
        if self.at_op("^") and self.peek().kind == "IDENT" and self.peek().text == "n":
            tok = self.advance()
            self.advance()
            if val <= 0:
                raise self.fail(tok, "exponential base must be positive", "BadNumber")
            return one, val, zero, 0
        return val, one, zero, 0


def parse_hyperseq(text: str):
    """Parse ``"c * b^n * n^q * log(n)^p"`` terms joined by + and -."""
    return _HyperParser(text).hyperseq()


# polynomials in y and support descriptors ------------------------------------


def _contains_var(e, name: str) -> bool:
    from .calculus import Expr, Var

    if isinstance(e, Var):
        return e.name == name
    return any(isinstance(v, Expr) and _contains_var(v, name) for v in vars(e).values()) if hasattr(e, "__dict__") else False


def _to_ypoly(e) -> dict:
    from .calculus import Add, Const, Div, Mul, Neg, PowRat, Sub, Var, eval_expr

    if not _contains_var(e, "y"):
        s = eval_expr(e, {"t": T()})
        return {0: s} if not s.is_zero else {}
    if isinstance(e, Var):
        return {1: Series.const(1)}
    if isinstance(e, Neg):
        return {k: -v for k, v in _to_ypoly(e.arg).items()}
    if isinstance(e, (Add, Sub)):
        a, b = _to_ypoly(e.left), _to_ypoly(e.right)
        if isinstance(e, Sub):
            b = {k: -v for k, v in b.items()}
        out = dict(a)
        for k, v in b.items():
            out[k] = out[k] + v if k in out else v
        return {k: v for k, v in out.items() if not v.is_zero}
    if isinstance(e, Mul):
        return _ypoly_mul(_to_ypoly(e.left), _to_ypoly(e.right))
    if isinstance(e, Div):
        if _contains_var(e.right, "y"):
            raise DomainError("cannot divide by an expression in y")
        d = eval_expr(e.right, {"t": T()})
        inv = series_pow(d, -1)
        return {k: series_mul(v, inv) for k, v in _to_ypoly(e.left).items()}
    if isinstance(e, PowRat):
        q = e.exponent
        if q.denominator != 1 or q < 0:
            raise DomainError("y may only be raised to nonnegative integer powers")
        if q > MAX_POLY_DEGREE:
            raise DomainError(f"degree in y is limited to {MAX_POLY_DEGREE}")
        out = {0: Series.const(1)}
        base = _to_ypoly(e.base)
        for _ in range(int(q)):
            out = _ypoly_mul(out, base)
        return out
    if isinstance(e, Const):
        return {0: Series.const(e.value)}
    raise DomainError(f"{type(e).__name__} of an expression in y is not polynomial")


def _ypoly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for i, x in a.items():
        for j, y in b.items():
            v = series_mul(x, y)
            out[i + j] = out[i + j] + v if i + j in out else v
    if out and max(out) > MAX_POLY_DEGREE:
        raise DomainError(f"degree in y is limited to {MAX_POLY_DEGREE}")
    return {k: v for k, v in out.items() if not v.is_zero}


def parse_series_poly(text: str):
    """Parse a polynomial in ``y`` with series coefficients in ``t``."""
    from .real_closure import SeriesPolynomial

    e = parse_expr(text, variables=("t", "y"))
    d = _to_ypoly(e)
    if not d or max(d) < 1:
        raise DomainError("polynomial must have degree >= 1 in y")
    return SeriesPolynomial([d.get(i, Series()) for i in range(max(d) + 1)])


def _to_ratfunc(e) -> tuple[list, list]:
    from .calculus import Add, Const, Div, Mul, Neg, PowRat, Sub, Var

    if isinstance(e, Const):
        return [e.value], [Fraction(1)]
    if isinstance(e, Var):
        return [Fraction(0), Fraction(1)], [Fraction(1)]
    if isinstance(e, Neg):
        n, d = _to_ratfunc(e.arg)
        return qpoly.pneg(n), d
    if isinstance(e, (Add, Sub)):
        n1, d1 = _to_ratfunc(e.left)
        n2, d2 = _to_ratfunc(e.right)
        if isinstance(e, Sub):
            n2 = qpoly.pneg(n2)
        return _reduce(qpoly.padd(qpoly.pmul(n1, d2), qpoly.pmul(n2, d1)), qpoly.pmul(d1, d2))
    if isinstance(e, Mul):
        n1, d1 = _to_ratfunc(e.left)
        n2, d2 = _to_ratfunc(e.right)
        return _reduce(qpoly.pmul(n1, n2), qpoly.pmul(d1, d2))
    if isinstance(e, Div):
        n1, d1 = _to_ratfunc(e.left)
        n2, d2 = _to_ratfunc(e.right)
        if not qpoly.trim(n2):
            raise UnsupportedRule("division by the zero polynomial")
        return _reduce(qpoly.pmul(n1, d2), qpoly.pmul(d1, n2))
    if isinstance(e, PowRat) and e.exponent.denominator == 1 and abs(e.exponent) <= MAX_POWER_EXPONENT:
        n, d = _to_ratfunc(e.base)
        k = int(e.exponent)
        if k < 0:
            n, d, k = d, n, -k
        pn, pd = [Fraction(1)], [Fraction(1)]
        for _ in range(k):
            pn, pd = qpoly.pmul(pn, n), qpoly.pmul(pd, d)
        if not qpoly.trim(pd):
            raise UnsupportedRule("division by the zero polynomial")
        return _reduce(pn, pd)
    raise UnsupportedRule(f"{type(e).__name__} is not allowed in a rational tail rule")


def _reduce(n, d):
    n, d = qpoly.trim(n), qpoly.trim(d)
    if not n:
        return [], [Fraction(1)]
    g = qpoly.pgcd(n, d)
    if len(g) > 1:
        n, d = qpoly.pdivmod(n, g)[0], qpoly.pdivmod(d, g)[0]
    lead = d[-1]
    return [c / lead for c in n], [c / lead for c in d]


def parse_support(text: str) -> SupportDescriptor:
    """Parse ``"HEAD | TAIL [@ START]"``.

    HEAD is a comma-separated list of rationals (may be empty), TAIL a
    rational function of ``k``; ``"0 | k/(k+1)"`` describes
    ``{0, 1/2, 2/3, ...}``.
    """
    p = _Parser(text)
    head = []
    while p.tok.kind not in ("PIPE", "EOF"):
        head.append(p.signed_rational())
        if p.tok.kind == "COMMA":
            p.advance()
        elif p.tok.kind not in ("PIPE", "EOF"):
            raise p.fail()
    if p.tok.kind == "EOF":
        return SupportDescriptor(tuple(head))
    pipe = p.advance()
    rest = text[pipe.end:]
    start = 1
    at = rest.rfind("@")
    if at >= 0:
        sp = _Parser(rest[at + 1:])
        k0 = sp.signed_rational()
        sp.expect_end()
        if k0.denominator != 1:
            raise ParseError("BadNumber", p.lex.span(pipe.end + at, len(text)), "start index must be an integer")
        start = int(k0)
        rest = rest[:at]
    try:
        e = parse_expr(rest, variables=("k",))
    except ParseError as err:
        # re-anchor the span into the full input
        off = len(text[: pipe.end].encode("utf-8", "surrogatepass"))
        raise ParseError(err.parse_kind, SourceSpan(err.span.start + off, err.span.end + off), err.message) from None
    num, den = _to_ratfunc(e)
    return SupportDescriptor(tuple(head), tuple(num), tuple(den), start)


# formatting -----------------------------------------------------------------


def format_exponent(e: Fraction) -> str:
    e = Fraction(e)
    if e.denominator == 1 and e >= 0:
        return str(e.numerator)
    return "{" + format_rational(e) + "}"


def format_coefficient(c) -> str:
    if isinstance(c, Fraction):
        return format_rational(c)
    if isinstance(c, int):
        return str(c)
    if isinstance(c, float):
        return repr(c)
    return repr(c)


def _format_term(e: Fraction, c) -> tuple[bool, str]:
    """(negative?, text of |term|)."""
    if isinstance(c, complex):
        raise TypeError("complex-coefficient series have no text form; split into real and imaginary parts")
    neg = c < 0
    mag = -c if neg else c
    if e == 0:
        return neg, format_coefficient(mag)
    tpart = "t" if e == 1 else f"t^{format_exponent(e)}"
    if isinstance(mag, float):
        return neg, f"{mag!r}*{tpart}"
    if mag == 1:
        return neg, tpart
    if mag.denominator == 1:
        return neg, f"{mag.numerator}{tpart}"
    return neg, f"{format_rational(mag)}*{tpart}"


def format_series(x: Series) -> str:
    parts = []
    for e, c in x.terms:
        neg, body = _format_term(e, c)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    if x.trunc != INF:
        tail = "O(t^{" + format_rational(x.trunc) + "})"
        parts.append(tail if not parts else " + " + tail)
    return "".join(parts) if parts else "0"


def format_complex(z) -> str:
    re_txt = format_series(z.re)
    if z.im.is_zero:
        return re_txt
    im_txt = f"i*({format_series(z.im)})"
    if z.re.is_zero:
        return im_txt
    return f"{re_txt} + {im_txt}"


def _format_hyper_term(term) -> tuple[bool, str]:
    c = term.coeff
    neg = c < 0
    mag = -c if neg else c
    factors = []
    if term.base != 1:
        b = term.base
        if isinstance(b, Fraction) and b.denominator != 1:
            factors.append(f"({format_rational(b)})^n")
        else:
            factors.append(f"{format_coefficient(b)}^n")
    if term.power != 0:
        factors.append("n" if term.power == 1 else f"n^{format_exponent(term.power)}")
    if term.log:
        factors.append("log(n)" if term.log == 1 else f"log(n)^{term.log}")
    if mag != 1 or not factors or isinstance(mag, float):
        factors.insert(0, format_coefficient(mag))
    return neg, " * ".join(factors)


def format_hyperseq(x) -> str:
    parts = []
    for term in x.terms:
        neg, body = _format_hyper_term(term)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts) if parts else "0"
