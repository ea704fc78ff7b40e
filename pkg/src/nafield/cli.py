"""Command-line front end.

Exit codes: 0 success, 1 mathematical/domain error, 2 usage or parse error.
With ``--json`` every result is a JSON object on stdout; errors become
``{"error": <kind>, "detail": <message>}`` (also on stdout).  Series and
complex values inside JSON are strings in the same syntax the parser reads.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import asymptotic, calculus, complex_ext, real_closure, series
from .errors import NafieldError
from .exact_core import APPROX, EXACT, format_rational, parse_rational
from .parser import (
    ParseError,
    format_coefficient,
    format_series,
    parse_complex,
    parse_expr,
    parse_hyperseq,
    parse_series,
    parse_series_poly,
    parse_support,
)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    trunc: Fraction = Fraction(16)
    coeff_mode: str = "exact"
    output: str = "text"

    def __post_init__(self):
        if self.trunc <= 0:
            raise UsageError("--trunc must be positive")

    @property
    def domain(self):
        return APPROX if self.coeff_mode == "approx" else EXACT


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, NafieldError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


# commands ----------------------------------------------------------------------


def _series_arg(text: str, cfg: CliConfig) -> series.Series:
    s = parse_series(text)
    return s.to_domain(cfg.domain) if cfg.domain is APPROX else s


def _sign_word(x: series.Series) -> str | None:
    if not x.domain.ordered:
        return None
    s = series.sign(x)
    return "positive" if s > 0 else "negative" if s < 0 else "zero"


def cmd_classify(args, cfg):
    x = _series_arg(args.series, cfg)
    cls = series.classify(x)
    if cls is series.Classification.ZERO:
        return {"classification": str(cls), "valuation": None, "sign": "zero"}, str(cls)
    v = series.valuation(x)
    word = _sign_word(x)
    text = f"{cls} (valuation {format_rational(v)})"
    if word:
        text += f", {word}"
    return {"classification": str(cls), "valuation": format_rational(v), "sign": word}, text


_BINARY = {"+": "add", "-": "sub", "*": "mul", "/": "div", "add": "add", "sub": "sub", "mul": "mul", "div": "div"}
_UNARY = {"inv", "neg", "sqrt", "std"}


def cmd_arith(args, cfg):
    a = _series_arg(args.left, cfg)
    op = args.op
    if op in _UNARY:
        if args.right is not None:
            raise UsageError(f"operation {op!r} takes one operand")
        if op == "inv":
            r = series.series_inv(a, cfg.trunc)
        elif op == "neg":
            r = series.series_neg(a)
        elif op == "sqrt":
            r = series.series_sqrt(a, cfg.trunc)
        else:
            value = series.standard_part(a)
            return {"result": format_coefficient(value)}, format_coefficient(value)
    elif op == "pow":
        if args.right is None:
            raise UsageError("pow needs a rational exponent")
        r = series.series_pow(a, parse_rational(args.right), cfg.trunc)
    elif op in _BINARY:
        if args.right is None:
            raise UsageError(f"operation {op!r} needs two operands")
        b = _series_arg(args.right, cfg)
        name = _BINARY[op]
        if name == "div":
            r = series.series_div(a, b, cfg.trunc)
        else:
            r = {"add": series.series_add, "sub": series.series_sub, "mul": series.series_mul}[name](a, b)
    else:
        raise UsageError(f"unknown operation {op!r}")
    text = format_series(r)
    return {"result": text}, text


def cmd_compare(args, cfg):
    verdict = series.series_compare(_series_arg(args.left, cfg), _series_arg(args.right, cfg))
    return {"ordering": str(verdict)}, str(verdict)


def _complex_arg(text: str, cfg: CliConfig) -> complex_ext.ComplexSeries:
    z = parse_complex(text)
    return z.to_approx() if cfg.domain is APPROX else z


def cmd_abs(args, cfg):
    r = complex_ext.cx_abs(_complex_arg(args.value, cfg), cfg.trunc)
    text = format_series(r)
    return {"result": text}, text


def cmd_cclassify(args, cfg):
    cls = complex_ext.cx_classify(_complex_arg(args.value, cfg))
    return {"classification": str(cls)}, str(cls)


def _value_out(value, cfg):
    if cfg.domain is APPROX and not isinstance(value, (float, complex)):
        value = float(value)
    return format_coefficient(value)


def cmd_derive(args, cfg):
    order = args.order if args.order is not None else 1
    value = calculus.derivative(parse_expr(args.expr), args.at, order, cfg.trunc)
    text = _value_out(value, cfg)
    return {"result": text}, text


def cmd_trace(args, cfg):
    tr = calculus.leibniz_trace(parse_expr(args.expr), args.at, cfg.trunc)
    step1 = tr.step1.to_domain(APPROX) if cfg.domain is APPROX else tr.step1
    s1, s2 = format_series(step1), _value_out(tr.step2, cfg)
    return {"step1": s1, "step2": s2}, f"step 1: {s1}\nstep 2: {s2}"


def cmd_limit(args, cfg):
    to = args.to if args.to.strip().lower() in ("inf", "+inf", "-inf") else parse_rational(args.to)
    res = calculus.limit(parse_expr(args.expr), to, args.side, cfg.trunc)
    if res.kind == "Value":
        text = _value_out(res.value, cfg)
        return {"kind": "Value", "value": text}, text
    payload = {"kind": res.kind}
    if res.kind == "Infinite":
        payload["sign"] = "+" if res.sign > 0 else "-"
    return payload, str(res)


def cmd_roots(args, cfg):
    p = parse_series_poly(args.poly)
    if cfg.domain is APPROX:
        p = p.to_domain(APPROX)
    roots = real_closure.newton_puiseux(p, cfg.trunc, real_only=args.real_only)
    texts = [str(r) for r in roots]
    return {"roots": texts}, "\n".join(texts)


def cmd_hyper(args, cfg):
    x = parse_hyperseq(args.value)
    if args.action == "classify":
        verdict = asymptotic.hyper_classify(x)
    else:
        verdict = asymptotic.rho_classify(x)
    return {"classification": str(verdict)}, str(verdict)


def cmd_support(args, cfg):
    verdict = series.validate_support(parse_support(args.descriptor))
    return {"support": str(verdict)}, str(verdict)


# parser ------------------------------------------------------------------------


def _add_globals(p: argparse.ArgumentParser, top: bool) -> None:
    default = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    p.add_argument("--trunc", type=_rational_arg, default=default(Fraction(16)),
                   help="truncation order for expansions and root lifting (default 16)")
    p.add_argument("--coeff", choices=("exact", "approx"), default=default("exact"),
                   help="coefficient domain (default exact)")
    p.add_argument("--json", action="store_true", default=default(False), help="emit JSON")


class _Parser(argparse.ArgumentParser):
    """Treats any single-dash token that is not a known flag as a positional, so "-1/3" or "-t^2" work."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-(?!-)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nafield", description="Arithmetic and calculus with infinitesimals.")
    _add_globals(parser, top=True)
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        _add_globals(sp, top=False)
        sp.set_defaults(func=func)
        return sp

    sp = command("classify", cmd_classify, "Zero/Infinitesimal/Unit/Infinite with valuation")
    sp.add_argument("series")
    sp = command("arith", cmd_arith, "field operation: + - * / pow, or unary inv neg sqrt std")
    sp.add_argument("left")
    sp.add_argument("op")
    sp.add_argument("right", nargs="?")
    sp = command("compare", cmd_compare, "order verdict LT/EQ/GT")
    sp.add_argument("left")
    sp.add_argument("right")
    sp = command("abs", cmd_abs, "absolute value of a complex series")
    sp.add_argument("value")
    sp = command("cclassify", cmd_cclassify, "classify a complex series")
    sp.add_argument("value")
    sp = command("derive", cmd_derive, "derivative at a rational point")
    sp.add_argument("expr")
    sp.add_argument("--at", type=_rational_arg, required=True)
    sp.add_argument("--order", type=int, default=None, help="derivative order (default 1)")
    sp = command("trace", cmd_trace, "difference quotient and its standard part")
    sp.add_argument("expr")
    sp.add_argument("--at", type=_rational_arg, required=True)
    sp = command("limit", cmd_limit, "limit at a rational point or at +/-inf")
    sp.add_argument("expr")
    sp.add_argument("--to", required=True)
    sp.add_argument("--side", choices=("left", "right", "both"), default="both")
    sp = command("roots", cmd_roots, "fractional-power series roots of a polynomial in y")
    sp.add_argument("poly")
    sp.add_argument("--real-only", action=argparse.BooleanOptionalAction, default=True,
                    help="only real branches (default); --no-real-only adds complex ones")
    sp = command("hyper", cmd_hyper, "hyperreal sequence fragment")
    sp.add_argument("action", choices=("classify", "rho"))
    sp.add_argument("value")
    sp = command("support", cmd_support, "classify an exponent support descriptor")
    sp.add_argument("descriptor")
    return parser


def _emit_error(kind: str, detail: str, as_json: bool) -> None:
    if as_json:
        print(json.dumps({"error": kind, "detail": detail}))
    else:
        print(f"error: {kind}: {detail}", file=sys.stderr)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = CliConfig(args.trunc, args.coeff, "json" if args.json else "text")
        payload, text = args.func(args, cfg)
    except ParseError as exc:
        _emit_error(exc.kind, f"{exc.message} (bytes {exc.span.start}..{exc.span.end})", args.json)
        return 2
    except UsageError as exc:
        _emit_error("UsageError", str(exc), args.json)
        return 2
    except (NafieldError, ValueError, ZeroDivisionError) as exc:
        kind = exc.kind if isinstance(exc, NafieldError) else type(exc).__name__
        _emit_error(kind, str(exc), args.json)
        return 1
    print(json.dumps(payload) if args.json else text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
