"""Shared generators and the acceptance report collector."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from nafield.series import Series

EXPONENT_DENOMINATORS = (1, 2, 3)


def random_rational(rng: random.Random, span: int = 9, max_den: int = 5) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, max_den))


def random_exponent(rng: random.Random, lo: int = -3, hi: int = 3) -> Fraction:
    d = rng.choice(EXPONENT_DENOMINATORS)
    return Fraction(rng.randint(lo * d, hi * d), d)


def random_series(rng: random.Random, max_terms: int = 6, nonzero: bool = False) -> Series:
    """Exact series with at most ``max_terms`` terms and exponents in [-3, 3]."""
    while True:
        n = rng.randint(1 if nonzero else 0, max_terms)
        s = Series([(random_exponent(rng), random_rational(rng)) for _ in range(n)])
        if not (nonzero and s.is_zero):
            return s


exponents = st.builds(
    lambda d, k: Fraction(k, d),
    st.sampled_from(EXPONENT_DENOMINATORS),
    st.integers(-9, 9),
).filter(lambda e: -3 <= e <= 3)
coefficients = st.fractions(min_value=-20, max_value=20, max_denominator=12)
exact_series = st.lists(st.tuples(exponents, coefficients), max_size=6).map(Series)
nonzero_series = exact_series.filter(lambda s: not s.is_zero)


# acceptance report ---------------------------------------------------------

RESULTS: list[tuple[int, bool, str]] = []


def report(number: int, ok: bool, summary: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {summary}"
    RESULTS.append((number, ok, line))
    print(line)
