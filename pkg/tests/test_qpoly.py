from fractions import Fraction

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from nafield import qpoly

F = Fraction
small = st.fractions(min_value=-6, max_value=6, max_denominator=4)


def test_division_and_gcd():
    a = [F(-1), F(0), F(1)]  # z^2 - 1
    b = [F(-1), F(1)]  # z - 1
    q, r = qpoly.pdivmod(a, b)
    assert q == [1, 1] and r == []
    assert qpoly.pgcd(a, [F(1), F(1)]) == [1, 1]


def test_rational_roots_examples():
    # (z - 1)^2 (z^2 + 1)
    p = qpoly.pmul(qpoly.pmul([F(-1), F(1)], [F(-1), F(1)]), [F(1), F(0), F(1)])
    assert qpoly.rational_roots(p) == [(1, 2)]
    assert qpoly.count_real_roots(p) == 1
    assert qpoly.rational_roots([F(-3), F(0), F(2)]) == []
    assert qpoly.count_real_roots([F(-3), F(0), F(2)]) == 2
    assert qpoly.rational_roots([F(-1), 0, 0, 0, 0, F(1)]) == [(1, 1)]


@given(st.lists(small, min_size=1, max_size=4), small)
def test_rational_roots_recovered(roots, lead):
    if lead == 0:
        lead = F(1)
    p = [lead]
    for r in roots:
        p = qpoly.pmul(p, [-r, F(1)])
    found = dict(qpoly.rational_roots(p))
    for r in set(roots):
        assert found[r] == roots.count(r)
    assert sum(found.values()) == len(roots)


@given(st.lists(st.integers(-9, 9), min_size=2, max_size=6))
def test_sturm_count_matches_numpy(coeffs):
    p = qpoly.trim([F(c) for c in coeffs])
    if len(p) < 2:
        return
    sf = qpoly.squarefree_part(p)
    numeric = np.roots([float(c) for c in reversed(sf)])
    real = sum(1 for z in numeric if abs(z.imag) < 1e-7)
    assert qpoly.count_real_roots(sf) == real
