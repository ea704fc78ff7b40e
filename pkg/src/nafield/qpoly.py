"""Dense univariate polynomials over Q (ascending coefficient lists).

Only what the root-lifting and support-classification code needs: Euclid,
Sturm counting and complete detection of rational roots.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Poly = list  # list[Fraction], index = power


def trim(p: Sequence) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    return len(trim(p)) - 1


def padd(a: Sequence, b: Sequence) -> Poly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def pneg(a: Sequence) -> Poly:
    return [-c for c in a]


def psub(a: Sequence, b: Sequence) -> Poly:
    return padd(a, pneg(b))


def pmul(a: Sequence, b: Sequence) -> Poly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def pderiv(p: Sequence) -> Poly:
    return trim([i * p[i] for i in range(1, len(p))])


def peval(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def pdivmod(a: Sequence, b: Sequence) -> tuple[Poly, Poly]:
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = [Fraction(x) for x in a]
    lb = Fraction(b[-1])
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        f = r[-1] / lb
        q[shift] = f
        for i, c in enumerate(b):
            r[shift + i] -= f * c
        r.pop()
        r = trim(r)
    return trim(q), r


def monic(p: Sequence) -> Poly:
    p = trim(p)
    return [Fraction(c) / p[-1] for c in p] if p else []


def pgcd(a: Sequence, b: Sequence) -> Poly:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, pdivmod(a, b)[1]
    return monic(a)


def squarefree_part(p: Sequence) -> Poly:
    p = trim(p)
    g = pgcd(p, pderiv(p))
    return monic(pdivmod(p, g)[0]) if len(g) > 1 else monic(p)


def integer_scaled(p: Sequence) -> list[int]:
    """Clear denominators; the result is a positive multiple of ``p``."""
    p = [Fraction(c) for c in trim(p)]
    m = lcm(*(c.denominator for c in p)) if p else 1
    return [int(c * m) for c in p]


def sturm_sequence(p: Sequence) -> list[Poly]:
    seq = [trim(p), pderiv(p)]
    while seq[-1] and degree(seq[-1]) > 0:
        r = pdivmod(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append(pneg(r))
    return [s for s in seq if s]


def _sign_changes(seq: list[Poly], x: Fraction) -> int:
    changes, last = 0, 0
    for s in seq:
        v = peval(s, x)
        if v != 0:
            sg = 1 if v > 0 else -1
            if last and sg != last:
                changes += 1
            last = sg
    return changes


def count_real_roots(p: Sequence, lo: Fraction | None = None, hi: Fraction | None = None) -> int:
    """Distinct real roots of ``p`` in ``(lo, hi]`` (whole line by default)."""
    p = trim(p)
    if len(p) <= 1:
        return 0
    seq = sturm_sequence(p)
    if lo is None or hi is None:
        b = root_bound(p) + 1
        lo = -b if lo is None else lo
        hi = b if hi is None else hi
    return _sign_changes(seq, lo) - _sign_changes(seq, hi)


def root_bound(p: Sequence) -> Fraction:
    """Cauchy bound: every complex root has modulus <= 1 + max|a_i / a_n|."""
    p = trim(p)
    lead = Fraction(p[-1])
    return 1 + max((abs(Fraction(c) / lead) for c in p[:-1]), default=Fraction(0))


def isolate_real_roots(p: Sequence, width: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals ``(lo, hi]`` of length <= width, one per distinct real root."""
    s = squarefree_part(p)
    if len(s) <= 1:
        return []
    seq = sturm_sequence(s)
    b = root_bound(s) + 1
    out = []
    stack = [(-b, b, _sign_changes(seq, -b), _sign_changes(seq, b))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1 and hi - lo <= width:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        vmid = _sign_changes(seq, mid)
        stack.append((mid, hi, vmid, vhi))
        stack.append((lo, mid, vlo, vmid))
    out.sort()
    return out


def multiplicity(p: Sequence, r: Fraction) -> int:
    m, q = 0, trim(p)
    lin = [-r, Fraction(1)]
    while q:
        quo, rem = pdivmod(q, lin)
        if rem:
            break
        m += 1
        q = quo
    return m


def rational_roots(p: Sequence) -> list[tuple[Fraction, int]]:
    """All rational roots of ``p`` with multiplicities, ascending."""
    p = trim(p)
    if len(p) <= 1:
        return []
    out = []
    low = 0
    while low < len(p) and p[low] == 0:
        low += 1
    if low:
        out.append((Fraction(0), low))
        p = p[low:]
    if len(p) <= 1:
        return out
    ip = integer_scaled(p)
    lead = abs(ip[-1])
    # distinct rationals with denominators <= lead are >= 1/lead^2 apart
    width = Fraction(1, 2 * lead * lead)
    for lo, hi in isolate_real_roots(p, width):
        cand = ((lo + hi) / 2).limit_denominator(lead)
        if lo <= cand <= hi and peval(p, cand) == 0:
            out.append((cand, multiplicity(p, cand)))
    out.sort()
    return out


def deflate(p: Sequence, roots: list[tuple[Fraction, int]]) -> Poly:
    q = trim(p)
    for r, m in roots:
        for _ in range(m):
            q = pdivmod(q, [-r, Fraction(1)])[0]
    return q
