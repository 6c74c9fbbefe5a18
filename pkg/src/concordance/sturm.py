"""Real root isolation for rational polynomials with Sturm sequences.

Polynomials here are ordinary (non-Laurent) and stored densely as lists of
:class:`~fractions.Fraction`, lowest degree first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Poly = list  # list[Fraction], ascending


def trim(p: Sequence) -> Poly:
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Poly) -> int:
    return len(p) - 1


def evaluate(p: Poly, x):
    acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def sign(x) -> int:
    return (x > 0) - (x < 0)


def derivative(p: Poly) -> Poly:
    return trim([i * c for i, c in enumerate(p)][1:])


def poly_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(a)
    if len(r) < len(b):
        return [], r
    q = [Fraction(0)] * (len(r) - len(b) + 1)
    lead = b[-1]
    for i in range(len(r) - len(b), -1, -1):
        f = r[i + len(b) - 1] / lead
        q[i] = f
        if f:
            for j, c in enumerate(b):
                r[i + j] -= f * c
    return trim(q), trim(r[: len(b) - 1])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if not a:
        return a
    return [c / a[-1] for c in a]


def squarefree_part(p: Poly) -> Poly:
    p = trim(p)
    if len(p) <= 1:
        return p
    g = poly_gcd(p, derivative(p))
    return poly_divmod(p, g)[0] if len(g) > 1 else p


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [trim(p), derivative(p)]
    while seq[-1]:
        r = poly_divmod(seq[-2], seq[-1])[1]
        seq.append([-c for c in r])
    return seq[:-1]


def variations(seq: list[Poly], x: Fraction) -> int:
    signs = [s for s in (sign(evaluate(p, x)) for p in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(seq: list[Poly], a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots in the half-open interval ``(a, b]``."""
    return variations(seq, a) - variations(seq, b)


def _integer_coeffs(p: Poly) -> list[int]:
    den = 1
    for c in p:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [c // g for c in ints]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def rational_roots(p: Poly) -> list[Fraction]:
    """All distinct rational roots, by the rational root theorem."""
    p = trim(p)
    roots = []
    while p and p[0] == 0:
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
        p = p[1:]
    if len(p) <= 1:
        return sorted(roots)
    c = _integer_coeffs(p)
    for num in _divisors(c[0]):
        for den in _divisors(c[-1]):
            for s in (1, -1):
                r = Fraction(s * num, den)
                if r not in roots and evaluate(p, r) == 0:
                    roots.append(r)
    return sorted(roots)


@dataclass(frozen=True)
class RealRoot:
    """A real algebraic number: the unique root of ``poly`` in ``(lo, hi)``.

    ``exact`` is set for rational roots, in which case ``lo == hi == exact``.
    """

    poly: tuple
    lo: Fraction
    hi: Fraction
    exact: Fraction | None = None

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def refine(self, width: Fraction) -> RealRoot:
        """Bisect until the isolating interval is at most ``width`` wide."""
        if self.exact is not None or self.width <= width:
            return self
        p = list(self.poly)
        lo, hi = self.lo, self.hi
        s_lo = sign(evaluate(p, lo))
        while hi - lo > width:
            mid = (lo + hi) / 2
            s = sign(evaluate(p, mid))
            if s == 0:
                return RealRoot(self.poly, mid, mid, mid)
            if s == s_lo:
                lo = mid
            else:
                hi = mid
        return RealRoot(self.poly, lo, hi)

    def __float__(self):
        return float((self.lo + self.hi) / 2)


def isolate_real_roots(p: Sequence, lo, hi) -> list[RealRoot]:
    """Distinct roots of ``p`` in the open interval ``(lo, hi)``, sorted, with
    pairwise disjoint isolating intervals whose endpoints are not roots."""
    lo, hi = Fraction(lo), Fraction(hi)
    p = squarefree_part(trim(p))
    if len(p) <= 1:
        return []
    exact = [r for r in rational_roots(p) if lo < r < hi]
    q = p
    for r in rational_roots(p):
        q = poly_divmod(q, [-r, Fraction(1)])[0]
    found: list[RealRoot] = []
    if len(q) > 1:
        seq = sturm_sequence(q)
        qt = tuple(q)
        stack = [(lo, hi)]
        while stack:
            a, b = stack.pop()
            # q has no rational roots, so a and b are never roots
            n = count_roots(seq, a, b)
            if n == 0:
                continue
            if n == 1:
                found.append(RealRoot(qt, a, b))
                continue
            m = (a + b) / 2
            stack.append((a, m))
            stack.append((m, b))
    # keep irrational isolating intervals clear of the rational roots
    cleaned = []
    for root in found:
        while any(root.lo <= r <= root.hi for r in exact):
            root = root.refine(root.width / 2)
        cleaned.append(root)
    out = cleaned + [RealRoot((-r, Fraction(1)), r, r, r) for r in exact]
    out.sort(key=lambda r: r.lo)
    return out


def separating_points(roots: list[RealRoot], lo, hi) -> list[Fraction]:
    """One rational sample strictly inside each gap ``lo < r_1 < ... < r_k < hi``."""
    lo, hi = Fraction(lo), Fraction(hi)
    roots = list(roots)
    if roots:
        # samples must be strictly interior, so pull intervals off the ends
        while roots[0].exact is None and roots[0].lo <= lo:
            roots[0] = roots[0].refine(roots[0].width / 2)
        while roots[-1].exact is None and roots[-1].hi >= hi:
            roots[-1] = roots[-1].refine(roots[-1].width / 2)
    edges = [lo]
    for r in roots:
        edges.append(r.lo)
        edges.append(r.hi)
    edges.append(hi)
    samples = []
    for i in range(0, len(edges), 2):
        a, b = edges[i], edges[i + 1]
        samples.append((a + b) / 2)
    return samples
