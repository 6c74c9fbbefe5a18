"""Exact signatures of Hermitian matrices ``A + i*s*B`` with ``s = sqrt(d)``.

``A`` is rational symmetric and ``B`` rational antisymmetric.  We embed the
Hermitian matrix as the real symmetric matrix ``[[A, -sB], [sB, A]]`` whose
signature is twice the Hermitian one, and compute its inertia by symmetric
Gaussian elimination over the ordered field Q(sqrt d).
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Sequence


def rational_sqrt(d: Fraction) -> Fraction | None:
    """``sqrt(d)`` if it is rational, else None."""
    if d < 0:
        return None
    n, m = d.numerator, d.denominator
    rn, rm = isqrt(n), isqrt(m)
    if rn * rn == n and rm * rm == m:
        return Fraction(rn, rm)
    return None


class QuadElem:
    """``a + b*sqrt(d)`` for a fixed positive non-square rational ``d``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    def __add__(self, o):
        return QuadElem(self.a + o.a, self.b + o.b, self.d)

    def __sub__(self, o):
        return QuadElem(self.a - o.a, self.b - o.b, self.d)

    def __neg__(self):
        return QuadElem(-self.a, -self.b, self.d)

    def __mul__(self, o):
        return QuadElem(self.a * o.a + self.b * o.b * self.d, self.a * o.b + self.b * o.a, self.d)

    def __truediv__(self, o):
        n = o.a * o.a - o.b * o.b * self.d
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt d)")
        conj = QuadElem(o.a / n, -o.b / n, self.d)
        return self * conj

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        lhs, rhs = self.a * self.a, self.b * self.b * self.d
        if lhs > rhs:
            return sa
        if lhs < rhs:
            return sb
        return 0

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def __repr__(self):
        return f"({self.a} + {self.b}*sqrt({self.d}))"


def inertia(M: list[list]) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric matrix over an ordered field.

    Entries must support ``+ - * /``, ``sign()`` and ``is_zero()``.  Uses
    diagonal pivots, falling back to the congruence ``e_i -> e_i + e_j`` when
    the whole diagonal vanishes.
    """
    A = [row[:] for row in M]
    pos = neg = 0
    while A:
        n = len(A)
        piv = next((i for i in range(n) if not A[i][i].is_zero()), None)
        if piv is None:
            off = next(((i, j) for i in range(n) for j in range(i + 1, n) if not A[i][j].is_zero()), None)
            if off is None:
                return pos, neg, n
            i, j = off
            # row_i += row_j, col_i += col_j; new diagonal is 2*A[i][j]
            for k in range(n):
                A[i][k] = A[i][k] + A[j][k]
            for k in range(n):
                A[k][i] = A[k][i] + A[k][j]
            piv = i
        p = A[piv][piv]
        s = p.sign()
        pos += s > 0
        neg += s < 0
        rest = [k for k in range(n) if k != piv]
        A = [[A[r][c] - A[r][piv] * A[piv][c] / p for c in rest] for r in rest]
    return pos, neg, 0


class _Rat:
    """Fraction wrapper exposing the field protocol used by :func:`inertia`."""

    __slots__ = ("v",)

    def __init__(self, v):
        self.v = Fraction(v)

    def __add__(self, o):
        return _Rat(self.v + o.v)

    def __sub__(self, o):
        return _Rat(self.v - o.v)

    def __mul__(self, o):
        return _Rat(self.v * o.v)

    def __truediv__(self, o):
        return _Rat(self.v / o.v)

    def sign(self):
        return (self.v > 0) - (self.v < 0)

    def is_zero(self):
        return not self.v


def symmetric_signature(A: Sequence[Sequence]) -> int:
    """Signature of a rational symmetric matrix."""
    pos, neg, _ = inertia([[_Rat(x) for x in row] for row in A])
    return pos - neg


def hermitian_inertia(A: Sequence[Sequence], B: Sequence[Sequence], d) -> tuple[int, int, int]:
    """Inertia of ``A + i*sqrt(d)*B`` (A symmetric, B antisymmetric, d >= 0)."""
    n = len(A)
    d = Fraction(d)
    if d < 0:
        raise ValueError("sqrt(d) must be real")
    root = rational_sqrt(d)
    if root is not None:
        make = lambda a, b: _Rat(Fraction(a) + Fraction(b) * root)
    else:
        make = lambda a, b: QuadElem(a, b, d)
    zero = Fraction(0)
    E = [[None] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            a, b = A[i][j], B[i][j]
            E[i][j] = make(a, zero)
            E[n + i][n + j] = make(a, zero)
            E[i][n + j] = make(zero, -Fraction(b))
            E[n + i][j] = make(zero, b)
    pos, neg, nul = inertia(E)
    # every eigenvalue of the Hermitian matrix appears twice in the embedding
    return pos // 2, neg // 2, nul // 2


def hermitian_signature(A, B, d) -> int:
    pos, neg, _ = hermitian_inertia(A, B, d)
    return pos - neg
