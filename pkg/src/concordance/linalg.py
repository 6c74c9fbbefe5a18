"""Exact rational linear algebra on lists of lists."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence


def to_fractions(M: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in M]


def rref(M: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = to_fractions(M)
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A[:r], pivots


def rank(M: Sequence[Sequence]) -> int:
    if not M:
        return 0
    return len(rref(M)[1])


def det(M: Sequence[Sequence]) -> Fraction:
    A = to_fractions(M)
    n = len(A)
    out = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            out = -out
        out *= A[c][c]
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] / A[c][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return out


def int_det(M: Sequence[Sequence[int]]) -> int:
    d = det(M)
    assert d.denominator == 1
    return int(d)


def transpose(M: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*M)] if M else []


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    Bt = transpose(B)
    return [[sum((a * b for a, b in zip(row, col)), 0) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum((a * x for a, x in zip(row, v)), 0) for row in A]


def block_diag(*blocks: Sequence[Sequence]) -> list[list]:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return out


def maximal_minors_gcd(vectors: Sequence[Sequence[int]]) -> int:
    """gcd of the k x k minors of the k x n integer matrix with rows ``vectors``."""
    k = len(vectors)
    n = len(vectors[0]) if k else 0
    g = 0
    for cols in combinations(range(n), k):
        g = gcd(g, int_det([[v[c] for c in cols] for v in vectors]))
        if g == 1:
            return 1
    return g
