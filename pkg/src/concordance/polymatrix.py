"""Matrices over Q[t^+-1]: determinants, adjugates and Smith normal form."""

from __future__ import annotations

from typing import Sequence

from .laurent import ONE, ZERO, LaurentPoly, canonical, divmod_laurent, exact_div, primitive

Matrix = list  # list[list[LaurentPoly]]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def lift(M: Sequence[Sequence]) -> Matrix:
    return [[x if isinstance(x, LaurentPoly) else LaurentPoly.const(x) for x in row] for row in M]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    n, m = len(A), len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = ZERO
            for k in range(len(B)):
                if A[i][k] and B[k][j]:
                    acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def matvec(A: Matrix, v: Sequence[LaurentPoly]) -> list[LaurentPoly]:
    out = []
    for row in A:
        acc = ZERO
        for a, x in zip(row, v):
            if a and x:
                acc = acc + a * x
        out.append(acc)
    return out


def transpose(A: Matrix) -> Matrix:
    return [list(c) for c in zip(*A)] if A else []


def det(M: Matrix) -> LaurentPoly:
    """Fraction-free (Bareiss) determinant; all divisions are exact."""
    n = len(M)
    if n == 0:
        return ONE
    A = [row[:] for row in M]
    sign, prev = 1, ONE
    for k in range(n - 1):
        if A[k][k].is_zero():
            p = next((i for i in range(k + 1, n) if A[i][k]), None)
            if p is None:
                return ZERO
            A[k], A[p] = A[p], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = exact_div(A[i][j] * A[k][k] - A[i][k] * A[k][j], prev)
        prev = A[k][k]
    return A[n - 1][n - 1] * sign


def adjugate(M: Matrix) -> Matrix:
    """Classical adjoint: ``M adj(M) = det(M) I``."""
    n = len(M)
    if n == 1:
        return [[ONE]]
    out = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[M[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            cof = det(minor)
            out[j][i] = cof if (i + j) % 2 == 0 else -cof
    return out


def inverse_unimodular(U: Matrix) -> Matrix:
    d = det(U)
    if not d.is_unit():
        raise ValueError("matrix is not invertible over Q[t^+-1]")
    inv = d ** -1
    return [[x * inv for x in row] for row in adjugate(U)]


def smith_form(M: Matrix) -> tuple[Matrix, list[LaurentPoly], Matrix]:
    """Smith normal form over the Euclidean domain Q[t^+-1] (norm = span).

    Returns ``(U, diagonal, W)`` with ``U M W = diag(diagonal)``, ``U`` and
    ``W`` invertible, each diagonal entry dividing the next, and nonzero
    entries in primitive canonical form (units become 1).
    """
    n = len(M)
    m = len(M[0]) if n else 0
    A = [row[:] for row in M]
    U = identity(n)
    W = identity(m)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for X in (A, W):
            for row in X:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        # row_dst += f * row_src
        A[dst] = [a + f * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for X in (A, W):
            for row in X:
                row[dst] = row[dst] + f * row[src]

    diag = []
    for k in range(min(n, m)):
        while True:
            best = None
            for i in range(k, n):
                for j in range(k, m):
                    if A[i][j] and (best is None or A[i][j].span < A[best[0]][best[1]].span):
                        best = (i, j)
            if best is None:
                break
            swap_rows(k, best[0])
            swap_cols(k, best[1])
            piv = A[k][k]
            clean = True
            for i in range(k + 1, n):
                if A[i][k]:
                    q, r = divmod_laurent(A[i][k], piv)
                    add_row(i, k, -q)
                    clean &= r.is_zero()
            for j in range(k + 1, m):
                if A[k][j]:
                    q, r = divmod_laurent(A[k][j], piv)
                    add_col(j, k, -q)
                    clean &= r.is_zero()
            if not clean:
                continue
            bad = next(((i, j) for i in range(k + 1, n) for j in range(k + 1, m)
                        if A[i][j] and divmod_laurent(A[i][j], piv)[1]), None)
            if bad is None:
                break
            add_row(k, bad[0], ONE)
        if best is None:
            diag.extend([ZERO] * (min(n, m) - k))
            break
        piv = A[k][k]
        target = ONE if piv.is_unit() else primitive(piv)
        unit = exact_div(target, piv)
        A[k] = [a * unit for a in A[k]]
        U[k] = [a * unit for a in U[k]]
        diag.append(target)
    return U, diag, W


def diagonal(entries: Sequence[LaurentPoly], n: int, m: int) -> Matrix:
    out = [[ZERO] * m for _ in range(n)]
    for i, d in enumerate(entries):
        out[i][i] = d
    return out
