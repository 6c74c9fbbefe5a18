"""L^2 signatures of Hermitian matrices over Q[Z^k] (abelian coefficients).

The L^2 signature is the torus integral (Haar measure of total mass 1) of
the pointwise signature of ``M(z)``.  Matrices that involve at most one
variable are handled exactly: the signature only changes at circle zeros of
the characteristic polynomial's coefficients, which are isolated in
``u = 2 cos theta``.  In more variables we fall back to certified cell
quadrature and return an enclosing interval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import linalg
from .arcs import CertifiedReal, integrate_step
from .hermitian import hermitian_signature, symmetric_signature
from .laurent import LaurentPoly, u_form
from .polymatrix import det as poly_det
from .sturm import isolate_real_roots, poly_mul, separating_points, squarefree_part, trim


class MultiLaurent:
    """Laurent polynomial in ``z_1..z_k`` with rational coefficients."""

    __slots__ = ("k", "terms")

    def __init__(self, k: int, terms: Mapping[tuple, object] | None = None):
        self.k = k
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != k:
                raise ValueError(f"exponent {e} has wrong length (expected {k})")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> MultiLaurent:
        return cls(1, {(e,): c for e, c in p.terms()})

    def inverted(self) -> MultiLaurent:
        return MultiLaurent(self.k, {tuple(-x for x in e): c for e, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, MultiLaurent) and self.k == other.k and self.terms == other.terms

    def __neg__(self):
        return MultiLaurent(self.k, {e: -c for e, c in self.terms.items()})

    def used_variables(self) -> set[int]:
        return {i for e in self.terms for i, x in enumerate(e) if x}

    def is_constant(self) -> bool:
        return not self.used_variables()

    def constant(self) -> Fraction:
        return self.terms.get((0,) * self.k, Fraction(0))

    def to_laurent(self, var: int) -> LaurentPoly:
        return LaurentPoly({e[var]: c for e, c in self.terms.items()})

    def to_json(self) -> list:
        return [{"exps": list(e), "coeff": _fmt(c)} for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data, k: int) -> MultiLaurent:
        if not isinstance(data, list):
            raise ValueError("entry must be a list of {exps, coeff} terms")
        terms = {}
        for term in data:
            if isinstance(term.get("coeff"), float):
                raise ValueError("coefficients must be exact strings or integers")
            e = tuple(term["exps"])
            terms[e] = terms.get(e, 0) + Fraction(term["coeff"])
        return cls(k, terms)


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class HermitianLaurentMatrix:
    """Square matrix of :class:`MultiLaurent` with ``M[j][i] = invert(M[i][j])``."""

    def __init__(self, entries: Sequence[Sequence[MultiLaurent]], k: int | None = None):
        rows = [list(r) for r in entries]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        if k is None:
            k = rows[0][0].k if n else 1
        self.k, self.n, self.entries = k, n, rows
        for i in range(n):
            for j in range(n):
                if rows[i][j].k != k:
                    raise ValueError("entries use different numbers of variables")
                if rows[j][i] != rows[i][j].inverted():
                    raise ValueError(f"not Hermitian: entries ({i},{j}) and ({j},{i}) disagree")

    @classmethod
    def from_laurent(cls, entries: Sequence[Sequence]) -> HermitianLaurentMatrix:
        def conv(x):
            if not isinstance(x, LaurentPoly):
                x = LaurentPoly.const(x)
            return MultiLaurent.from_laurent(x)

        return cls([[conv(x) for x in row] for row in entries], 1)

    def __neg__(self):
        return HermitianLaurentMatrix([[-x for x in r] for r in self.entries], self.k)

    def direct_sum(self, other: HermitianLaurentMatrix) -> HermitianLaurentMatrix:
        if self.k != other.k:
            raise ValueError("variable counts differ")
        zero = MultiLaurent(self.k)
        n, m = self.n, other.n
        rows = [[zero] * (n + m) for _ in range(n + m)]
        for i in range(n):
            for j in range(n):
                rows[i][j] = self.entries[i][j]
        for i in range(m):
            for j in range(m):
                rows[n + i][n + j] = other.entries[i][j]
        return HermitianLaurentMatrix(rows, self.k)

    def used_variables(self) -> set[int]:
        out = set()
        for r in self.entries:
            for x in r:
                out |= x.used_variables()
        return out

    def evaluate(self, theta: Sequence[float]) -> np.ndarray:
        """Numeric matrix at ``z_j = exp(i theta_j)``."""
        H = np.zeros((self.n, self.n), dtype=complex)
        th = np.asarray(theta, dtype=float)
        for i, row in enumerate(self.entries):
            for j, x in enumerate(row):
                for e, c in x.terms.items():
                    H[i, j] += float(c) * np.exp(1j * float(np.dot(e, th)))
        return H

    def to_json(self) -> dict:
        return {"vars": self.k, "entries": [[x.to_json() for x in r] for r in self.entries]}

    @classmethod
    def from_json(cls, data) -> HermitianLaurentMatrix:
        if not isinstance(data, dict) or "entries" not in data:
            raise ValueError('matrix JSON needs an "entries" key')
        k = int(data.get("vars", 1))
        return cls([[MultiLaurent.from_json(x, k) for x in r] for r in data["entries"]], k)


# -- one variable, exact ---------------------------------------------------


def _cheb(e: int, u: Fraction) -> tuple[Fraction, Fraction]:
    """``(cos(e theta), sin(e theta) / sin(theta))`` as rationals in ``u = 2 cos theta``."""
    sgn = 1 if e >= 0 else -1
    e = abs(e)
    c0, c1 = Fraction(2), u  # 2 cos(k theta)
    s0, s1 = Fraction(0), Fraction(1)  # sin(k theta) / sin(theta)
    if e == 0:
        return Fraction(1), Fraction(0)
    for _ in range(e - 1):
        c0, c1 = c1, u * c1 - c0
        s0, s1 = s1, u * s1 - s0
    return c1 / 2, sgn * s1


def _signature_at_u(entries: list[list[LaurentPoly]], u: Fraction) -> int:
    n = len(entries)
    A = [[Fraction(0)] * n for _ in range(n)]
    B = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for e, c in entries[i][j].terms():
                ce, se = _cheb(e, u)
                A[i][j] += c * ce
                B[i][j] += c * se
    return hermitian_signature(A, B, 1 - u * u / 4)


def _charpoly_coefficients(entries: list[list[LaurentPoly]]) -> list[LaurentPoly]:
    """Coefficients (in lambda) of ``det(M - lambda I)``, by interpolation."""
    n = len(entries)
    values = []
    for lam in range(n + 1):
        M = [[x - (lam if i == j else 0) for j, x in enumerate(row)] for i, row in enumerate(entries)]
        values.append(poly_det(M))
    vander = [[Fraction(lam) ** j for j in range(n + 1)] for lam in range(n + 1)]
    inv = _inverse(vander)
    out = []
    for j in range(n + 1):
        acc = LaurentPoly()
        for lam in range(n + 1):
            if inv[j][lam]:
                acc = acc + values[lam] * inv[j][lam]
        out.append(acc)
    return out


def _inverse(M: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(M)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    R, _ = linalg.rref(aug)
    return [row[n:] for row in R]


def _exact_one_variable(entries: list[list[LaurentPoly]]) -> CertifiedReal:
    breaks = [Fraction(1)]
    for c in _charpoly_coefficients(entries):
        if c and not c.is_constant():
            breaks = poly_mul(breaks, u_form(c))
    breaks = squarefree_part(trim(breaks))
    roots = isolate_real_roots(breaks, -2, 2)
    samples = separating_points(roots, -2, 2)
    values = [_signature_at_u(entries, s) for s in samples]
    return integrate_step(roots, values)


# -- any number of variables, certified quadrature ---------------------------


@dataclass
class QuadratureResult:
    lo: Fraction
    hi: Fraction
    cells: int
    uncertain_volume: Fraction


def _lipschitz(M: HermitianLaurentMatrix) -> list[list[float]]:
    """Per entry and variable: sum |c| |e_j|, bounding the entry's theta_j-derivative."""
    out = []
    for j in range(M.k):
        tot = np.zeros((M.n, M.n))
        for a, row in enumerate(M.entries):
            for b, x in enumerate(row):
                tot[a, b] = sum(abs(float(c)) * abs(e[j]) for e, c in x.terms.items())
        out.append(tot)
    return out


def quadrature(M: HermitianLaurentMatrix, max_depth: int = 12, max_cells: int = 200_000) -> QuadratureResult:
    """Certified enclosure of the torus integral by adaptive dyadic cells.

    A cell is certified when every eigenvalue at its centre exceeds, in
    absolute value, a Weyl bound on the matrix variation over the cell plus a
    floating-point margin; uncertain eigenvalues widen the enclosure.
    """
    k, n = M.k, M.n
    if n == 0:
        return QuadratureResult(Fraction(0), Fraction(0), 0, Fraction(0))
    lip = _lipschitz(M)
    scale = 1.0 + sum(abs(float(c)) for r in M.entries for x in r for c in x.terms.values())
    margin = 1e-9 * scale
    lo = hi = Fraction(0)
    uncertain = Fraction(0)
    cells = 0
    # each cell: (depth, index tuple); side length 2 pi / 2^depth
    stack = [(0, (0,) * k)]
    while stack:
        depth, idx = stack.pop()
        cells += 1
        side = 2 * math.pi / 2**depth
        centre = [(i + 0.5) * side for i in idx]
        H = M.evaluate(centre)
        eig = np.linalg.eigvalsh(H)
        # Frobenius norm of the variation over the cell bounds the spectral shift
        var = sum(l * (side / 2) for l in lip)
        radius = float(np.sqrt(np.sum(np.asarray(var) ** 2))) + margin
        pos = int(np.sum(eig > radius))
        neg = int(np.sum(eig < -radius))
        unk = n - pos - neg
        vol = Fraction(1, 2 ** (depth * k))
        if unk and depth < max_depth and cells + len(stack) + 2**k < max_cells:
            for off in np.ndindex(*(2,) * k):
                stack.append((depth + 1, tuple(2 * i + o for i, o in zip(idx, off))))
            continue
        lo += (pos - neg - unk) * vol
        hi += (pos - neg + unk) * vol
        if unk:
            uncertain += vol
    return QuadratureResult(lo, hi, cells, uncertain)


def l2_signature(M: HermitianLaurentMatrix, method: str = "auto", **kw) -> CertifiedReal:
    """L^2 signature; exact when at most one variable occurs, else an interval."""
    if M.n == 0:
        return CertifiedReal.from_exact(0)
    used = M.used_variables()
    if method == "auto":
        method = "exact" if len(used) <= 1 else "quadrature"
    if method == "exact":
        if len(used) > 1:
            raise ValueError("exact path needs at most one variable")
        if not used:
            A = [[x.constant() for x in r] for r in M.entries]
            return CertifiedReal.from_exact(symmetric_signature(A))
        var = used.pop()
        return _exact_one_variable([[x.to_laurent(var) for x in r] for r in M.entries])
    if method == "quadrature":
        q = quadrature(M, **kw)
        return CertifiedReal(q.lo, q.hi)
    raise ValueError(f"unknown method {method!r}")


def rank_bound_check(M: HermitianLaurentMatrix, bound: int) -> bool:
    """Is ``|sigma^(2)(M)| <= min(bound, size)``?"""
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    s = l2_signature(M)
    return max(abs(s.lo), abs(s.hi)) <= min(bound, M.n)
