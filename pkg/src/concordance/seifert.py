"""Seifert matrices and the invariants read off them.

Conventions: the Alexander polynomial is ``det(V - t V^T)`` in canonical unit
class, and the Levine-Tristram signature at ``w = e^{i theta}`` is the
signature of ``(1 - w) V + (1 - conj w) V^T``.  With these, the trefoil
``[[-1, 1], [0, -1]]`` has signature -2 at ``theta = pi``.

Points of the circle are addressed by the rational number ``u = 2 cos theta``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .arcs import CertifiedReal, integrate_step
from .hermitian import hermitian_signature
from .laurent import LaurentPoly, T, canonical, u_form
from .polymatrix import det as poly_det
from .sturm import RealRoot, evaluate, isolate_real_roots, separating_points

RhoZero = CertifiedReal


@dataclass(frozen=True)
class SeifertMatrix:
    """A ``2g x 2g`` integer Seifert matrix of a knot."""

    entries: tuple

    def __init__(self, entries: Sequence[Sequence[int]], check: bool = True):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        object.__setattr__(self, "entries", rows)
        if check:
            self._validate()

    def _validate(self):
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise ValueError("Seifert matrix must be square")
        if n % 2:
            raise ValueError("Seifert matrix must have even size")
        if n and linalg.int_det(self.skew()) != 1:
            raise ValueError("not a knot Seifert matrix: det(V - V^T) != 1")

    @classmethod
    def unknot(cls) -> SeifertMatrix:
        return cls([])

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def genus(self) -> int:
        return self.size // 2

    g = genus

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> list[list[int]]:
        return linalg.transpose(self.entries)

    def skew(self) -> list[list[int]]:
        n = self.size
        return [[self.entries[i][j] - self.entries[j][i] for j in range(n)] for i in range(n)]

    def presentation(self) -> list[list[LaurentPoly]]:
        """``V - t V^T`` as a matrix over Q[t^+-1]."""
        V = self.entries
        n = self.size
        return [[LaurentPoly.const(V[i][j]) - T * V[j][i] for j in range(n)] for i in range(n)]

    def to_json(self) -> dict:
        return {"matrix": self.rows()}

    @classmethod
    def from_json(cls, data) -> SeifertMatrix:
        if not isinstance(data, dict) or "matrix" not in data:
            raise ValueError('Seifert matrix JSON needs a "matrix" key')
        m = data["matrix"]
        if not isinstance(m, list) or any(not isinstance(r, list) for r in m):
            raise ValueError("matrix must be a list of rows")
        for row in m:
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise ValueError(f"matrix entries must be integers, got {x!r}")
        return cls(m)

    def __str__(self):
        return "\n".join(" ".join(f"{x:4d}" for x in row) for row in self.entries) or "(empty)"


def alexander_poly(V: SeifertMatrix) -> LaurentPoly:
    return canonical(poly_det(V.presentation()))


def connected_sum(V: SeifertMatrix, W: SeifertMatrix) -> SeifertMatrix:
    return SeifertMatrix(linalg.block_diag(V.entries, W.entries), check=False)


def mirror_reverse(V: SeifertMatrix) -> SeifertMatrix:
    """Seifert matrix ``-V^T`` of the concordance inverse."""
    return SeifertMatrix([[-x for x in row] for row in V.transpose()], check=False)


def seifert_pairing(V: SeifertMatrix, a: Sequence[int], b: Sequence[int]) -> int:
    n = V.size
    if len(a) != n or len(b) != n:
        raise ValueError(f"vectors must have length {n}")
    return sum(a[i] * V.entries[i][j] * b[j] for i in range(n) for j in range(n))


def delta_u_form(V: SeifertMatrix) -> list[Fraction]:
    return u_form(alexander_poly(V))


def _signature_at(V: SeifertMatrix, u: Fraction) -> int:
    if not V.size:
        return 0
    c = u / 2
    d = 1 - c * c
    Vt = V.transpose()
    A = [[(1 - c) * (a + b) for a, b in zip(r, rt)] for r, rt in zip(V.entries, Vt)]
    B = [[b - a for a, b in zip(r, rt)] for r, rt in zip(V.entries, Vt)]
    return hermitian_signature(A, B, d)


def levine_tristram(V: SeifertMatrix, u) -> int:
    """Signature at ``w = e^{i theta}``, ``u = 2 cos theta`` rational in ``[-2, 2]``.

    ``u = -2`` is ``w = -1`` (the classical signature).  Roots of the
    Alexander polynomial are refused.
    """
    u = Fraction(u)
    if not -2 <= u <= 2:
        raise ValueError("u must lie in [-2, 2]")
    if V.size and evaluate(delta_u_form(V), u) == 0:
        raise ValueError(f"at jump point: Alexander polynomial vanishes at u = {u}")
    return _signature_at(V, u)


@dataclass(frozen=True)
class SignatureFunction:
    """Step function ``theta -> sigma`` on ``[0, pi]``, extended by symmetry.

    ``jumps`` are in increasing theta order (decreasing u);
    ``values[0]`` holds near ``theta = 0`` and ``values[-1]`` near ``theta = pi``.
    """

    jumps: tuple[RealRoot, ...]
    values: tuple[int, ...]

    def value_at(self, u) -> int:
        u = Fraction(u)
        k = 0
        for r in self.jumps:
            s = _compare(u, r)
            if s == 0:
                raise ValueError("at jump point")
            k += s < 0
        return self.values[k]

    def integral(self, tol=None) -> CertifiedReal:
        roots = list(reversed(self.jumps))
        vals = list(reversed(self.values))
        return integrate_step(roots, vals) if tol is None else integrate_step(roots, vals, tol)

    def table(self) -> list[dict]:
        """Arc table: theta intervals in units of pi (floats, for display) and values."""
        import math

        edges = [0.0] + [math.acos(float(r) / 2) / math.pi for r in self.jumps] + [1.0]
        return [{"from": edges[i], "to": edges[i + 1], "value": v} for i, v in enumerate(self.values)]

    def to_json(self) -> dict:
        return {
            "jumps": [
                {
                    "u_lo": str(r.lo),
                    "u_hi": str(r.hi),
                    "exact": None if r.exact is None else str(r.exact),
                    "poly": [str(c) for c in r.poly],
                    "theta_over_pi": arc["to"],
                }
                for r, arc in zip(self.jumps, self.table())
            ],
            "values": list(self.values),
        }


def _compare(u: Fraction, r: RealRoot) -> int:
    """Sign of ``u - r`` (exact)."""
    if r.exact is not None:
        return (u > r.exact) - (u < r.exact)
    # irrational root: shrink the interval until u falls outside it
    while r.lo <= u <= r.hi:
        r = r.refine(r.width / 2)
    return 1 if u > r.hi else -1


def signature_function(V: SeifertMatrix) -> SignatureFunction:
    if not V.size:
        return SignatureFunction((), (0,))
    roots = isolate_real_roots(delta_u_form(V), -2, 2)
    samples = separating_points(roots, -2, 2)
    vals = [_signature_at(V, s) for s in samples]
    return SignatureFunction(tuple(reversed(roots)), tuple(reversed(vals)))


def rho0_knot(V: SeifertMatrix) -> RhoZero:
    """Normalized circle integral of the signature function, certified."""
    return signature_function(V).integral()
