"""The rational Alexander module ``A = Q[t^+-1]^{2g} / (V - t V^T)``.

Elements are column vectors of Laurent polynomials (meridian coordinates).
The Smith form ``U P W = diag(q_1, ..., q_n)`` identifies ``A`` with
``(+) Q[t^+-1]/(q_i)`` through ``x -> U x``; the nonunit ``q_i`` carry the
module, and residues modulo them give a canonical form and a Q-basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .laurent import (
    ONE,
    T,
    ZERO,
    LaurentPoly,
    canonical,
    factor,
    gcd,
    is_symmetric,
    parse_poly,
    primary_part,
    reduce_mod,
)
from .polymatrix import det, inverse_unimodular, matvec, smith_form
from .seifert import SeifertMatrix, alexander_poly


def _coord(c) -> LaurentPoly:
    # a coordinate is a coefficient map, a polynomial string like "t - 3", or an integer
    if isinstance(c, str):
        return parse_poly(c)
    if isinstance(c, int) and not isinstance(c, bool):
        return LaurentPoly.const(c)
    return LaurentPoly.from_json(c)


@dataclass(frozen=True)
class ModuleElement:
    """Vector of Laurent polynomials; ``reduced`` caches divisor-coordinate residues."""

    coords: tuple
    reduced: tuple | None = field(default=None, compare=False)

    def __init__(self, coords: Iterable, reduced=None):
        cs = tuple(c if isinstance(c, LaurentPoly) else LaurentPoly.const(c) for c in coords)
        object.__setattr__(self, "coords", cs)
        object.__setattr__(self, "reduced", reduced)

    @classmethod
    def basis(cls, n: int, i: int) -> ModuleElement:
        return cls([ONE if j == i else ZERO for j in range(n)])

    def __len__(self):
        return len(self.coords)

    def __add__(self, other: ModuleElement) -> ModuleElement:
        if len(other) != len(self):
            raise ValueError("dimension mismatch")
        return ModuleElement([a + b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return ModuleElement([-a for a in self.coords])

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, f) -> ModuleElement:
        f = f if isinstance(f, LaurentPoly) else LaurentPoly.const(f)
        return ModuleElement([f * a for a in self.coords])

    def is_zero_vector(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def to_json(self) -> dict:
        return {"coords": [c.to_json() for c in self.coords]}

    @classmethod
    def from_json(cls, data) -> ModuleElement:
        if not isinstance(data, dict) or not isinstance(data.get("coords"), list):
            raise ValueError('module element JSON needs a "coords" list')
        return cls([_coord(c) for c in data["coords"]])

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


class AlexanderModule:
    """Elementary-divisor decomposition of the Alexander module of ``V``."""

    def __init__(self, V: SeifertMatrix):
        self.seifert = V
        self.presentation = V.presentation()
        n = V.size
        if n:
            U, divisors, W = smith_form(self.presentation)
        else:
            U, divisors, W = [], [], []
        self.U, self.W = U, W
        self.divisors = [canonical(d) for d in divisors]
        self._U_inv = None
        # only nonunit divisors contribute
        self.active = [i for i, d in enumerate(self.divisors) if not d.is_unit()]
        self.spans = [self.divisors[i].span for i in self.active]
        self.dimension = sum(self.spans)

    @property
    def size(self) -> int:
        return self.seifert.size

    @property
    def elementary_divisors(self) -> list[LaurentPoly]:
        return [self.divisors[i] for i in self.active]

    @property
    def U_inv(self):
        if self._U_inv is None:
            self._U_inv = inverse_unimodular(self.U) if self.U else []
        return self._U_inv

    def verify_smith(self) -> bool:
        """Check ``U P W = diag`` with unimodular ``U``, ``W``, and the divisor chain."""
        from .laurent import divides
        from .polymatrix import diagonal, matmul

        if not self.size:
            return True
        n = self.size
        D = matmul(matmul(self.U, self.presentation), self.W)
        if D != diagonal(self.divisors, n, n):
            return False
        if not det(self.U).is_unit() or not det(self.W).is_unit():
            return False
        return all(divides(a, b) for a, b in zip(self.divisors, self.divisors[1:]))

    def _check(self, e: ModuleElement):
        if len(e) != self.size:
            raise ValueError(f"element has {len(e)} coordinates, module needs {self.size}")

    def residues(self, e: ModuleElement) -> tuple[LaurentPoly, ...]:
        self._check(e)
        if e.reduced is not None:
            return e.reduced
        y = matvec(self.U, list(e.coords))
        return tuple(reduce_mod(y[i], self.divisors[i]) for i in self.active)

    def vector(self, e: ModuleElement) -> list[Fraction]:
        """Coordinates in the Q-basis ``t^k e_i`` (``0 <= k < span q_i``)."""
        out = []
        for r, s in zip(self.residues(e), self.spans):
            out.extend(r[k] for k in range(s))
        return out

    def from_residues(self, res: Sequence[LaurentPoly]) -> ModuleElement:
        y = [ZERO] * self.size
        for i, r in zip(self.active, res):
            y[i] = r
        x = matvec(self.U_inv, y) if self.size else []
        return ModuleElement(x, tuple(res))

    def from_vector(self, v: Sequence) -> ModuleElement:
        res, k = [], 0
        for s in self.spans:
            res.append(LaurentPoly.from_coeffs(v[k:k + s]))
            k += s
        return self.from_residues(res)

    def reduce(self, e: ModuleElement) -> ModuleElement:
        return self.from_residues(self.residues(e))

    def equal(self, a: ModuleElement, b: ModuleElement) -> bool:
        return self.residues(a) == self.residues(b)

    def is_zero(self, e: ModuleElement) -> bool:
        return all(r.is_zero() for r in self.residues(e))

    def times(self, f: LaurentPoly, e: ModuleElement) -> ModuleElement:
        res = self.residues(e)
        d = [self.divisors[i] for i in self.active]
        return self.from_residues([reduce_mod(f * r, q) for r, q in zip(res, d)])

    def t_matrix(self) -> list[list[Fraction]]:
        """Matrix of multiplication by ``t`` on the Q-basis (columns = images)."""
        cols = []
        for j in range(self.dimension):
            v = [Fraction(0)] * self.dimension
            v[j] = Fraction(1)
            cols.append(self.vector(self.times(T, self.from_vector(v))))
        return linalg.transpose(cols)

    def __repr__(self):
        return f"AlexanderModule(divisors={[str(d) for d in self.elementary_divisors]}, dim={self.dimension})"


def build_module(V: SeifertMatrix) -> AlexanderModule:
    return AlexanderModule(V)


def reduce(A: AlexanderModule, e: ModuleElement) -> ModuleElement:
    return A.reduce(e)


def z_linear_independent(A: AlexanderModule, elems: Sequence[ModuleElement]) -> bool:
    """Integer independence; equivalent to Q-independence in the Q-vector space A."""
    if not elems:
        raise ValueError("need at least one element")
    vecs = [A.vector(e) for e in elems]
    return linalg.rank(vecs) == len(vecs) if A.dimension else False


@dataclass
class Subspace:
    """A Q-subspace of ``A`` given by a basis of Q-vectors (rows in rref)."""

    module: AlexanderModule
    basis: list

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def elements(self) -> list[ModuleElement]:
        return [self.module.from_vector(v) for v in self.basis]

    def contains(self, e: ModuleElement) -> bool:
        v = self.module.vector(e)
        return linalg.rank(self.basis + [v]) == len(self.basis)


def submodule_generated(A: AlexanderModule, gens: Sequence[ModuleElement]) -> Subspace:
    """Smallest t-invariant subspace containing ``gens`` (t is invertible, so
    t-invariance gives t^-1-invariance in finite dimension)."""
    vecs = [A.vector(g) for g in gens]
    vecs = [v for v in vecs if any(v)]
    if not vecs:
        return Subspace(A, [])
    Tm = A.t_matrix()
    basis, _ = linalg.rref(vecs)
    while True:
        images = [linalg.matvec(Tm, v) for v in basis]
        new, _ = linalg.rref(basis + images)
        if len(new) == len(basis):
            return Subspace(A, new)
        basis = new


@dataclass
class LocalizedModule:
    """``A (x) R_p``: the divisors replaced by their p-primary parts."""

    parent: AlexanderModule
    p: LaurentPoly
    local_divisors: list

    @property
    def dimension(self) -> int:
        return sum(h.span for h in self.local_divisors)

    def is_zero_module(self) -> bool:
        return all(h.is_unit() for h in self.local_divisors)

    def residues(self, e: ModuleElement) -> tuple[LaurentPoly, ...]:
        res = self.parent.residues(e)
        return tuple(reduce_mod(r, h) for r, h in zip(res, self.local_divisors))

    def is_zero(self, e: ModuleElement) -> bool:
        return all(r.is_zero() for r in self.residues(e))


def localize(A: AlexanderModule, p: LaurentPoly) -> LocalizedModule:
    if p.is_zero():
        raise ValueError("cannot localize at 0")
    hs = [canonical(primary_part(q, p)) if not p.is_unit() else ONE for q in A.elementary_divisors]
    return LocalizedModule(A, p, hs)


def anisotropy_criterion(V: SeifertMatrix, p: LaurentPoly) -> bool:
    """Sufficient condition for the localized module to be anisotropic:
    every prime factor of ``p`` is symmetric and divides Delta at most once."""
    if p.is_zero():
        raise ValueError("p must be nonzero")
    if p.is_unit():
        return True
    delta = alexander_poly(V)
    delta_factors = factor(delta) if not delta.is_unit() else []
    for f, _ in factor(p):
        if not is_symmetric(f):
            return False
        mult = sum(m for g, m in delta_factors if gcd(f, g) != ONE)
        if mult > 1:
            return False
    return True
