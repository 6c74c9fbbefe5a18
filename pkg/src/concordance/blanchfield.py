"""Blanchfield pairing from a Seifert matrix, isotropy and metabolizers.

``Bl(r, s) = (1 - t) * conj(s)^T adj(M) r / det(M)`` with ``M = V - t V^T``,
valued in ``Q(t)/Q[t^+-1]`` or, after localizing, in ``Q(t)/R_p``.  The bar
on ``s`` makes the form linear in ``r`` and conjugate-linear in ``s``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd as igcd
from typing import Sequence

from . import linalg
from .alexmodule import ModuleElement, build_module, submodule_generated
from .laurent import (
    ONE,
    T,
    ZERO,
    LaurentPoly,
    exact_div,
    gcd,
    involute,
    inverse_mod,
    primary_part,
    primitive,
    reduce_mod,
)
from .polymatrix import adjugate, det, matvec
from .seifert import SeifertMatrix, seifert_pairing


@dataclass(frozen=True)
class BlanchfieldValue:
    """``numerator / denominator`` modulo Q[t^+-1] (``p is None``) or modulo R_p."""

    numerator: LaurentPoly
    denominator: LaurentPoly
    p: LaurentPoly | None = None

    @classmethod
    def make(cls, num: LaurentPoly, den: LaurentPoly, p: LaurentPoly | None = None) -> BlanchfieldValue:
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if p is not None and p.is_zero():
            raise ValueError("cannot localize at 0")
        if num.is_zero():
            return cls(ZERO, ONE, p)
        g = gcd(num, den)
        num, den = exact_div(num, g), exact_div(den, g)
        if p is not None:
            # factors of den prime to p are units of R_p
            dp = primary_part(den, p) if not p.is_unit() else ONE
            rest = exact_div(den, dp)
            num = num * inverse_mod(rest, dp) if not dp.is_unit() else ZERO
            den = dp
        if den.is_unit():
            return cls(ZERO, ONE, p)
        target = primitive(den)
        num = num * exact_div(target, den)
        num = reduce_mod(num, target)
        if num.is_zero():
            return cls(ZERO, ONE, p)
        return cls(num, target, p)

    @property
    def ambient(self) -> str:
        return "mod Q[t^+-1]" if self.p is None else f"mod R_p, p = {self.p}"

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __add__(self, other: BlanchfieldValue) -> BlanchfieldValue:
        if self.p != other.p:
            raise ValueError("ambient mismatch")
        num = self.numerator * other.denominator + other.numerator * self.denominator
        return BlanchfieldValue.make(num, self.denominator * other.denominator, self.p)

    def scale(self, f: LaurentPoly) -> BlanchfieldValue:
        return BlanchfieldValue.make(f * self.numerator, self.denominator, self.p)

    def conjugate(self) -> BlanchfieldValue:
        return BlanchfieldValue.make(involute(self.numerator), involute(self.denominator), self.p)

    def localize(self, p: LaurentPoly) -> BlanchfieldValue:
        return BlanchfieldValue.make(self.numerator, self.denominator, p)

    def __str__(self):
        if self.is_zero():
            return "0"
        return f"({self.numerator}) / ({self.denominator})"

    def to_json(self) -> dict:
        return {
            "numerator": self.numerator.to_json(),
            "denominator": self.denominator.to_json(),
            "ambient": None if self.p is None else self.p.to_json(),
            "zero": self.is_zero(),
        }

    @classmethod
    def from_json(cls, data) -> BlanchfieldValue:
        p = data.get("ambient")
        return cls.make(LaurentPoly.from_json(data["numerator"]), LaurentPoly.from_json(data["denominator"]),
                        None if p is None else LaurentPoly.from_json(p))


@lru_cache(maxsize=64)
def _adj_det(V: SeifertMatrix):
    M = V.presentation()
    return adjugate(M), det(M)


def _coords(e) -> list[LaurentPoly]:
    if isinstance(e, ModuleElement):
        return list(e.coords)
    return [c if isinstance(c, LaurentPoly) else LaurentPoly.const(c) for c in e]


def blanchfield_pair(V: SeifertMatrix, r, s, ambient: LaurentPoly | None = None) -> BlanchfieldValue:
    """Blanchfield pairing of ``r`` and ``s`` (meridian coordinates)."""
    r, s = _coords(r), _coords(s)
    n = V.size
    if len(r) != n or len(s) != n:
        raise ValueError(f"elements must have {n} coordinates")
    if not n:
        return BlanchfieldValue(ZERO, ONE, ambient)
    adj, d = _adj_det(V)
    ar = matvec(adj, r)
    num = ZERO
    for si, x in zip(s, ar):
        if si and x:
            num = num + involute(si) * x
    return BlanchfieldValue.make((ONE - T) * num, d, ambient)


def is_isotropic(V: SeifertMatrix, gens: Sequence, ambient: LaurentPoly | None = None) -> bool:
    """Bl vanishes on the submodule generated by ``gens`` (checked on a Q-basis)."""
    gens = [g if isinstance(g, ModuleElement) else ModuleElement(g) for g in gens]
    if not gens:
        return True
    A = build_module(V)
    basis = submodule_generated(A, gens).elements()
    for a in basis:
        for b in basis:
            if not blanchfield_pair(V, a, b, ambient).is_zero():
                return False
    return True


@dataclass(frozen=True)
class Metabolizer:
    vectors: tuple

    def __init__(self, vectors):
        object.__setattr__(self, "vectors", tuple(tuple(int(x) for x in v) for v in vectors))

    def to_json(self) -> dict:
        return {"vectors": [list(v) for v in self.vectors]}

    @classmethod
    def from_json(cls, data) -> Metabolizer:
        if not isinstance(data, dict) or not isinstance(data.get("vectors"), list):
            raise ValueError('metabolizer JSON needs a "vectors" list')
        return cls(data["vectors"])


def metabolizer_verify(V: SeifertMatrix, vectors: Sequence[Sequence[int]]) -> bool:
    g, n = V.genus, V.size
    vectors = [list(v) for v in vectors]
    if len(vectors) != g:
        raise ValueError(f"need {g} vectors, got {len(vectors)}")
    if any(len(v) != n for v in vectors):
        raise ValueError(f"vectors must have length {n}")
    if not g:
        return True
    for a in vectors:
        for b in vectors:
            if seifert_pairing(V, a, b):
                return False
    return linalg.maximal_minors_gcd(vectors) == 1


def _candidates(n: int, height: int) -> list[tuple[int, ...]]:
    out = []
    for v in product(range(-height, height + 1), repeat=n):
        nz = next((x for x in v if x), 0)
        if nz <= 0:
            continue  # zero vector or not sign-normalized
        g = 0
        for x in v:
            g = igcd(g, x)
        if g == 1:
            out.append(v)
    out.sort(key=lambda v: (max(abs(x) for x in v), v))
    return out


def metabolizer_search(V: SeifertMatrix, height: int) -> Metabolizer | None:
    """First metabolizer (in max-norm, then lexicographic order) with entries in
    ``[-height, height]``, or None."""
    if height < 1:
        raise ValueError("height must be positive")
    g, n = V.genus, V.size
    if not g:
        return Metabolizer([])
    cands = [v for v in _candidates(n, height) if seifert_pairing(V, v, v) == 0]
    pair = {}

    def orth(i, j):
        key = (i, j) if i < j else (j, i)
        if key not in pair:
            a, b = cands[i], cands[j]
            pair[key] = seifert_pairing(V, a, b) == 0 and seifert_pairing(V, b, a) == 0
        return pair[key]

    def extend(chosen: list[int]):
        if len(chosen) == g:
            vecs = [cands[i] for i in chosen]
            return vecs if linalg.maximal_minors_gcd(vecs) == 1 else None
        start = chosen[-1] + 1 if chosen else 0
        for j in range(start, len(cands)):
            if all(orth(i, j) for i in chosen):
                vecs = [cands[i] for i in chosen] + [cands[j]]
                if linalg.rank(vecs) < len(vecs):
                    continue
                found = extend(chosen + [j])
                if found is not None:
                    return found
        return None

    found = extend([])
    return None if found is None else Metabolizer(found)
