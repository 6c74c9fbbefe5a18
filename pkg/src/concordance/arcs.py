"""Certified integration of step functions on the unit circle.

Circle points are parametrized by ``u = 2 cos(theta)``.  A step function that
is symmetric under complex conjugation is described by its breakpoints (real
algebraic ``u`` values in ``(-2, 2)``) and one integer value per gap; its
normalized integral over the circle is ``(1/pi) * integral_0^pi``.

Arc lengths ``arccos(u/2)`` are enclosed rigorously: a high precision guess
is checked against interval evaluations of ``cos`` (mpmath's ``iv`` context),
which is monotone on ``[0, pi]``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from mpmath import iv, mp, mpf
from mpmath.libmp import to_rational

from .sturm import RealRoot

DEFAULT_PRECISION_BITS = 256
DEFAULT_TOLERANCE = Fraction(1, 10**12)

# arccos(y)/pi for the rational y where it is rational (Niven)
_EXACT_ACOS = {
    Fraction(1): Fraction(0),
    Fraction(1, 2): Fraction(1, 3),
    Fraction(0): Fraction(1, 2),
    Fraction(-1, 2): Fraction(2, 3),
    Fraction(-1): Fraction(1),
}


def precision_bits() -> int:
    raw = os.environ.get("CONCORDANCE_PRECISION_BITS", "")
    if not raw:
        return DEFAULT_PRECISION_BITS
    bits = int(raw)
    if bits < 53:
        raise ValueError("CONCORDANCE_PRECISION_BITS must be at least 53")
    return bits


@dataclass(frozen=True)
class CertifiedReal:
    """A real number known to lie in ``[lo, hi]`` (rational endpoints).

    ``exact`` is set when the value is known exactly, and then
    ``lo == hi == exact``.
    """

    lo: Fraction
    hi: Fraction
    exact: Fraction | None = None

    @classmethod
    def from_exact(cls, value) -> CertifiedReal:
        v = Fraction(value)
        return cls(v, v, v)

    @property
    def value(self) -> float:
        return float((self.lo + self.hi) / 2)

    @property
    def error(self) -> float:
        """Certified bound on ``|true value - self.value|``."""
        return float((self.hi - self.lo) / 2)

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __add__(self, other: CertifiedReal) -> CertifiedReal:
        exact = None
        if self.exact is not None and other.exact is not None:
            exact = self.exact + other.exact
        return CertifiedReal(self.lo + other.lo, self.hi + other.hi, exact)

    def __neg__(self) -> CertifiedReal:
        return CertifiedReal(-self.hi, -self.lo, None if self.exact is None else -self.exact)

    def __str__(self):
        if self.exact is not None:
            return f"{_fmt(self.exact)} (exact)"
        return f"{self.value:.15g} +/- {self.error:.2e}"

    def to_json(self) -> dict:
        return {
            "exact": None if self.exact is None else _fmt(self.exact),
            "lo": _fmt(self.lo),
            "hi": _fmt(self.hi),
            "value": self.value,
            "error": self.error,
        }

    @classmethod
    def from_json(cls, data) -> CertifiedReal:
        exact = data.get("exact")
        return cls(Fraction(data["lo"]), Fraction(data["hi"]), None if exact is None else Fraction(exact))


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _rat(x) -> Fraction:
    num, den = to_rational(x)
    return Fraction(int(num), int(den))


def acos_over_pi(y: Fraction, prec: int):
    """Enclosure of ``arccos(y)/pi`` for rational ``y`` in ``[-1, 1]``.

    Returns a Fraction when the value is rational, otherwise an ``iv`` interval.
    """
    y = Fraction(y)
    if not -1 <= y <= 1:
        raise ValueError("arccos argument outside [-1, 1]")
    if y in _EXACT_ACOS:
        return _EXACT_ACOS[y]
    iv.prec = prec
    with mp.workprec(prec + 16):
        guess = mp.acos(mpf(y.numerator) / y.denominator)
        delta = mpf(2) ** (-(prec - 8))
        while True:
            lo, hi = guess - delta, guess + delta
            # cos is decreasing on [0, pi]: cos(lo) >= y >= cos(hi) brackets arccos(y)
            clo = iv.cos(iv.mpf(lo))
            chi = iv.cos(iv.mpf(hi))
            if _rat(clo._mpi_[0]) >= y and _rat(chi._mpi_[1]) <= y:
                break
            delta *= 4
    theta = iv.mpf([lo, hi])
    return theta / iv.pi


def _interval(x):
    if isinstance(x, Fraction):
        return iv.mpf(x.numerator) / x.denominator
    return x


def _angle_bounds(root: RealRoot, prec: int):
    """``arccos(u/2)/pi`` for a root ``u``; an interval unless exact."""
    if root.exact is not None:
        return acos_over_pi(root.exact / 2, prec)
    # arccos decreasing: u in [lo, hi] -> angle in [acos(hi/2), acos(lo/2)]
    a = _interval(acos_over_pi(root.hi / 2, prec))
    b = _interval(acos_over_pi(root.lo / 2, prec))
    return iv.mpf([a.a, b.b])


def integrate_step(roots: Sequence[RealRoot], values: Sequence[int],
                   tol: Fraction = DEFAULT_TOLERANCE) -> CertifiedReal:
    """Normalized circle integral of a conjugation-symmetric step function.

    ``roots`` are the breakpoints in increasing ``u`` order inside ``(-2, 2)``
    and ``values[k]`` is the value on the k-th gap (``values[0]`` on
    ``(-2, roots[0])``, i.e. the arc containing ``theta = pi``).
    """
    if len(values) != len(roots) + 1:
        raise ValueError("need one value per gap")
    if all(v == 0 for v in values):
        return CertifiedReal.from_exact(0)
    # constant runs do not need their shared breakpoint
    keep, vals = [], [values[0]]
    for r, v in zip(roots, values[1:]):
        if v != vals[-1]:
            keep.append(r)
            vals.append(v)
    roots = keep
    if all(r.exact is not None for r in roots):
        pts = [Fraction(1)] + [_EXACT_ACOS[r.exact / 2] if r.exact / 2 in _EXACT_ACOS else None
                               for r in roots] + [Fraction(0)]
        if None not in pts:
            total = sum(v * (pts[i] - pts[i + 1]) for i, v in enumerate(vals))
            return CertifiedReal.from_exact(total)
    prec = precision_bits()
    width = Fraction(1, 2**64)
    while True:
        refined = [r.refine(width) for r in roots]
        iv.prec = prec
        pts = [iv.mpf(1)] + [_interval(_angle_bounds(r, prec)) for r in refined] + [iv.mpf(0)]
        total = iv.mpf(0)
        for i, v in enumerate(vals):
            total += v * (pts[i] - pts[i + 1])
        lo, hi = _rat(total._mpi_[0]), _rat(total._mpi_[1])
        if hi - lo <= 2 * tol:
            return CertifiedReal(lo, hi)
        width = width / 2**32
        prec *= 2
