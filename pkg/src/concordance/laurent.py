"""Exact rational Laurent polynomials in one variable ``t``.

Everything downstream (Alexander polynomials, module divisors, Blanchfield
values) lives in Q[t, t^-1], so this module keeps coefficients as
:class:`fractions.Fraction` and never touches floats.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

MAX_FACTOR_DEGREE = 16


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c.strip())
    raise TypeError(f"not an exact rational: {c!r}")


class LaurentPoly:
    """Immutable sparse Laurent polynomial ``sum c_k t^k``.

    The zero polynomial has no terms; no stored coefficient is ever zero.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        terms = {}
        for k, c in (coeffs or {}).items():
            c = _frac(c)
            if c:
                terms[int(k)] = c
        self._terms = tuple(sorted(terms.items()))
        self._hash = None

    # -- construction -------------------------------------------------

    @classmethod
    def const(cls, c) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def monomial(cls, k: int, c=1) -> LaurentPoly:
        return cls({k: c})

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, low: int = 0) -> LaurentPoly:
        """Dense constructor: ``coeffs[i]`` is the coefficient of ``t^(low+i)``."""
        return cls({low + i: c for i, c in enumerate(coeffs)})

    # -- basic accessors ----------------------------------------------

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def terms(self):
        return self._terms

    def __getitem__(self, k: int) -> Fraction:
        for e, c in self._terms:
            if e == k:
                return c
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    @property
    def low(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no lowest exponent")
        return self._terms[0][0]

    @property
    def high(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return self._terms[-1][0]

    @property
    def span(self) -> int:
        """Euclidean norm on Q[t^+-1]: ``high - low`` (units have span 0)."""
        return self.high - self.low

    def is_unit(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._terms[0][0] == 0)

    def dense_from_zero(self) -> list[Fraction]:
        """Coefficients of t^0..t^high (requires low >= 0)."""
        if self.is_zero():
            return []
        if self.low < 0:
            raise ValueError("negative exponents present")
        return [self[k] for k in range(self.high + 1)]

    def dense(self) -> list[Fraction]:
        """Coefficients from ``t^low`` up to ``t^high``."""
        if not self._terms:
            return []
        out = [Fraction(0)] * (self.span + 1)
        lo = self.low
        for e, c in self._terms:
            out[e - lo] = c
        return out

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            return other
        return LaurentPoly.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        d = dict(self._terms)
        for e, c in other._terms:
            d[e] = d.get(e, 0) + c
        return LaurentPoly(d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            if not isinstance(other, (int, Rational, str)):
                return NotImplemented
            c = _frac(other)
            return LaurentPoly({e: a * c for e, a in self._terms})
        d: dict[int, Fraction] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, LaurentPoly):
            return exact_div(self, other)
        c = _frac(other)
        return LaurentPoly({e: a / c for e, a in self._terms})

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_unit():
                raise ValueError("only units have negative powers")
            (e, c), = self._terms
            return LaurentPoly({e * k: c ** k})
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``t^k``."""
        return LaurentPoly({e + k: c for e, c in self._terms})

    def __divmod__(self, other):
        return divmod_laurent(self, other)

    def __mod__(self, other):
        return divmod_laurent(self, other)[1]

    def __floordiv__(self, other):
        return divmod_laurent(self, other)[0]

    # -- evaluation and calculus -------------------------------------

    def __call__(self, x):
        return sum(c * x ** e for e, c in self._terms)

    def derivative(self) -> LaurentPoly:
        return LaurentPoly({e - 1: e * c for e, c in self._terms if e})

    def involute(self) -> LaurentPoly:
        return involute(self)

    def canonical(self) -> LaurentPoly:
        return canonical(self)

    # -- comparisons and display -------------------------------------

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def sort_key(self):
        return (self.span if self._terms else -1, tuple(c for c in self.dense()))

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        return format_poly(self)

    # -- serialization ------------------------------------------------

    def to_json(self) -> dict[str, str]:
        return {str(e): _frac_str(c) for e, c in reversed(self._terms)}

    @classmethod
    def from_json(cls, data: Mapping[str, object]) -> LaurentPoly:
        if not isinstance(data, Mapping):
            raise ValueError(f"Laurent polynomial JSON must be an object, got {data!r}")
        out = {}
        for k, v in data.items():
            if isinstance(v, float):
                raise ValueError("coefficients must be exact strings or integers, not floats")
            out[int(k)] = _frac(v)
        return cls(out)


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
T = LaurentPoly.monomial(1)
T_INV = LaurentPoly.monomial(-1)


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: LaurentPoly, var: str = "t") -> str:
    """Descending powers, e.g. ``7t^2 - 15t + 7`` or ``t - 1 + t^-1``."""
    if p.is_zero():
        return "0"
    parts = []
    for i, (e, c) in enumerate(reversed(p.terms())):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            body = _frac_str(a)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            if a == 1:
                body = mono
            elif a.denominator == 1:
                body = f"{a.numerator}{mono}"
            else:
                body = f"({_frac_str(a)}){mono}"
        if i == 0:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def parse_poly(text: str, var: str = "t") -> LaurentPoly:
    """Inverse of :func:`format_poly` for the printed human notation."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    if s == "0":
        return ZERO
    if s[0] not in "+-":
        s = "+" + s
    terms = {}
    i = 0
    while i < len(s):
        sign = -1 if s[i] == "-" else 1
        j = i + 1
        depth = 0
        while j < len(s) and (depth or s[j] not in "+-" or s[j - 1] == "^"):
            depth += s[j] == "("
            depth -= s[j] == ")"
            j += 1
        tok = s[i + 1:j]
        i = j
        if var in tok:
            head, _, tail = tok.partition(var)
            head = head.strip("()")
            coeff = Fraction(head) if head else Fraction(1)
            exp = 1 if not tail else int(tail.lstrip("^"))
        else:
            coeff, exp = Fraction(tok), 0
        terms[exp] = terms.get(exp, 0) + sign * coeff
    return LaurentPoly(terms)


# -- ring-level operations -------------------------------------------


def involute(p: LaurentPoly) -> LaurentPoly:
    """The involution ``p(t) -> p(t^-1)``."""
    return LaurentPoly({-e: c for e, c in p.terms()})


def canonical(p: LaurentPoly) -> LaurentPoly:
    """Representative of the unit class of ``p`` (units are ``c t^k``, c in Q*).

    Shift so the lowest exponent is 0, then scale so the constant term is
    positive.  Note this keeps the integer content: only the sign is fixed
    by the rule, the rational scale is fixed by :func:`primitive`.
    """
    if p.is_zero():
        return p
    q = p.shift(-p.low)
    return -q if q[0] < 0 else q


def primitive(p: LaurentPoly) -> LaurentPoly:
    """Canonical unit class with coprime integer coefficients."""
    if p.is_zero():
        return p
    q = canonical(p)
    from math import gcd, lcm
    den = 1
    for _, c in q.terms():
        den = lcm(den, c.denominator)
    nums = [int(c * den) for _, c in q.terms()]
    g = 0
    for a in nums:
        g = gcd(g, a)
    return q * Fraction(den, g)


def unit_equivalent(p: LaurentPoly, q: LaurentPoly, up_to_scalar: bool = False) -> bool:
    """``p = +-t^k q`` (or ``c t^k q`` for any rational c with ``up_to_scalar``)."""
    if up_to_scalar:
        return primitive(p) == primitive(q)
    return canonical(p) == canonical(q)


def divmod_laurent(a: LaurentPoly, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Euclidean division in Q[t^+-1]: ``a = q b + r`` with ``span(r) < span(b)``.

    The remainder's exponents start at ``a.low`` (or it is zero).
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return ZERO, ZERO
    la, lb = a.low, b.low
    num = a.dense()
    den = b.dense()
    db = len(den) - 1
    lead = den[-1]
    quot = [Fraction(0)] * max(len(num) - db, 1)
    # long division on the shifted polynomial parts
    for i in range(len(num) - 1, db - 1, -1):
        c = num[i]
        if not c:
            continue
        f = c / lead
        quot[i - db] = f
        for j in range(db + 1):
            num[i - db + j] -= f * den[j]
    q = LaurentPoly.from_coeffs(quot, la - lb)
    r = LaurentPoly.from_coeffs(num[:db] if db else [], la)
    return q, r


def exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    q, r = divmod_laurent(a, b)
    if r:
        raise ArithmeticError(f"{b} does not divide {a}")
    return q


def divides(b: LaurentPoly, a: LaurentPoly) -> bool:
    return divmod_laurent(a, b)[1].is_zero()


def gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Greatest common divisor in its canonical unit class (constant part made 1 if a unit)."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    a, b = p, q
    while b:
        a, b = b, divmod_laurent(a, b)[1]
    if a.is_unit():
        return ONE
    return primitive(a)


def xgcd(p: LaurentPoly, q: LaurentPoly):
    """Return ``(g, x, y)`` with ``x p + y q = g`` and ``g`` the canonical gcd."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    r0, r1 = p, q
    s0, s1 = ONE, ZERO
    t0, t1 = ZERO, ONE
    while r1:
        quo, rem = divmod_laurent(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    g = ONE if r0.is_unit() else primitive(r0)
    u = exact_div(g, r0)  # a unit
    return g, s0 * u, t0 * u


def is_symmetric(p: LaurentPoly) -> bool:
    """True iff ``involute(p) = +-t^k p``."""
    if p.is_zero():
        raise ValueError("is_symmetric: zero polynomial")
    return canonical(involute(p)) == canonical(p)


def is_squarefree(p: LaurentPoly) -> bool:
    if p.is_zero():
        raise ValueError("is_squarefree: zero polynomial")
    if p.is_unit():
        return True
    q = p.shift(-p.low)
    return gcd(q, q.derivative()).is_unit()


def inverse_mod(a: LaurentPoly, m: LaurentPoly) -> LaurentPoly:
    """Inverse of ``a`` in Q[t^+-1]/(m), reduced by :func:`reduce_mod`."""
    g, x, _ = xgcd(a, m)
    if not g.is_unit():
        raise ZeroDivisionError(f"{a} is not invertible modulo {m}")
    return reduce_mod(x * exact_div(ONE, g), m)


def reduce_mod(p: LaurentPoly, m: LaurentPoly) -> LaurentPoly:
    """Canonical residue of ``p`` in Q[t^+-1]/(m): exponents in ``[0, span m)``.

    ``m`` must not be divisible by ``t`` after shifting, which always holds
    for a nonzero Laurent polynomial (shift it first).
    """
    if m.is_zero():
        raise ZeroDivisionError("reduction modulo zero")
    m = m.shift(-m.low)
    if m.span == 0:
        return ZERO
    if p.is_zero():
        return ZERO
    if p.low >= 0:
        return _poly_rem(p, m)
    r = _poly_rem(p.shift(-p.low), m)
    # t^-1 = -m1/m0 modulo m, where m = m0 + t*m1
    m0 = m[0]
    step = LaurentPoly({e - 1: -c / m0 for e, c in m.terms() if e > 0})
    for _ in range(-p.low):
        r = _poly_rem(r * step, m)
    return r


def _poly_rem(p: LaurentPoly, m: LaurentPoly) -> LaurentPoly:
    """Ordinary polynomial remainder; both arguments have no negative exponents."""
    from .sturm import poly_divmod

    _, r = poly_divmod(p.dense_from_zero(), m.dense_from_zero())
    return LaurentPoly.from_coeffs(r)


# -- factorization ----------------------------------------------------


def factor(p: LaurentPoly) -> list[tuple[LaurentPoly, int]]:
    """Irreducible factors over Q with multiplicities.

    Factors are primitive integer polynomials in canonical unit class, sorted
    by degree then coefficient tuple.  The unit part (``c t^k``) is dropped.
    """
    if p.is_zero():
        raise ValueError("factor: zero polynomial")
    q = p.shift(-p.low)
    if q.high > MAX_FACTOR_DEGREE:
        raise ValueError(f"degree too large for factorization ({q.high} > {MAX_FACTOR_DEGREE})")
    if q.high == 0:
        return []
    import sympy

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x ** e for e, c in q.terms())
    _, facs = sympy.factor_list(expr, x, domain="QQ")
    out = []
    for f, mult in facs:
        coeffs = sympy.Poly(f, x).all_coeffs()[::-1]
        lp = LaurentPoly.from_coeffs([Fraction(int(c.p), int(c.q)) for c in coeffs])
        if lp.is_unit():
            continue
        out.append((primitive(lp), int(mult)))
    out.sort(key=lambda fm: fm[0].sort_key())
    return out


def is_irreducible(p: LaurentPoly) -> bool:
    fs = factor(p)
    return len(fs) == 1 and fs[0][1] == 1


def primary_part(q: LaurentPoly, p: LaurentPoly) -> LaurentPoly:
    """Product of the prime powers of ``q`` whose primes divide ``p``."""
    out = ONE
    for f, m in factor(q):
        if not gcd(f, p).is_unit():
            out = out * f ** m
    return out


def u_form(p: LaurentPoly) -> list[Fraction]:
    """Write a symmetric ``p`` as ``t^k g(t + t^-1)``; returns ``g`` ascending.

    Requires ``p`` to be palindromic after centering (``p(t^-1) = t^-2k p(t)``
    with the same sign), which is the case for Alexander polynomials and for
    entries of Hermitian matrices.
    """
    if p.is_zero():
        return []
    if (p.low + p.high) % 2:
        raise ValueError(f"{p} has odd span, no u-form")
    f = p.shift(-(p.low + p.high) // 2)
    if involute(f) != f:
        raise ValueError(f"{p} is not palindromic")
    out = [Fraction(0)] * (f.high + 1)
    u = T + T_INV
    while f:
        d = f.high
        c = f[d]
        out[d] = c
        f = f - (u ** d) * c
    return out
