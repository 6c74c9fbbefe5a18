"""Interval ledger for rho-invariants.

Every :class:`RhoInterval` is a node of a derivation tree: it records the
rule that produced it, its parameters, and its premises (other intervals or
:class:`Check` results).  Leaves are declared axioms (with a citation),
computed values (re-run on replay) and checks (exact predicates, re-run on
replay).  :func:`replay` walks a tree, recomputes every interval from its
premises and confirms that the stored interval contains the recomputed one.

Endpoints are extended reals: :class:`~fractions.Fraction` or ``+-inf``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .laurent import LaurentPoly, gcd, is_squarefree, unit_equivalent

INF = math.inf

KINDS = ("rho0_knot", "rho0_link", "rho1", "rho1_p", "rho1_p_sum", "sigma", "sigma2")


class LedgerError(ValueError):
    """A rule was applied outside its hypotheses."""


class CertificateError(LedgerError):
    def __init__(self, message: str, unmet: Sequence[str] = ()):
        super().__init__(message + ("" if not unmet else ": " + "; ".join(unmet)))
        self.unmet = list(unmet)


# -- extended reals ---------------------------------------------------------


def ext(x):
    """Parse an extended real: Fraction, int, 'p/q' string, '+inf'/'-inf' or float inf."""
    if isinstance(x, float):
        if math.isinf(x):
            return x
        raise LedgerError(f"floating endpoint {x!r} is not exact; use a 'p/q' string")
    if isinstance(x, str):
        s = x.strip().lower()
        if s in ("inf", "+inf", "infinity", "+infinity"):
            return INF
        if s in ("-inf", "-infinity"):
            return -INF
        if "." in s or "e" in s:
            raise LedgerError(f"endpoint {x!r} must be an exact rational")
        return Fraction(s)
    return Fraction(x)


def fmt_ext(x) -> str:
    if isinstance(x, float):
        return "inf" if x > 0 else "-inf"
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _add(a, b):
    if isinstance(a, float) and isinstance(b, float) and a != b:
        raise LedgerError("inf - inf is undefined")
    return a + b


# -- quantities ---------------------------------------------------------------


@dataclass(frozen=True)
class RhoQuantity:
    """What an interval bounds: e.g. ``rho1_p`` of a knot, with its ``p``."""

    kind: str
    subject: str
    p: LaurentPoly | None = None
    components: int | None = None
    linking_zero: bool | None = None
    eta_lower: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise LedgerError(f"unknown quantity kind {self.kind!r}")
        if self.kind in ("rho1_p", "rho1_p_sum") and (self.p is None or self.p.is_zero()):
            raise LedgerError(f"{self.kind} needs a nonzero p")
        if self.kind == "rho0_link" and (self.components is None or self.linking_zero is None):
            raise LedgerError("rho0_link needs the component count and the pairwise-zero linking flag")
        if self.eta_lower < 0:
            raise LedgerError("Alexander nullity lower bound must be >= 0")

    def __str__(self):
        name = {"rho0_knot": "rho0", "rho0_link": "rho0", "rho1": "rho1", "rho1_p": "rho1_p",
                "rho1_p_sum": "sum rho1_p", "sigma": "sigma", "sigma2": "sigma2"}[self.kind]
        tail = f" [p = {self.p}]" if self.p is not None else ""
        return f"{name}({self.subject}){tail}"

    def to_json(self) -> dict:
        out = {"kind": self.kind, "subject": self.subject}
        if self.p is not None:
            out["p"] = self.p.to_json()
        if self.components is not None:
            out["components"] = self.components
        if self.linking_zero is not None:
            out["linking_zero"] = self.linking_zero
        if self.eta_lower:
            out["eta_lower"] = self.eta_lower
        return out

    @classmethod
    def from_json(cls, d) -> RhoQuantity:
        p = d.get("p")
        return cls(d["kind"], d["subject"], None if p is None else LaurentPoly.from_json(p),
                   d.get("components"), d.get("linking_zero"), int(d.get("eta_lower", 0)))


def knot_rho0(subject: str) -> RhoQuantity:
    return RhoQuantity("rho0_knot", subject)


def link_rho0(subject: str, components: int, linking_zero: bool = True, eta_lower: int = 0) -> RhoQuantity:
    return RhoQuantity("rho0_link", subject, components=components, linking_zero=linking_zero,
                       eta_lower=eta_lower)


# -- checks ---------------------------------------------------------------------

CHECKS: dict[str, Callable[[dict], bool]] = {}


def check_function(name: str):
    def deco(fn):
        CHECKS[name] = fn
        return fn

    return deco


@dataclass(frozen=True, eq=False)
class Check:
    """An exact predicate evaluated by a registered checker."""

    name: str
    args: dict
    result: bool
    description: str = ""

    def to_json(self) -> dict:
        return {"check": self.name, "args": self.args, "result": self.result,
                "description": self.description}

    @classmethod
    def from_json(cls, d) -> Check:
        return cls(d["check"], d["args"], bool(d["result"]), d.get("description", ""))


def run_check(name: str, args: dict, description: str = "") -> Check:
    """Evaluate a registered check; ``name:label`` runs check ``name`` under a label
    (e.g. ``anisotropy:K`` for one knot of a sum)."""
    base = name.split(":")[0]
    if base not in CHECKS:
        raise LedgerError(f"unknown check {name!r}")
    return Check(name, args, bool(CHECKS[base](args)), description)


# -- intervals and the derivation tree -------------------------------------------


@dataclass(frozen=True, eq=False)
class RhoInterval:
    """``[lo, hi]`` bounding ``quantity``, with its derivation."""

    lo: object
    hi: object
    quantity: RhoQuantity | None = None
    rule: str = "axiom"
    params: dict = field(default_factory=dict)
    premises: tuple = ()
    citation: str = ""

    def __post_init__(self):
        lo, hi = ext(self.lo), ext(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if lo > hi:
            raise LedgerError(f"empty interval [{fmt_ext(lo)}, {fmt_ext(hi)}]")
        if lo == INF or hi == -INF:
            raise LedgerError("interval endpoints must straddle the real line")

    @property
    def bounds(self):
        return self.lo, self.hi

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, lo, hi) -> bool:
        return self.lo <= lo and hi <= self.hi

    def excludes_zero(self) -> bool:
        return not self.contains(0)

    @property
    def origin(self) -> str:
        return {"axiom": "declared", "computed": "computed"}.get(self.rule, "derived")

    def __str__(self):
        return f"[{fmt_ext(self.lo)}, {fmt_ext(self.hi)}]"

    def provenance(self) -> list[str]:
        """Flattened rule trace, leaves first."""
        out = []
        for p in self.premises:
            if isinstance(p, RhoInterval):
                out.extend(line for line in p.provenance() if line not in out)
            else:
                line = f"check {p.name}: {p.result}" + (f" ({p.description})" if p.description else "")
                if line not in out:
                    out.append(line)
        label = f"{self.rule}: {self.quantity or 'value'} in {self}"
        if self.rule == "axiom":
            label += f"  [declared: {self.citation}]"
        elif self.citation:
            label += f"  [{self.citation}]"
        out.append(label)
        return out

    def to_json(self) -> dict:
        return {
            "lo": fmt_ext(self.lo),
            "hi": fmt_ext(self.hi),
            "quantity": None if self.quantity is None else self.quantity.to_json(),
            "rule": self.rule,
            "origin": self.origin,
            "params": self.params,
            "citation": self.citation,
            "premises": [p.to_json() for p in self.premises],
        }

    @classmethod
    def from_json(cls, d) -> RhoInterval:
        prem = tuple(Check.from_json(p) if "check" in p else RhoInterval.from_json(p) for p in d.get("premises", []))
        q = d.get("quantity")
        return cls(ext(d["lo"]), ext(d["hi"]), None if q is None else RhoQuantity.from_json(q), d.get("rule", "axiom"),
                   d.get("params", {}), prem, d.get("citation", ""))


def _intervals(premises) -> list[RhoInterval]:
    return [p for p in premises if isinstance(p, RhoInterval)]


def _checks(premises) -> dict[str, Check]:
    return {p.name: p for p in premises if isinstance(p, Check)}


# -- computed values ---------------------------------------------------------------

COMPUTERS: dict[str, Callable[[dict], tuple]] = {}


def computer(name: str):
    def deco(fn):
        COMPUTERS[name] = fn
        return fn

    return deco


def axiom(q: RhoQuantity | None, value, citation: str) -> RhoInterval:
    """Declared value (number, ``(lo, hi)`` pair or certified real) with a citation."""
    if not citation or not citation.strip():
        raise LedgerError("axioms need a citation")
    lo, hi = _as_bounds(value)
    return RhoInterval(lo, hi, q, "axiom", {}, (), citation)


def _as_bounds(value):
    if hasattr(value, "lo") and hasattr(value, "hi"):
        return value.lo, value.hi
    if isinstance(value, (tuple, list)):
        lo, hi = value
        return ext(lo), ext(hi)
    v = ext(value)
    return v, v


def computed(q: RhoQuantity | None, function: str, args: dict, citation: str = "") -> RhoInterval:
    """Value produced by a registered exact/certified computation; replay re-runs it."""
    if function not in COMPUTERS:
        raise LedgerError(f"unknown computation {function!r}")
    lo, hi = COMPUTERS[function](args)
    return RhoInterval(lo, hi, q, "computed", {"function": function, "args": args}, (), citation)


# -- rules ---------------------------------------------------------------------------

RULES: dict[str, Callable[[list[RhoInterval], dict[str, Check], dict], tuple]] = {}


def rule(name: str):
    def deco(fn):
        RULES[name] = fn
        return fn

    return deco


def _apply(name: str, q, premises, params, citation="") -> RhoInterval:
    lo, hi = RULES[name](_intervals(premises), _checks(premises), params)
    return RhoInterval(lo, hi, q, name, params, tuple(premises), citation)


@rule("surgery")
def _surgery(ivs, checks, params):
    (src,) = ivs
    sign, direction, count = params["sign"], params["direction"], params.get("count", 1)
    lo, hi = src.lo, src.hi
    for _ in range(count):
        if sign == 1:
            lo, hi = (lo, _add(hi, 2)) if direction == "pre" else (-INF, hi)
        else:
            lo, hi = (_add(lo, -2), hi) if direction == "pre" else (lo, INF)
    return lo, hi


def surgery_step(target: RhoQuantity, source: RhoInterval, sign: int, direction: str,
                 count: int = 1, citation: str = "") -> RhoInterval:
    """Bound rho0 across ``count`` surgeries of the given sign on nullhomologous curves.

    ``L'`` is the result of surgery on ``L``.  ``direction="pre"`` derives
    rho0(L) from rho0(L'); ``direction="post"`` derives rho0(L') from rho0(L).
    """
    if sign not in (1, -1):
        raise LedgerError(f"invalid surgery sign {sign!r}")
    if direction not in ("pre", "post"):
        raise LedgerError(f"invalid direction {direction!r}")
    if count < 1:
        raise LedgerError("count must be positive")
    return _apply("surgery", target, [source], {"sign": sign, "direction": direction, "count": count}, citation)


@rule("bordism")
def _bordism(ivs, checks, params):
    sig2, sig = ivs
    return _add(sig2.lo, -sig.hi), _add(sig2.hi, -sig.lo)


def bordism_rule(target: RhoQuantity, sigma2: RhoInterval, sigma: RhoInterval, citation: str) -> RhoInterval:
    """rho0 of the boundary = L^2 signature minus ordinary signature of the bounding 4-manifold."""
    if not citation:
        raise LedgerError("bordism rule needs a citation for the 4-manifold")
    return _apply("bordism", target, [sigma2, sigma], {}, citation)


@rule("equal")
def _equal(ivs, checks, params):
    (src,) = ivs
    return src.lo, src.hi


def equality(target: RhoQuantity, source: RhoInterval, citation: str) -> RhoInterval:
    """Declared equality of two quantities (e.g. unchanged by a handle slide)."""
    if not citation:
        raise LedgerError("equalities need a citation")
    return _apply("equal", target, [source], {}, citation)


def _bound_with_slack(ivs, checks, params, required):
    missing = [r for r in required if r not in checks]
    failed = [r for r in required if r in checks and not checks[r].result]
    if missing or failed:
        raise CertificateError("hypotheses not met",
                               [f"missing {m}" for m in missing] + [f"failed {f}" for f in failed])
    (rho,) = ivs
    slack = params["g"] - 1 - params["eta_lower"]
    if slack < 0:
        raise LedgerError("g - 1 - eta must be nonnegative")
    n = params.get("n", 1)
    return _add(rho.lo, -slack) / n, _add(rho.hi, slack) / n


PREMAIN_CHECKS = ("anisotropy", "metabolizer", "meridians_independent")


@rule("premain")
def _premain(ivs, checks, params):
    return _bound_with_slack(ivs, checks, params, PREMAIN_CHECKS)


def premain_bound(target: RhoQuantity, n: int, g: int, eta_lower: int, rho0_L: RhoInterval,
                  premises: Sequence[Check], citation: str = "") -> RhoInterval:
    """``|n rho1_p(K) - rho0(L)| <= g - 1 - eta`` solved for rho1_p(K)."""
    if n < 2:
        raise LedgerError("finite algebraic order n must be at least 2")
    if eta_lower < 0:
        raise LedgerError("eta lower bound must be >= 0")
    params = {"n": n, "g": g, "eta_lower": eta_lower}
    return _apply("premain", target, [rho0_L, *premises], params, citation)


@rule("postmain")
def _postmain(ivs, checks, params):
    req = [f"anisotropy:{k}" for k in params["knots"]] + ["metabolizer", "meridians_independent"]
    return _bound_with_slack(ivs, checks, {**params, "n": 1}, req)


def postmain_bound(target: RhoQuantity, knots: Sequence[str], g: int, eta_lower: int, rho0_L: RhoInterval,
                   premises: Sequence[Check], citation: str = "") -> RhoInterval:
    """``|sum rho1_p(K_i) - rho0(L)| <= g - 1 - eta`` solved for the sum.

    Per-knot anisotropy checks are named ``anisotropy:<knot>``.
    """
    if not knots:
        raise LedgerError("postmain needs at least one knot")
    params = {"knots": list(knots), "g": g, "eta_lower": eta_lower}
    return _apply("postmain", target, [rho0_L, *premises], params, citation)


@rule("rho_prime")
def _rho_prime(ivs, checks, params):
    (src,) = ivs
    if "alexander" in checks and not checks["alexander"].result:
        raise CertificateError("rewrite premise failed", ["alexander polynomial mismatch"])
    return src.lo, src.hi


def rho_prime_rewrite(q: RhoQuantity, delta: LaurentPoly) -> RhoQuantity | None:
    """rho1_p(K) as rho0(K) when p is prime to Delta, rho1(K) when p = Delta, else None."""
    if q.kind != "rho1_p":
        raise LedgerError("rewrite applies to rho1_p quantities")
    if gcd(q.p, delta).is_unit():
        return RhoQuantity("rho0_knot", q.subject)
    if unit_equivalent(q.p, delta, up_to_scalar=True):
        return RhoQuantity("rho1", q.subject)
    return None


def rewrite_interval(src: RhoInterval, delta: LaurentPoly, check: Check | None = None) -> RhoInterval:
    if src.quantity is None:
        raise LedgerError("cannot rewrite an anonymous interval")
    new = rho_prime_rewrite(src.quantity, delta)
    if new is None:
        raise LedgerError(f"no rewrite: {src.quantity.p} shares a proper factor with {delta}")
    prem = [src] + ([check] if check is not None else [])
    case = "coprime" if new.kind == "rho0_knot" else "equal"
    return _apply("rho_prime", new, prem, {"delta": delta.to_json(), "case": case})


@rule("additivity")
def _additivity(ivs, checks, params):
    lo = hi = Fraction(0)
    for iv in ivs:
        lo, hi = _add(lo, iv.lo), _add(hi, iv.hi)
    return lo, hi


def additivity(qs: Sequence[RhoInterval], target: RhoQuantity | None = None) -> RhoInterval:
    """Interval of a connected sum from its summands (same kind and p)."""
    kinds = {(iv.quantity.kind, iv.quantity.p) for iv in qs if iv.quantity is not None}
    if len(kinds) > 1:
        raise LedgerError("additivity needs quantities of one kind and one p")
    if target is None and qs and qs[0].quantity is not None:
        q0 = qs[0].quantity
        target = RhoQuantity(q0.kind, " # ".join(iv.quantity.subject for iv in qs), q0.p)
    return _apply("additivity", target, list(qs), {})


@rule("infection")
def _infection(ivs, checks, params):
    if not params["eta_nonzero"]:
        (base,) = ivs[:1]
        return base.lo, base.hi
    base, inf = ivs
    return _add(base.lo, inf.lo), _add(base.hi, inf.hi)


def infection_rule(base: RhoInterval, infect_rho0: RhoInterval, eta_nonzero: bool,
                   target: RhoQuantity | None = None) -> RhoInterval:
    """rho1_p of ``J_eta(K)``: base, plus rho0(K) when eta is nonzero in the localized module."""
    prem = [base, infect_rho0] if eta_nonzero else [base]
    return _apply("infection", target, prem, {"eta_nonzero": bool(eta_nonzero)})


# -- replay ---------------------------------------------------------------------------


@dataclass
class ReplayReport:
    ok: bool = True
    failures: list = field(default_factory=list)
    nodes: int = 0
    checks: int = 0

    def fail(self, msg: str):
        self.ok = False
        self.failures.append(msg)


def replay_node(node, report: ReplayReport, seen=None):
    """Recompute ``node`` from its premises; returns recomputed bounds for intervals."""
    seen = set() if seen is None else seen
    if id(node) in seen:
        report.fail("derivation is cyclic")
        return None
    seen = seen | {id(node)}
    if isinstance(node, Check):
        report.checks += 1
        if node.name.split(":")[0] not in CHECKS:
            report.fail(f"unknown check {node.name!r}")
            return None
        try:
            res = bool(CHECKS[node.name.split(":")[0]](node.args))
        except (KeyError, TypeError, ValueError, ArithmeticError) as exc:
            report.fail(f"check {node.name} cannot be evaluated: {exc!r}")
            return None
        if res != node.result:
            report.fail(f"check {node.name} recorded {node.result}, replay gives {res}")
        if not res:
            report.fail(f"check {node.name} is false")
        return res
    report.nodes += 1
    rebuilt = []
    for p in node.premises:
        r = replay_node(p, report, seen)
        if isinstance(p, RhoInterval) and r is not None:
            rebuilt.append(RhoInterval(r[0], r[1], p.quantity, p.rule, p.params, p.premises, p.citation))
        elif isinstance(p, RhoInterval):
            return None
    if node.rule == "axiom":
        if not node.citation:
            report.fail("axiom without citation")
        return node.lo, node.hi
    try:
        if node.rule == "computed":
            lo, hi = COMPUTERS[node.params["function"]](node.params["args"])
        else:
            checks = _checks(node.premises)
            lo, hi = RULES[node.rule](rebuilt, checks, node.params)
    except (LedgerError, KeyError) as exc:
        report.fail(f"{node.rule} for {node.quantity}: {exc}")
        return None
    if not node.contains_interval(lo, hi):
        report.fail(f"{node.rule} for {node.quantity}: stored {node} does not contain recomputed "
                    f"[{fmt_ext(lo)}, {fmt_ext(hi)}]")
    return lo, hi


def replay(node) -> ReplayReport:
    report = ReplayReport()
    if isinstance(node, Certificate):
        node.replay_into(report)
    else:
        replay_node(node, report)
    return report


# -- certificates -------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Certificate:
    """A conclusion with the derivation it rests on.

    ``kind`` is ``"infinite_order"`` or ``"linear_independence"``.
    """

    kind: str
    conclusion: str
    subjects: tuple
    premises: tuple
    note: str = ""

    def replay_into(self, report: ReplayReport):
        for p in self.premises:
            replay_node(p, report)
        unmet = _certificate_gate(self.kind, self.subjects, self.premises)
        for u in unmet:
            report.fail(u)

    def to_json(self) -> dict:
        return {"certificate": self.kind, "conclusion": self.conclusion, "subjects": list(self.subjects),
                "note": self.note, "premises": [p.to_json() for p in self.premises]}

    @classmethod
    def from_json(cls, d) -> Certificate:
        prem = tuple(Check.from_json(p) if "check" in p else RhoInterval.from_json(p) for p in d["premises"])
        return cls(d["certificate"], d["conclusion"], tuple(d["subjects"]), prem, d.get("note", ""))

    def summary(self) -> str:
        lines = [f"certificate ({self.kind}): {self.conclusion}"]
        for p in self.premises:
            if isinstance(p, Check):
                lines.append(f"  check {p.name}: {p.result}  {p.description}".rstrip())
            else:
                lines.append(f"  {p.quantity} in {p}  via {p.rule} ({p.origin})")
        if self.note:
            lines.append(f"  note: {self.note}")
        return "\n".join(lines)


def _certificate_gate(kind, subjects, premises) -> list[str]:
    """The premises a conclusion of this kind needs, as a list of unmet ones."""
    checks = {}
    for p in premises:
        if isinstance(p, Check):
            checks.setdefault(p.name, []).append(p)
    ivs = {p.quantity.subject: p for p in premises if isinstance(p, RhoInterval) and p.quantity is not None}
    unmet = []

    def need(name, subject_key=None):
        found = [c for c in checks.get(name, []) if subject_key is None or c.args.get("subject") == subject_key]
        if not found:
            unmet.append(f"{name} premise missing" + (f" for {subject_key}" if subject_key else ""))
        elif not all(c.result for c in found):
            unmet.append(f"{name} premise false" + (f" for {subject_key}" if subject_key else ""))

    if kind == "infinite_order":
        (s,) = subjects
        need("anisotropy", s)
        iv = ivs.get(s)
        if iv is None:
            unmet.append(f"no rho1_p interval for {s}")
        elif iv.contains(0):
            unmet.append(f"interval {iv} for {s} contains 0")
    elif kind == "linear_independence":
        for s in subjects:
            need("squarefree", s)
            need("rho0_zero", s)
            iv = ivs.get(s)
            if iv is None or iv.quantity.kind != "rho1":
                unmet.append(f"no rho1 interval for {s}")
            elif iv.contains(0):
                unmet.append(f"rho1 interval {iv} for {s} contains 0")
        pairs = {tuple(c.args.get("subjects", ())) for c in checks.get("coprime", []) if c.result}
        for i, a in enumerate(subjects):
            for b in subjects[i + 1:]:
                if (a, b) not in pairs and (b, a) not in pairs:
                    unmet.append(f"coprimality of Alexander polynomials of {a} and {b} not established")
    else:
        unmet.append(f"unknown certificate kind {kind!r}")
    return unmet


def torsion_certificate(subject: str, rho1p: RhoInterval, anisotropy: Check) -> Certificate:
    """Infinite concordance order of ``subject``: a finite-order knot built from
    p-anisotropic pieces would have rho1_p = 0."""
    prem = (anisotropy, rho1p)
    unmet = _certificate_gate("infinite_order", (subject,), prem)
    if unmet:
        raise CertificateError(f"no infinite-order certificate for {subject}", unmet)
    return Certificate("infinite_order", f"{subject} has infinite order in the concordance group",
                       (subject,), prem)


def independence_certificate(entries: Sequence[tuple]) -> Certificate:
    """``entries``: ``(name, SeifertMatrix, rho1 interval)`` triples.

    Checks squarefree and pairwise coprime Alexander polynomials and
    ``rho0 = 0`` exactly, then concludes linear independence in the
    concordance group when every rho1 interval excludes 0.
    """
    if not entries:
        raise CertificateError("independence needs at least one knot")
    names = [e[0] for e in entries]
    if len(set(names)) != len(names):
        raise CertificateError("knot names must be distinct")
    prem = []
    for name, V, iv in entries:
        mat = [list(r) for r in V.entries]
        prem.append(run_check("squarefree", {"subject": name, "matrix": mat}, "Alexander polynomial squarefree"))
        prem.append(run_check("rho0_zero", {"subject": name, "matrix": mat}, "rho0 = 0 exactly"))
        prem.append(iv)
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            (a, V, _), (b, W, _) = entries[i], entries[j]
            prem.append(run_check("coprime", {"subjects": [a, b], "matrices": [[list(r) for r in V.entries],
                                                                                [list(r) for r in W.entries]]},
                                  f"gcd of Alexander polynomials of {a}, {b} is a unit"))
    prem = tuple(prem)
    unmet = _certificate_gate("linear_independence", tuple(names), prem)
    if unmet:
        raise CertificateError("no independence certificate", unmet)
    return Certificate("linear_independence",
                       "{" + ", ".join(names) + "} is linearly independent in the concordance group",
                       tuple(names), prem)


# -- registered checks and computations ------------------------------------------------


def _seifert(mat):
    from .seifert import SeifertMatrix

    return SeifertMatrix(mat)


@check_function("squarefree")
def _check_squarefree(args) -> bool:
    from .seifert import alexander_poly

    return is_squarefree(alexander_poly(_seifert(args["matrix"])))


@check_function("coprime")
def _check_coprime(args) -> bool:
    from .seifert import alexander_poly

    a, b = (alexander_poly(_seifert(m)) for m in args["matrices"])
    return gcd(a, b).is_unit()


@check_function("rho0_zero")
def _check_rho0_zero(args) -> bool:
    from .seifert import rho0_knot

    r = rho0_knot(_seifert(args["matrix"]))
    return r.exact is not None and r.exact == 0


@check_function("anisotropy")
def _check_anisotropy(args) -> bool:
    from .alexmodule import anisotropy_criterion

    return anisotropy_criterion(_seifert(args["matrix"]), LaurentPoly.from_json(args["p"]))


@check_function("metabolizer")
def _check_metabolizer(args) -> bool:
    from .blanchfield import metabolizer_verify

    return metabolizer_verify(_seifert(args["matrix"]), args["vectors"])


@check_function("alexander")
def _check_alexander(args) -> bool:
    from .seifert import alexander_poly

    return unit_equivalent(alexander_poly(_seifert(args["matrix"])), LaurentPoly.from_json(args["delta"]),
                           up_to_scalar=True)


@check_function("meridians_independent")
def _check_meridians(args) -> bool:
    """Meridians independent modulo the submodule generated by the link (in A localized at p)."""
    from . import linalg
    from .alexmodule import ModuleElement, build_module, localize, submodule_generated

    A = build_module(_seifert(args["matrix"]))
    p = LaurentPoly.from_json(args["p"])
    if localize(A, p).dimension != A.dimension:
        # the check below works in A itself, which equals A localized only then
        return False
    link = [ModuleElement.from_json(e) for e in args["link"]]
    mer = [ModuleElement.from_json(e) for e in args["meridians"]]
    P = submodule_generated(A, link)
    vecs = P.basis + [A.vector(m) for m in mer]
    return linalg.rank(vecs) == P.dimension + len(mer)


@check_function("isotropic")
def _check_isotropic(args) -> bool:
    from .alexmodule import ModuleElement
    from .blanchfield import is_isotropic

    gens = [ModuleElement.from_json(e) for e in args["gens"]]
    p = args.get("p")
    return is_isotropic(_seifert(args["matrix"]), gens, None if p is None else LaurentPoly.from_json(p))


@computer("rho0_knot")
def _compute_rho0(args):
    from .seifert import rho0_knot

    r = rho0_knot(_seifert(args["matrix"]))
    return r.lo, r.hi


@computer("l2_signature")
def _compute_l2(args):
    from .l2sig import HermitianLaurentMatrix, l2_signature

    r = l2_signature(HermitianLaurentMatrix.from_json(args["matrix"]))
    return r.lo, r.hi


# -- scenarios -----------------------------------------------------------------------


def run_scenario(data: dict) -> tuple[dict[str, RhoInterval], list[str]]:
    """Evaluate a scenario: axioms, computed values and rule applications by id.

    Returns the intervals by id and a list of failed expectations.
    """
    env: dict[str, object] = {}
    for item in data.get("axioms", []):
        q = RhoQuantity.from_json(item["quantity"]) if item.get("quantity") else None
        env[item["id"]] = axiom(q, _scenario_bounds(item["interval"]), item.get("citation", ""))
    for item in data.get("steps", []):
        env[item["id"]] = _scenario_step(item, env)
    failures = []
    for key, want in data.get("expect", {}).items():
        if key not in env:
            failures.append(f"expected id {key!r} was never derived")
            continue
        got = env[key]
        lo, hi = _scenario_bounds(want)
        if (got.lo, got.hi) != (lo, hi):
            failures.append(f"{key}: expected [{fmt_ext(lo)}, {fmt_ext(hi)}], got {got}")
    return {k: v for k, v in env.items() if isinstance(v, RhoInterval)}, failures


def _scenario_bounds(v):
    if isinstance(v, list):
        return ext(v[0]), ext(v[1])
    x = ext(v)
    return x, x


def _scenario_step(item: dict, env: dict):
    kind = item["rule"]
    q = RhoQuantity.from_json(item["quantity"]) if item.get("quantity") else None
    src = [env[i] for i in item.get("from", [])]
    cite = item.get("citation", "")
    if kind == "computed":
        return computed(q, item["function"], item["args"], cite)
    if kind == "check":
        return run_check(item["check"], item["args"], item.get("description", ""))
    if kind == "surgery":
        return surgery_step(q, src[0], item["sign"], item["direction"], item.get("count", 1), cite)
    if kind == "bordism":
        return bordism_rule(q, src[0], src[1], cite)
    if kind == "equal":
        return equality(q, src[0], cite)
    if kind == "premain":
        return premain_bound(q, item["n"], item["g"], item.get("eta_lower", 0), src[0], src[1:], cite)
    if kind == "postmain":
        return postmain_bound(q, item["knots"], item["g"], item.get("eta_lower", 0), src[0], src[1:], cite)
    if kind == "additivity":
        return additivity(src, q)
    if kind == "infection":
        return infection_rule(src[0], src[1] if len(src) > 1 else None, item["eta_nonzero"], q)
    if kind == "rho_prime":
        return rewrite_interval(src[0], LaurentPoly.from_json(item["delta"]))
    raise LedgerError(f"unknown scenario rule {kind!r}")


def load_json(path: str):
    with open(path) as fh:
        return json.load(fh)
