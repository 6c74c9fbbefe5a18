"""The twist knots ``T_n``, ``n(x) = -x^2 - x - 1``, and the full pipeline
showing ``rho1(T_n) < 0`` and linear independence of ``{T_n(x)}``.

Fixture conventions (meridian coordinates of ``T_n # T_n``):

* ``l_i = V2 v_i`` is the lift of the metabolizer curve ``v_i``;
* ``m_i`` is the meridian dual to ``v_i`` for a symplectic completion
  ``{v_1, v_2, d_1, d_2}`` of the metabolizer (dual basis: columns of ``P^-T``).

The vectors printed for ``l_i`` in per-summand cyclic coordinates are kept
as a record only; they do not match the lifts in any basis we could pin down
(see :func:`printed_link_vectors`), so the fixture uses the geometric recipe.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import product

from . import linalg
from .alexmodule import ModuleElement, build_module, submodule_generated, z_linear_independent
from .blanchfield import is_isotropic, metabolizer_verify
from .laurent import LaurentPoly, T, unit_equivalent
from .ledger import (
    Certificate,
    CertificateError,
    RhoInterval,
    RhoQuantity,
    axiom,
    independence_certificate,
    link_rho0,
    premain_bound,
    rewrite_interval,
    run_check,
    run_scenario,
    surgery_step,
    torsion_certificate,
)
from .seifert import SeifertMatrix, alexander_poly, connected_sum

GENUS = 2  # genus of the Seifert surface of T_n # T_n
ORDER = 2  # algebraic concordance order of T_n


class TwistError(RuntimeError):
    """A verification step of the pipeline failed; ``step`` names it."""

    def __init__(self, step: str, detail: str = ""):
        super().__init__(f"{step} failed" + (f": {detail}" if detail else ""))
        self.step = step


def twist_n(x: int) -> int:
    return -x * x - x - 1


def knot_name(x: int) -> str:
    return f"T_{twist_n(x)}"


def printed_link_vectors(x: int) -> tuple[tuple[LaurentPoly, LaurentPoly], ...]:
    """``l_1, l_2`` as printed in per-summand cyclic coordinates (record only)."""
    n = twist_n(x)
    l1 = (T * (n + x * n + x) + 1, T * (n + 1) - 1)
    l2 = (T * (n + 1) - 1, T * (-x * n - n - 1) + x + 1)
    return l1, l2


def _symplectic_completion(V2: SeifertMatrix, v1, v2, height: int = 2):
    """Integer ``d_1, d_2`` making ``{v_1, v_2, d_1, d_2}`` a symplectic basis for ``J = V - V^T``."""
    J = V2.skew()

    def form(a, b):
        return sum(a[i] * J[i][j] * b[j] for i in range(4) for j in range(4))

    cands = sorted(product(range(-height, height + 1), repeat=4), key=lambda v: (max(map(abs, v)), v))
    first = [d for d in cands if form(v1, d) == 1 and form(v2, d) == 0]
    second = [d for d in cands if form(v1, d) == 0 and form(v2, d) == 1]
    for d1 in first:
        for d2 in second:
            if form(d1, d2) == 0 and abs(linalg.int_det(linalg.transpose([v1, v2, d1, d2]))) == 1:
                return list(d1), list(d2)
    raise TwistError("symplectic completion", f"none with entries in [-{height}, {height}]")


@dataclass
class TwistFamilyEntry:
    x: int
    n: int
    V: SeifertMatrix
    V2: SeifertMatrix
    v1: list
    v2: list
    d1: list
    d2: list
    m1: ModuleElement
    m2: ModuleElement
    l1: ModuleElement
    l2: ModuleElement
    delta: LaurentPoly
    exploratory: bool = False
    printed: tuple = field(default=(), repr=False)

    @property
    def name(self) -> str:
        return knot_name(self.x)

    @property
    def metabolizer(self) -> list:
        return [self.v1, self.v2]

    def to_json(self) -> dict:
        return {
            "x": self.x,
            "n": self.n,
            "V": self.V.to_json(),
            "V2": self.V2.to_json(),
            "delta": self.delta.to_json(),
            "metabolizer": [self.v1, self.v2],
            "completion": [self.d1, self.d2],
            "m1": self.m1.to_json(),
            "m2": self.m2.to_json(),
            "l1": self.l1.to_json(),
            "l2": self.l2.to_json(),
            "printed_l1_l2_cyclic": [[p.to_json() for p in li] for li in self.printed],
            "exploratory": self.exploratory,
        }


def family_entry(x: int, exploratory: bool = False) -> TwistFamilyEntry:
    if x < 1 or (x == 1 and not exploratory):
        raise ValueError("x must be at least 2 (x = 1 only with exploratory=True)")
    n = twist_n(x)
    V = SeifertMatrix([[n, 1], [0, 1]])
    V2 = connected_sum(V, V)
    delta = alexander_poly(V)
    expected = T * T * n + T * (1 - 2 * n) + n
    if not unit_equivalent(delta, expected):
        raise TwistError("Alexander polynomial", f"{delta} is not a unit multiple of {expected}")
    v1, v2 = [1, x, 0, 1], [0, 1, 1, -x - 1]
    d1, d2 = _symplectic_completion(V2, v1, v2)
    P = linalg.transpose([v1, v2, d1, d2])
    dual = linalg.transpose(_int_inverse(P))  # P^-T
    m = [ModuleElement([dual[r][c] for r in range(4)]) for c in range(2)]
    l1 = ModuleElement(linalg.matvec(V2.entries, v1))
    l2 = ModuleElement(linalg.matvec(V2.entries, v2))
    return TwistFamilyEntry(x, n, V, V2, v1, v2, d1, d2, m[0], m[1], l1, l2, delta, x == 1,
                            printed_link_vectors(x))


def _int_inverse(P):
    n = len(P)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(P)]
    R, _ = linalg.rref(aug)
    inv = [row[n:] for row in R]
    if any(x.denominator != 1 for row in inv for x in row):
        raise TwistError("symplectic completion", "basis is not unimodular")
    return [[int(x) for x in row] for row in inv]


def fixtures(xs=range(2, 7)) -> dict:
    return {"family": "twist knots T_n, n = -x^2 - x - 1", "entries": [family_entry(x).to_json() for x in xs]}


# -- surgery chain ----------------------------------------------------------------


def surgery_chain_data() -> dict:
    return json.loads(resources.files("concordance.data").joinpath("surgery_chain.json").read_text())


def chain_intervals(xs, exploratory: bool = False, data: dict | None = None) -> tuple[dict, list]:
    """rho0(L_x) for the requested x by replaying the scenario and extending it."""
    data = surgery_chain_data() if data is None else data
    env, failures = run_scenario(data)
    step = data["family_step"]
    top = max([x for x in xs if x >= 2], default=2)
    for x in range(3, top + 1):
        key = f"rho0_L{x}"
        if key not in env:
            env[key] = surgery_step(link_rho0(f"L_{x}", 2), env[f"rho0_L{x - 1}"], step["sign"], step["direction"],
                                    step["count"], step["citation"].replace("{x}", str(x)).replace("{x-1}", str(x - 1)))
    if exploratory:
        ex = data["exploratory"]
        env["rho0_L1"] = axiom(link_rho0("L_1", 2), _bounds(ex["interval"]), ex["citation"])
    return env, failures


def _bounds(v):
    return (v[0], v[1]) if isinstance(v, list) else v


# -- pipeline ----------------------------------------------------------------------


@dataclass
class TwistReport:
    entries: list = field(default_factory=list)
    torsion: list = field(default_factory=list)
    independence: Certificate | None = None
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "entries": self.entries,
            "torsion_certificates": [c.to_json() for c in self.torsion],
            "independence_certificate": None if self.independence is None else self.independence.to_json(),
            "failures": self.failures,
        }

    def text(self) -> str:
        lines = []
        for e in self.entries:
            lines.append(f"x = {e['x']}: {e['knot']}, Delta = {e['delta']}")
            for k in ("metabolizer", "isotropic", "independent", "meridians_independent", "anisotropic"):
                lines.append(f"  {k}: {e[k]}")
            lines.append(f"  rho0({e['knot']}) = {e['rho0']}")
            lines.append(f"  sigma2([t + t^-1]) = {e['l2_signature']}")
            lines.append(f"  rho0(L_{e['x']}) in {e['rho0_L']}")
            lines.append(f"  rho1({e['knot']}) in {e['rho1']}")
            lines.append(f"  infinite order certificate: {e['infinite_order']}")
        if self.independence is not None:
            lines.append(self.independence.summary())
        for f in self.failures:
            lines.append(f"note: {f}")
        return "\n".join(lines) if lines else "empty report"


def twist_report(x_values, exploratory: bool = False) -> TwistReport:
    """Run every verification for the requested ``x`` and build the certificates."""
    report = TwistReport()
    xs = list(x_values)
    if not xs:
        return report
    if any(x < 2 for x in xs) and not exploratory:
        raise ValueError("x values below 2 need exploratory=True")
    env, failures = chain_intervals(xs, exploratory)
    if failures:
        raise TwistError("surgery chain scenario", "; ".join(failures))
    l2 = env["sigma2_Wprime"]
    indep_entries = []
    for x in xs:
        E = family_entry(x, exploratory=exploratory)
        name = E.name
        V2m, Vm = E.V2.rows(), E.V.rows()
        met = run_check("metabolizer", {"matrix": V2m, "vectors": E.metabolizer}, "Seifert form vanishes on v1, v2")
        if not met.result:
            raise TwistError("metabolizer", name)
        links = [E.l1.to_json(), E.l2.to_json()]
        iso = is_isotropic(E.V2, [E.l1, E.l2])
        if not iso:
            raise TwistError("Blanchfield isotropy", name)
        A = build_module(E.V2)
        indep = z_linear_independent(A, [E.m1, E.m2, E.l1, E.l2])
        if not indep:
            raise TwistError("independence of m1, m2, l1, l2", name)
        mer = run_check("meridians_independent",
                        {"matrix": V2m, "p": E.delta.to_json(), "link": links,
                         "meridians": [E.m1.to_json(), E.m2.to_json()]},
                        "meridians independent modulo the submodule generated by the link")
        if not mer.result:
            raise TwistError("meridians independent modulo P", name)
        aniso = run_check("anisotropy", {"subject": name, "matrix": Vm, "p": E.delta.to_json()},
                          "prime factors of p symmetric, multiplicity <= 1 in Delta")
        if not aniso.result:
            raise TwistError("anisotropy criterion", name)
        rho0 = run_check("rho0_zero", {"subject": name, "matrix": Vm}, "rho0 = 0 exactly")
        if not rho0.result:
            raise TwistError("rho0 = 0", name)
        rhoL = env.get(f"rho0_L{x}")
        q = RhoQuantity("rho1_p", name, E.delta)
        rho1p = premain_bound(q, ORDER, GENUS, 0, rhoL, [aniso, met, mer],
                              f"{name} # {name} with metabolizer link L_{x}")
        alex = run_check("alexander", {"matrix": Vm, "delta": E.delta.to_json()}, "p is the Alexander polynomial")
        rho1 = rewrite_interval(rho1p, E.delta, alex)
        entry = {
            "x": x,
            "knot": name,
            "n": E.n,
            "delta": str(E.delta),
            "metabolizer": met.result,
            "isotropic": iso,
            "independent": indep,
            "meridians_independent": mer.result,
            "anisotropic": aniso.result,
            "rho0": "0 (exact)",
            "l2_signature": str(l2),
            "rho0_L": str(rhoL),
            "rho1_p": str(rho1p),
            "rho1": str(rho1),
        }
        try:
            cert = torsion_certificate(name, rho1p, aniso)
            report.torsion.append(cert)
            entry["infinite_order"] = True
            indep_entries.append((name, E.V, rho1))
        except CertificateError as exc:
            entry["infinite_order"] = False
            report.failures.append(f"{name}: {exc}")
        report.entries.append(entry)
    if indep_entries:
        try:
            report.independence = independence_certificate(indep_entries)
        except CertificateError as exc:
            report.failures.append(str(exc))
    return report
