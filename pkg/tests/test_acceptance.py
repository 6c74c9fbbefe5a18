"""Acceptance checks, one printed PASS/FAIL line per criterion.

Run under pytest (lines appear in the output) or directly with
``python tests/test_acceptance.py``.  Timings are wall-clock and include
the first, cold call.
"""

from __future__ import annotations

import json
import math
import os
import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest
import sympy

sys.path.insert(0, str(Path(__file__).parent))

from concordance.alexmodule import ModuleElement, build_module, z_linear_independent  # noqa: E402
from concordance.blanchfield import blanchfield_pair, is_isotropic, metabolizer_search, metabolizer_verify  # noqa: E402
from concordance.laurent import LaurentPoly, T, T_INV, involute, unit_equivalent  # noqa: E402
from concordance.ledger import INF, CertificateError, RhoQuantity, axiom, independence_certificate, replay  # noqa: E402
from concordance.ledger import torsion_certificate, run_check  # noqa: E402
from concordance.l2sig import HermitianLaurentMatrix, l2_signature  # noqa: E402
from concordance.seifert import SeifertMatrix, alexander_poly, connected_sum, mirror_reverse, rho0_knot  # noqa: E402
from concordance.twistlab import family_entry, twist_report, surgery_chain_data  # noqa: E402
from concordance.ledger import run_scenario  # noqa: E402

from helpers import congruent, random_seifert, random_unimodular  # noqa: E402

TREFOIL = SeifertMatrix([[-1, 1], [0, -1]])
U = T + T_INV
t_sym = sympy.Symbol("t")


def timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


# -- criteria ---------------------------------------------------------------------


def criterion_1():
    worst, ok = 0.0, True
    for n in (-7, -13, -21):
        V = SeifertMatrix([[n, 1], [0, 1]])
        d, dt = timed(lambda: alexander_poly(V))
        worst = max(worst, dt)
        ok &= unit_equivalent(d, T * T * n + T * (1 - 2 * n) + n)
    return ok and worst < 1e-3, f"exact match for n = -7, -13, -21; slowest {worst * 1e3:.3f} ms (< 1 ms)"


def criterion_2():
    worst, ok = 0.0, True
    for x in range(2, 7):
        E = family_entry(x)
        vecs = [[1, x, 0, 1], [0, 1, 1, -x - 1]]
        res, dt = timed(lambda: metabolizer_verify(E.V2, vecs))
        worst = max(worst, dt)
        ok &= res is True
    return ok and worst < 1e-3, f"true for x = 2..6; slowest {worst * 1e3:.3f} ms (< 1 ms)"


def _to_sympy(p: LaurentPoly):
    return sum((sympy.Rational(c.numerator, c.denominator) * t_sym**e for e, c in p.terms()), sympy.Integer(0))


def brute_force_pair_zero(V: SeifertMatrix, r: ModuleElement, s: ModuleElement) -> bool:
    """Reduce (1 - t) conj(s)^T adj(V - t V^T) r modulo det, with sympy."""
    M = sympy.Matrix(V.rows()) - t_sym * sympy.Matrix(V.rows()).T
    adj, d = M.adjugate(), sympy.expand(M.det())
    rv = sympy.Matrix([_to_sympy(c) for c in r.coords])
    sv = sympy.Matrix([_to_sympy(involute(c)) for c in s.coords])
    num = sympy.expand((1 - t_sym) * (sv.T * adj * rv)[0] * t_sym**10)
    return sympy.rem(sympy.Poly(num, t_sym), sympy.Poly(d, t_sym)).is_zero


def criterion_3():
    ok = True
    for x in (2, 3, 4):
        E = family_entry(x)
        ok &= is_isotropic(E.V2, [E.l1, E.l2])
        ok &= all(brute_force_pair_zero(E.V2, a, b) for a in (E.l1, E.l2) for b in (E.l1, E.l2))
        ok &= all(blanchfield_pair(E.V2, a, b).is_zero() for a in (E.l1, E.l2) for b in (E.l1, E.l2))
    return ok, "isotropic for x = 2, 3, 4; sympy adjugate oracle agrees on all four pairs"


def criterion_4():
    ok = True
    for x in (2, 3, 4):
        E = family_entry(x)
        A = build_module(E.V2)
        ok &= A.dimension == 4 and z_linear_independent(A, [E.m1, E.m2, E.l1, E.l2])
    return ok, "rank 4 in the 4-dimensional module for x = 2, 3, 4"


def criterion_5():
    a = l2_signature(HermitianLaurentMatrix.from_laurent([[U]]))
    b = l2_signature(HermitianLaurentMatrix.from_laurent([[U + 3]]))
    return a.exact == 0 and b.exact == 1, f"sigma2([t + t^-1]) = {a}, sigma2([t + t^-1 + 3]) = {b}"


def criterion_6():
    r = rho0_knot(TREFOIL)
    # signature -2 on (pi/3, pi], jump where 2 cos(theta) = 1
    oracle = -2 * (math.pi - math.acos(0.5)) / math.pi
    ok = abs(r.value - oracle) < 1e-9 and r.exact == Fraction(-4, 3)
    sums = [rho0_knot(family_entry(x).V2).exact for x in (2, 3, 4)]
    ok &= sums == [0, 0, 0]
    return ok, f"trefoil {r}, |error| = {abs(r.value - oracle):.1e}; T_n # T_n for x = 2, 3, 4: {', '.join(str(s) for s in sums)} (exact)"


def criterion_7():
    env, failures = run_scenario(surgery_chain_data())
    ok = not failures and env["rho0_Lprime"].bounds == (-2, -2)
    cmd = [sys.executable, "-m", "concordance.cli", "twist", "report", "--json", "--x", "2", "3", "4"]
    proc, dt = timed(lambda: subprocess.run(cmd, capture_output=True, text=True, env=os.environ.copy()))
    ok &= proc.returncode == 0
    data = json.loads(proc.stdout) if proc.returncode == 0 else {}
    ok &= [e.get("rho1") for e in data.get("entries", [])] == ["[-inf, -1/2]"] * 3
    cert = data.get("independence_certificate") or {}
    ok &= cert.get("subjects") == ["T_-7", "T_-13", "T_-21"] and data.get("replay_ok") is True
    premain = [p for p in cert.get("premises", []) if p.get("rule") == "rho_prime"]
    ok &= bool(premain) and all(
        p["premises"][0]["rule"] == "premain" and p["premises"][0]["params"] == {"n": 2, "g": 2, "eta_lower": 0}
        for p in premain)
    ok &= dt < 10
    return ok, f"rho0(L') = -2, rho1 in [-inf, -1/2] x 3, independence certificate replayed; {dt:.2f} s (< 10 s)"


def _rand_poly(rng):
    return LaurentPoly({rng.randint(-3, 3): Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                        for _ in range(rng.randint(0, 4))})


def criterion_8():
    rng = random.Random(2024)
    parts = []
    # laurent ring and involution axioms
    ok_l = True
    for _ in range(1000):
        a, b, c = _rand_poly(rng), _rand_poly(rng), _rand_poly(rng)
        ok_l &= (a * b) * c == a * (b * c) and a * (b + c) == a * b + a * c and a * b == b * a
        ok_l &= (a + b) + c == a + (b + c) and a - a == LaurentPoly()
        ok_l &= involute(a * b) == involute(a) * involute(b) and involute(involute(a)) == a
    parts.append(("laurent x1000", ok_l))
    # Smith form
    ok_s = True
    for i in range(100):
        V = random_seifert(rng, rng.randint(1, 3))
        if i % 2:
            V = congruent(V, random_unimodular(rng, V.size))
        ok_s &= build_module(V).verify_smith()
    parts.append(("smith x100", ok_s))
    # Blanchfield hermitian and sesquilinear
    ok_b = True
    for _ in range(100):
        V = random_seifert(rng, rng.randint(1, 2))
        r = ModuleElement([_rand_poly(rng) for _ in range(V.size)])
        s = ModuleElement([_rand_poly(rng) for _ in range(V.size)])
        f = _rand_poly(rng) + 1
        ok_b &= blanchfield_pair(V, r, s) == blanchfield_pair(V, s, r).conjugate()
        ok_b &= blanchfield_pair(V, f * r, s) == blanchfield_pair(V, r, s).scale(f)
        ok_b &= blanchfield_pair(V, r, f * s) == blanchfield_pair(V, r, s).scale(involute(f))
    parts.append(("blanchfield x100", ok_b))
    # metabolic => isotropic, on every metabolizer found
    ok_m, found = True, 0
    for i in range(60):
        K = random_seifert(rng, 1)
        V = connected_sum(K, mirror_reverse(K)) if i % 2 else random_seifert(rng, rng.randint(1, 2), height=1)
        for h in (1, 2):
            m = metabolizer_search(V, h)
            if m is None:
                continue
            found += 1
            n = V.size
            lifts = [ModuleElement([sum(V.entries[a][b] * v[b] for b in range(n)) for a in range(n)])
                     for v in m.vectors]
            ok_m &= metabolizer_verify(V, m.vectors) and is_isotropic(V, lifts)
    parts.append((f"metabolic->isotropic x{found}", ok_m and found > 0))
    # rho0 additivity and negation
    ok_r = True
    for _ in range(50):
        K, J = random_seifert(rng, rng.randint(1, 2)), random_seifert(rng, 1)
        a, b, s = rho0_knot(K), rho0_knot(J), rho0_knot(connected_sum(K, J))
        n = rho0_knot(mirror_reverse(K))
        if a.exact is not None and b.exact is not None and s.exact is not None:
            ok_r &= s.exact == a.exact + b.exact
        else:
            ok_r &= s.lo <= a.hi + b.hi and a.lo + b.lo <= s.hi
        ok_r &= n.lo <= -a.lo and -a.hi <= n.hi
    parts.append(("rho0 pairs x50", ok_r))
    return all(p for _, p in parts), ", ".join(f"{name} {'ok' if p else 'FAILED'}" for name, p in parts)


def criterion_9():
    def run():
        results = [metabolizer_search(TREFOIL, h) is None for h in (1, 2, 3, 4)]
        E = family_entry(2)
        aniso = run_check("anisotropy", {"subject": E.name, "matrix": E.V.rows(), "p": E.delta.to_json()})
        straddling = axiom(RhoQuantity("rho1_p", E.name, E.delta), (-1, 1), "negative control")
        try:
            torsion_certificate(E.name, straddling, aniso)
            results.append(False)
        except CertificateError:
            results.append(True)
        rho1 = axiom(RhoQuantity("rho1", "A"), (-INF, Fraction(-1, 2)), "negative control")
        rho1b = axiom(RhoQuantity("rho1", "B"), (-INF, Fraction(-1, 2)), "negative control")
        try:
            independence_certificate([("A", E.V, rho1), ("B", E.V, rho1b)])
            results.append(False)
        except CertificateError:
            results.append(True)
        return results

    results, dt = timed(run)
    return all(results) and dt < 1, f"trefoil has no metabolizer at height <= 4, both certificates refused; {dt * 1e3:.1f} ms (< 1 s)"


CRITERIA = [
    (1, "Alexander polynomials of T_n", criterion_1),
    (2, "metabolizer verification", criterion_2),
    (3, "Blanchfield isotropy of <l1, l2>", criterion_3),
    (4, "independence of m1, m2, l1, l2", criterion_4),
    (5, "L2 signatures", criterion_5),
    (6, "rho0 values", criterion_6),
    (7, "twist report pipeline", criterion_7),
    (8, "property suites", criterion_8),
    (9, "negative controls", criterion_9),
]


def _line(num, title, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {title}: {detail}"


@pytest.mark.parametrize("num,title,fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, title, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(num, title, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for num, title, fn in CRITERIA:
        ok, detail = fn()
        failed += not ok
        print(_line(num, title, ok, detail))
    sys.exit(1 if failed else 0)
