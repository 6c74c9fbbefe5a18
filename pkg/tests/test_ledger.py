import copy
import json
from fractions import Fraction

import pytest

from concordance.laurent import LaurentPoly, T, parse_poly
from concordance.ledger import (
    INF,
    Certificate,
    CertificateError,
    Check,
    LedgerError,
    RhoInterval,
    RhoQuantity,
    additivity,
    axiom,
    bordism_rule,
    computed,
    equality,
    ext,
    independence_certificate,
    infection_rule,
    knot_rho0,
    link_rho0,
    postmain_bound,
    premain_bound,
    replay,
    rewrite_interval,
    rho_prime_rewrite,
    run_check,
    run_scenario,
    surgery_step,
    torsion_certificate,
)
from concordance.seifert import SeifertMatrix
from concordance.twistlab import family_entry, surgery_chain_data

L = link_rho0("L", 2)
T7 = SeifertMatrix([[-7, 1], [0, 1]])
T13 = SeifertMatrix([[-13, 1], [0, 1]])
D7 = parse_poly("7t^2 - 15t + 7")


def src(lo, hi):
    return axiom(L, (lo, hi), "test input")


def test_extended_reals():
    assert ext("-inf") == -INF and ext("+inf") == INF
    assert ext("3/4") == Fraction(3, 4)
    with pytest.raises(LedgerError):
        ext(0.5)
    with pytest.raises(LedgerError):
        ext("0.5")
    with pytest.raises(LedgerError):
        RhoInterval(2, 1)
    with pytest.raises(LedgerError):
        RhoInterval(INF, INF)


@pytest.mark.parametrize(
    "sign,direction,count,want",
    [
        (1, "pre", 1, (-1, 5)),
        (1, "post", 1, (-INF, 3)),
        (-1, "pre", 1, (-3, 3)),
        (-1, "post", 1, (-1, INF)),
        (1, "pre", 2, (-1, 7)),
        (1, "post", 2, (-INF, 3)),
    ],
)
def test_surgery_rule(sign, direction, count, want):
    iv = surgery_step(L, src(-1, 3), sign, direction, count, "test")
    assert (iv.lo, iv.hi) == want
    assert replay(iv).ok


def test_surgery_rejects_bad_parameters():
    with pytest.raises(LedgerError):
        surgery_step(L, src(0, 0), 2, "post")
    with pytest.raises(LedgerError):
        surgery_step(L, src(0, 0), 1, "sideways")
    with pytest.raises(LedgerError):
        surgery_step(L, src(0, 0), 1, "post", 0)


def test_bordism_and_equality():
    s2 = axiom(RhoQuantity("sigma2", "W"), 0, "test")
    s = axiom(RhoQuantity("sigma", "W"), 2, "test")
    iv = bordism_rule(L, s2, s, "W bounds")
    assert (iv.lo, iv.hi) == (-2, -2)
    e = equality(link_rho0("L2", 2), iv, "same")
    assert e.bounds == iv.bounds and replay(e).ok
    with pytest.raises(LedgerError):
        bordism_rule(L, s2, s, "")
    with pytest.raises(LedgerError):
        equality(L, iv, "")


def _premain_checks(aniso=True):
    V2 = [[-7, 1, 0, 0], [0, 1, 0, 0], [0, 0, -7, 1], [0, 0, 0, 1]]
    met = run_check("metabolizer", {"matrix": V2, "vectors": [[1, 2, 0, 1], [0, 1, 1, -3]]})
    an = run_check("anisotropy", {"subject": "T_-7", "matrix": T7.rows(), "p": D7.to_json()})
    if not aniso:
        an = Check("anisotropy", an.args, False)
    E = family_entry(2)
    mer = run_check("meridians_independent", {
        "matrix": V2, "p": D7.to_json(),
        "link": [E.l1.to_json(), E.l2.to_json()], "meridians": [E.m1.to_json(), E.m2.to_json()]})
    assert mer.result
    return met, an, mer


def test_premain_bound():
    met, an, mer = _premain_checks()
    q = RhoQuantity("rho1_p", "T_-7", D7)
    iv = premain_bound(q, 2, 2, 0, src(-INF, -2), [an, met, mer])
    assert (iv.lo, iv.hi) == (-INF, Fraction(-1, 2))
    iv = premain_bound(q, 2, 3, 1, src(-4, 2), [an, met, mer])
    assert (iv.lo, iv.hi) == (Fraction(-5, 2), Fraction(3, 2))
    with pytest.raises(LedgerError):
        premain_bound(q, 1, 2, 0, src(0, 0), [an, met, mer])
    with pytest.raises(CertificateError, match="missing meridians_independent"):
        premain_bound(q, 2, 2, 0, src(0, 0), [an, met])
    met2, an2, mer2 = _premain_checks(aniso=False)
    with pytest.raises(CertificateError, match="failed anisotropy"):
        premain_bound(q, 2, 2, 0, src(0, 0), [an2, met2, mer2])
    with pytest.raises(LedgerError):
        premain_bound(q, 2, 0, 0, src(0, 0), [an, met, mer])


def test_postmain_bound():
    met, an, mer = _premain_checks()
    an_named = run_check("anisotropy:K", an.args)
    q = RhoQuantity("rho1_p_sum", "K # J", D7)
    iv = postmain_bound(q, ["K"], 2, 0, src(-3, -2), [an_named, met, mer])
    assert (iv.lo, iv.hi) == (-4, -1)
    with pytest.raises(CertificateError):
        postmain_bound(q, ["K", "J"], 2, 0, src(-3, -2), [an_named, met, mer])
    with pytest.raises(LedgerError):
        postmain_bound(q, [], 2, 0, src(0, 0), [])


def test_rho_prime_rewrite():
    q = RhoQuantity("rho1_p", "K", T - 3)
    assert rho_prime_rewrite(q, D7).kind == "rho0_knot"
    q = RhoQuantity("rho1_p", "K", D7 * 2)
    assert rho_prime_rewrite(q, D7).kind == "rho1"
    q = RhoQuantity("rho1_p", "K", D7)
    assert rho_prime_rewrite(q, D7 * (T - 3)) is None
    iv = axiom(RhoQuantity("rho1_p", "K", D7), (-INF, -1), "test")
    r = rewrite_interval(iv, D7)
    assert r.quantity.kind == "rho1" and r.bounds == iv.bounds
    with pytest.raises(LedgerError):
        rho_prime_rewrite(knot_rho0("K"), D7)


def test_additivity_and_infection():
    a = axiom(knot_rho0("K"), (-1, 1), "t")
    b = axiom(knot_rho0("J"), Fraction(1, 3), "t")
    s = additivity([a, b])
    assert s.bounds == (Fraction(-2, 3), Fraction(4, 3))
    assert s.quantity.subject == "K # J"
    assert additivity([]).bounds == (0, 0)
    with pytest.raises(LedgerError):
        additivity([a, axiom(L, 0, "t")])
    base = axiom(RhoQuantity("rho1_p", "R", D7), (0, 1), "t")
    assert infection_rule(base, a, True).bounds == (-1, 2)
    assert infection_rule(base, a, False).bounds == (0, 1)


def test_computed_and_axiom_leaves():
    iv = computed(knot_rho0("trefoil"), "rho0_knot", {"matrix": [[-1, 1], [0, -1]]})
    assert iv.bounds == (Fraction(-4, 3), Fraction(-4, 3)) and iv.origin == "computed"
    assert replay(iv).ok
    with pytest.raises(LedgerError):
        axiom(L, 0, "")
    with pytest.raises(LedgerError):
        computed(L, "nonsense", {})
    with pytest.raises(LedgerError):
        run_check("nonsense", {})


def test_replay_detects_tampering():
    s2 = computed(RhoQuantity("sigma2", "W"), "l2_signature",
                  {"matrix": {"vars": 1, "entries": [[[{"exps": [0], "coeff": "3"}]]]}})
    s = axiom(RhoQuantity("sigma", "W"), 2, "t")
    iv = bordism_rule(L, s2, s, "t")
    assert iv.bounds == (-1, -1) and replay(iv).ok
    forged = RhoInterval(-3, -2, iv.quantity, iv.rule, iv.params, iv.premises, iv.citation)
    rep = replay(forged)
    assert not rep.ok and "does not contain" in rep.failures[0]
    # a wider stored interval is still sound
    assert replay(RhoInterval(-5, 0, iv.quantity, iv.rule, iv.params, iv.premises, iv.citation)).ok
    # a lying check
    bad = Check("rho0_zero", {"subject": "trefoil", "matrix": [[-1, 1], [0, -1]]}, True)
    rep = replay(axiom(L, 0, "x").__class__(0, 0, L, "equal", {}, (axiom(L, 0, "x"), bad), ""))
    assert not rep.ok


def test_json_round_trip_and_replay():
    env, failures = run_scenario(surgery_chain_data())
    assert not failures
    for iv in env.values():
        back = RhoInterval.from_json(json.loads(json.dumps(iv.to_json())))
        assert back.bounds == iv.bounds and replay(back).ok
    data = env["rho0_L2"].to_json()
    data["premises"][0]["lo"] = "0"
    data["premises"][0]["hi"] = "0"
    assert not replay(RhoInterval.from_json(data)).ok


def test_scenario_values():
    env, failures = run_scenario(surgery_chain_data())
    assert env["sigma2_Wprime"].bounds == (0, 0)
    assert env["rho0_Lprime"].bounds == (-2, -2)
    assert env["rho0_L2"].bounds == (-INF, -2)
    assert env["sigma_W"].origin == "declared"
    assert env["sigma2_Wprime"].origin == "computed"
    assert env["rho0_L2"].origin == "derived"
    bad = copy.deepcopy(surgery_chain_data())
    bad["expect"]["rho0_Lprime"] = "-1"
    bad["expect"]["missing"] = "0"
    _, failures = run_scenario(bad)
    assert len(failures) == 2


def test_provenance_lists_leaves_first():
    env, _ = run_scenario(surgery_chain_data())
    lines = env["rho0_L2"].provenance()
    assert lines[0].startswith("axiom") or lines[0].startswith("computed")
    assert lines[-1].startswith("surgery")
    assert any("declared" in line for line in lines)


def test_torsion_certificate():
    met, an, mer = _premain_checks()
    q = RhoQuantity("rho1_p", "T_-7", D7)
    good = premain_bound(q, 2, 2, 0, src(-INF, -2), [an, met, mer])
    cert = torsion_certificate("T_-7", good, an)
    assert replay(cert).ok
    assert replay(Certificate.from_json(json.loads(json.dumps(cert.to_json())))).ok
    straddles = premain_bound(q, 2, 2, 0, src(-1, -1), [an, met, mer])
    with pytest.raises(CertificateError, match="contains 0"):
        torsion_certificate("T_-7", straddles, an)


def _rho1(name):
    return axiom(RhoQuantity("rho1", name), (-INF, Fraction(-1, 2)), "test")


def test_independence_certificate():
    cert = independence_certificate([("A", T7, _rho1("A")), ("B", T13, _rho1("B"))])
    assert replay(cert).ok
    assert "linearly independent" in cert.conclusion
    with pytest.raises(CertificateError, match="coprimality"):
        independence_certificate([("A", T7, _rho1("A")), ("B", T7, _rho1("B"))])
    with pytest.raises(CertificateError):
        independence_certificate([])
    with pytest.raises(CertificateError, match="rho0_zero"):
        independence_certificate([("tref", SeifertMatrix([[-1, 1], [0, -1]]), _rho1("tref"))])
    zero = axiom(RhoQuantity("rho1", "A"), (-1, 1), "t")
    with pytest.raises(CertificateError, match="contains 0"):
        independence_certificate([("A", T7, zero)])


def test_certificate_replay_rejects_dropped_premise():
    cert = independence_certificate([("A", T7, _rho1("A")), ("B", T13, _rho1("B"))])
    data = cert.to_json()
    data["premises"] = [p for p in data["premises"] if p.get("check") != "coprime"]
    rep = replay(Certificate.from_json(data))
    assert not rep.ok and any("coprimality" in f for f in rep.failures)


def test_quantity_validation():
    with pytest.raises(LedgerError):
        RhoQuantity("rho7", "K")
    with pytest.raises(LedgerError):
        RhoQuantity("rho1_p", "K")
    with pytest.raises(LedgerError):
        RhoQuantity("rho0_link", "L")
    q = RhoQuantity("rho1_p", "K", D7)
    assert RhoQuantity.from_json(q.to_json()) == q
