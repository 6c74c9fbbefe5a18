import json
import subprocess
import sys

import pytest

from concordance.cli import run
from concordance.twistlab import family_entry

TREF = {"matrix": [[-1, 1], [0, -1]]}


@pytest.fixture
def files(tmp_path):
    def write(name, data, raw=False):
        p = tmp_path / name
        p.write_text(data if raw else json.dumps(data))
        return str(p)

    return write


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_alex(files, capsys):
    code, out, _ = call(capsys, "alex", "--matrix", files("t.json", TREF))
    assert code == 0 and out.strip() == "t^2 - t + 1"
    code, out, _ = call(capsys, "alex", "--json", "--matrix", files("t.json", TREF))
    assert json.loads(out)["text"] == "t^2 - t + 1"


def test_sig_and_rho0(files, capsys):
    m = files("t.json", TREF)
    assert call(capsys, "sig", "--matrix", m, "--at", "-2")[1].strip() == "-2"
    code, _, err = call(capsys, "sig", "--matrix", m, "--at", "1")
    assert code == 2 and "jump" in err
    code, _, err = call(capsys, "sig", "--matrix", m, "--at", "0.5")
    assert code == 2 and "exact rational" in err
    code, out, _ = call(capsys, "sig", "--matrix", m)
    assert code == 0 and out.count("\n") == 2
    assert call(capsys, "rho0", "--matrix", m)[1].strip() == "-4/3 (exact)"
    data = json.loads(call(capsys, "rho0", "--json", "--matrix", m)[1])
    assert data["exact"] == "-4/3"


def test_blanchfield_and_isotropy(files, capsys):
    m = files("t.json", TREF)
    r = files("r.json", {"coords": ["1", "0"]})
    code, out, _ = call(capsys, "blanchfield", "--matrix", m, "--r", r, "--s", r)
    assert code == 0 and "t^2 - t + 1" in out
    p = files("p.json", "t - 3")
    code, out, _ = call(capsys, "blanchfield", "--matrix", m, "--r", r, "--s", r, "--mod-p", p)
    assert out.startswith("0")
    g = files("g.json", {"gens": [{"coords": ["1", "0"]}]})
    assert call(capsys, "isotropic", "--matrix", m, "--gens", g)[0] == 1
    E = family_entry(2)
    m2 = files("v2.json", E.V2.to_json())
    g2 = files("g2.json", {"gens": [E.l1.to_json(), E.l2.to_json()]})
    code, out, _ = call(capsys, "isotropic", "--matrix", m2, "--gens", g2)
    assert code == 0 and out.strip() == "isotropic"


def test_metab(files, capsys):
    E = family_entry(3)
    m2 = files("v2.json", E.V2.to_json())
    vec = files("v.json", {"vectors": E.metabolizer})
    assert call(capsys, "metab", "verify", "--matrix", m2, "--vectors", vec)[0] == 0
    bad = files("b.json", {"vectors": [[1, 0, 0, 0], [0, 1, 0, 0]]})
    code, _, err = call(capsys, "metab", "verify", "--matrix", m2, "--vectors", bad)
    assert code == 1 and "metabolizer" in err
    code, _, err = call(capsys, "metab", "search", "--matrix", files("t.json", TREF), "--height", "3")
    assert code == 1 and "no metabolizer" in err
    m2 = files("v2b.json", family_entry(2).V2.to_json())
    code, out, _ = call(capsys, "metab", "search", "--json", "--matrix", m2, "--height", "3")
    assert code == 0
    found = files("f.json", json.loads(out))  # emitted JSON is accepted back
    assert call(capsys, "metab", "verify", "--matrix", m2, "--vectors", found)[0] == 0
    assert call(capsys, "metab", "verify", "--matrix", m2)[0] == 2


def test_module_and_aniso(files, capsys):
    E = family_entry(2)
    m2 = files("v2.json", E.V2.to_json())
    code, out, _ = call(capsys, "module", "smith", "--matrix", m2)
    assert code == 0 and "dimension 4" in out
    data = json.loads(call(capsys, "module", "smith", "--json", "--matrix", m2)[1])
    assert data["dimension"] == 4 and data["verified"]
    el = files("e.json", {"elements": [e.to_json() for e in (E.m1, E.m2, E.l1, E.l2)]})
    assert call(capsys, "module", "independent", "--matrix", m2, "--elems", el)[0] == 0
    dup = files("d.json", {"elements": [E.l1.to_json(), E.l1.to_json()]})
    assert call(capsys, "module", "independent", "--matrix", m2, "--elems", dup)[0] == 1
    p = files("p.json", {"poly": E.delta.to_json()})
    assert call(capsys, "aniso", "--matrix", files("v.json", E.V.to_json()), "--p", p)[0] == 0
    assert call(capsys, "aniso", "--matrix", m2, "--p", p)[0] == 1


def test_l2sig(files, capsys):
    tplus = {"vars": 1, "entries": [[[{"exps": [1], "coeff": "1"}, {"exps": [-1], "coeff": "1"}]]]}
    code, out, _ = call(capsys, "l2sig", "--matrix", files("tp.json", tplus))
    assert code == 0 and out.strip() == "0 (exact)"
    tplus3 = {"vars": 1, "entries": [[tplus["entries"][0][0] + [{"exps": [0], "coeff": "3"}]]]}
    code, out, _ = call(capsys, "l2sig", "--json", "--matrix", files("tp3.json", tplus3), "--bound", "0")
    data = json.loads(out)
    assert data["exact"] == "1" and data["bound_ok"] is False


def test_ledger_replay(files, capsys):
    from concordance.twistlab import surgery_chain_data

    sc = files("s.json", surgery_chain_data())
    code, out, _ = call(capsys, "ledger", "replay", sc)
    assert code == 0 and out.count("ok") >= 4
    code, out, _ = call(capsys, "twist", "report", "--json", "--x", "2", "3")
    rep = files("r.json", json.loads(out))
    assert call(capsys, "ledger", "replay", rep)[0] == 0
    tampered = json.loads(out)
    iv = tampered["torsion_certificates"][0]["premises"][-1]
    iv["hi"] = "-5"
    assert call(capsys, "ledger", "replay", files("x.json", tampered))[0] == 1
    assert call(capsys, "ledger", "replay", files("n.json", {"what": 1}))[0] == 2


def test_twist_text_and_json_agree(capsys):
    code, text, _ = call(capsys, "twist", "report", "--x", "2", "3", "4")
    assert code == 0
    assert "{T_-7, T_-13, T_-21} is linearly independent" in text
    for name in ("T_-7", "T_-13", "T_-21"):
        assert f"  rho1({name}) in [-inf, -1/2]" in text
    code, out, _ = call(capsys, "twist", "report", "--json", "--x", "2", "3", "4")
    data = json.loads(out)
    assert [e["rho1"] for e in data["entries"]] == ["[-inf, -1/2]"] * 3
    assert data["replay_ok"] is True
    assert call(capsys, "twist", "report", "--x", "1")[0] == 2
    assert call(capsys, "twist", "report", "--x")[1].strip().startswith("empty report")


def test_deterministic_output(files, capsys):
    m = files("t.json", TREF)
    assert call(capsys, "sig", "--json", "--matrix", m) == call(capsys, "sig", "--json", "--matrix", m)


def test_input_errors(files, capsys):
    bad = files("bad.json", '{"matrix": [[1, 2],\n  [3, }', raw=True)
    code, _, err = call(capsys, "alex", "--matrix", bad)
    assert code == 2 and "line 2, column" in err
    code, _, err = call(capsys, "alex", "--matrix", "/nonexistent.json")
    assert code == 2
    assert call(capsys, "alex", "--matrix", files("i.json", {"matrix": [[1, 0], [0, 1]]}))[0] == 2
    assert call(capsys, "alex", "--bogus")[0] == 2
    assert call(capsys)[0] == 2
    assert call(capsys, "frobnicate")[0] == 2


def test_entry_point():
    out = subprocess.run([sys.executable, "-m", "concordance.cli", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and "concordance" in out.stdout
