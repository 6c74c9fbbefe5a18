"""Command-line front end.

Exit codes: 0 success, 1 a verification failed (or nothing was found),
2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .alexmodule import ModuleElement, anisotropy_criterion, build_module, z_linear_independent
from .blanchfield import Metabolizer, blanchfield_pair, is_isotropic, metabolizer_search, metabolizer_verify
from .laurent import LaurentPoly, parse_poly
from .ledger import Certificate, LedgerError, RhoInterval, replay, run_scenario
from .l2sig import HermitianLaurentMatrix, l2_signature, rank_bound_check
from .seifert import SeifertMatrix, alexander_poly, levine_tristram, rho0_knot, signature_function


class InputError(Exception):
    pass


class VerificationFailure(Exception):
    pass


def _load(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _matrix(path: str) -> SeifertMatrix:
    return SeifertMatrix.from_json(_load(path))


def _poly(path: str) -> LaurentPoly:
    data = _load(path)
    if isinstance(data, dict) and "poly" in data:
        data = data["poly"]
    if isinstance(data, str):
        return parse_poly(data)
    if isinstance(data, dict):
        return LaurentPoly.from_json(data)
    raise InputError(f"{path}: expected a polynomial map or string")


def _element(path: str) -> ModuleElement:
    return ModuleElement.from_json(_load(path))


def _elements(path: str) -> list[ModuleElement]:
    data = _load(path)
    if isinstance(data, dict):
        data = data.get("gens", data.get("elements"))
    if not isinstance(data, list):
        raise InputError(f'{path}: expected a list of elements or {{"gens": [...]}}')
    return [ModuleElement.from_json(e) for e in data]


def _rational(text: str) -> Fraction:
    try:
        if "." in text or "e" in text.lower():
            raise ValueError
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"expected an exact rational like 3/2, got {text!r}") from exc


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


# -- subcommands ------------------------------------------------------------------


def cmd_alex(args):
    d = alexander_poly(_matrix(args.matrix))
    _emit(args, {"poly": d.to_json(), "text": str(d)}, str(d))


def cmd_sig(args):
    V = _matrix(args.matrix)
    if args.at is not None:
        u = _rational(args.at)
        try:
            s = levine_tristram(V, u)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        _emit(args, {"u": str(u), "signature": s}, str(s))
        return
    sf = signature_function(V)
    rows = sf.table()
    lines = [f"theta/pi in ({r['from']:.12f}, {r['to']:.12f}): {r['value']}" for r in rows]
    _emit(args, sf.to_json(), "\n".join(lines))


def cmd_rho0(args):
    r = rho0_knot(_matrix(args.matrix))
    _emit(args, r.to_json(), str(r))


def cmd_blanchfield(args):
    V = _matrix(args.matrix)
    p = _poly(args.mod_p) if args.mod_p else None
    v = blanchfield_pair(V, _element(args.r), _element(args.s), p)
    _emit(args, v.to_json(), f"{v}  ({v.ambient})")


def cmd_isotropic(args):
    V = _matrix(args.matrix)
    p = _poly(args.mod_p) if args.mod_p else None
    ok = is_isotropic(V, _elements(args.gens), p)
    _emit(args, {"isotropic": ok}, "isotropic" if ok else "not isotropic")
    if not ok:
        raise VerificationFailure("isotropy")


def cmd_metab(args):
    V = _matrix(args.matrix)
    if args.action == "verify":
        if not args.vectors:
            raise InputError("metab verify needs --vectors")
        m = Metabolizer.from_json(_load(args.vectors))
        try:
            ok = metabolizer_verify(V, m.vectors)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        _emit(args, {"metabolizer": ok}, "metabolizer" if ok else "not a metabolizer")
        if not ok:
            raise VerificationFailure("metabolizer verification")
        return
    found = metabolizer_search(V, args.height)
    if found is None:
        _emit(args, {"vectors": None}, f"none (height {args.height})")
        raise VerificationFailure("no metabolizer found")
    _emit(args, found.to_json(), "\n".join(" ".join(str(x) for x in v) for v in found.vectors) or "(empty)")


def cmd_module(args):
    V = _matrix(args.matrix)
    A = build_module(V)
    if args.action == "smith":
        divs = A.elementary_divisors
        payload = {"divisors": [d.to_json() for d in divs], "dimension": A.dimension,
                   "verified": A.verify_smith()}
        text = "\n".join(str(d) for d in divs) or "(trivial module)"
        _emit(args, payload, f"{text}\ndimension {A.dimension}")
        return
    if not args.elems:
        raise InputError("module independent needs --elems")
    try:
        ok = z_linear_independent(A, _elements(args.elems))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _emit(args, {"independent": ok}, "independent" if ok else "dependent")
    if not ok:
        raise VerificationFailure("independence")


def cmd_aniso(args):
    ok = anisotropy_criterion(_matrix(args.matrix), _poly(args.p))
    _emit(args, {"anisotropic": ok}, "criterion holds" if ok else "criterion fails")
    if not ok:
        raise VerificationFailure("anisotropy criterion")


def cmd_l2sig(args):
    M = HermitianLaurentMatrix.from_json(_load(args.matrix))
    r = l2_signature(M)
    payload = r.to_json()
    text = str(r)
    if args.bound is not None:
        ok = rank_bound_check(M, args.bound)
        payload["bound_ok"] = ok
        text += f"\n|sigma2| <= {args.bound}: {ok}"
    _emit(args, payload, text)


def cmd_ledger(args):
    data = _load(args.file)
    certs, trees, failures = [], [], []
    if isinstance(data, dict) and "certificate" in data:
        certs.append(Certificate.from_json(data))
    elif isinstance(data, dict) and ("torsion_certificates" in data or "independence_certificate" in data):
        certs.extend(Certificate.from_json(c) for c in data.get("torsion_certificates", []))
        if data.get("independence_certificate"):
            certs.append(Certificate.from_json(data["independence_certificate"]))
    elif isinstance(data, dict) and ("axioms" in data or "steps" in data):
        env, failures = run_scenario(data)
        trees = list(env.items())
    elif isinstance(data, dict) and "rule" in data:
        trees = [("interval", RhoInterval.from_json(data))]
    else:
        raise InputError(f"{args.file}: not a scenario, interval or certificate")
    results = []
    for c in certs:
        rep = replay(c)
        results.append({"conclusion": c.conclusion, "ok": rep.ok, "failures": rep.failures})
    for key, iv in trees:
        rep = replay(iv)
        results.append({"id": key, "quantity": str(iv.quantity), "interval": str(iv), "ok": rep.ok,
                        "failures": rep.failures})
    ok = not failures and all(r["ok"] for r in results)
    lines = []
    for r in results:
        head = r.get("conclusion") or f"{r['id']}: {r['quantity']} in {r['interval']}"
        lines.append(f"{'ok  ' if r['ok'] else 'FAIL'} {head}")
        lines.extend(f"     {f}" for f in r["failures"])
    lines.extend(f"FAIL expectation: {f}" for f in failures)
    _emit(args, {"ok": ok, "results": results, "expectation_failures": failures}, "\n".join(lines))
    if not ok:
        raise VerificationFailure("ledger replay")


def cmd_twist(args):
    from .twistlab import TwistError, fixtures, twist_report

    if args.action == "fixture":
        print(json.dumps(fixtures(args.x or range(2, 7)), indent=2))
        return
    try:
        rep = twist_report(args.x or [], exploratory=args.exploratory)
    except TwistError as exc:
        raise VerificationFailure(str(exc)) from exc
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    replays = [replay(c) for c in rep.torsion] + ([replay(rep.independence)] if rep.independence else [])
    replay_ok = all(r.ok for r in replays)
    payload = rep.to_json()
    payload["replay_ok"] = replay_ok
    _emit(args, payload, rep.text() + f"\ncertificate replay: {'verified' if replay_ok else 'FAILED'}")
    if not replay_ok:
        raise VerificationFailure("certificate replay")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    ap = argparse.ArgumentParser(prog="concordance", description="Knot concordance invariants, exactly.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, matrix=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if matrix:
            p.add_argument("--matrix", required=True, help="Seifert matrix JSON {\"matrix\": [[...]]}")
        p.set_defaults(func=fn)
        return p

    add("alex", cmd_alex, "Alexander polynomial")
    p = add("sig", cmd_sig, "Levine-Tristram signature (arc table, or value at u = 2 cos theta)")
    p.add_argument("--at", help="exact rational u in [-2, 2]")
    add("rho0", cmd_rho0, "rho0 of a knot (integral of the signature function)")
    p = add("blanchfield", cmd_blanchfield, "Blanchfield pairing of two elements")
    p.add_argument("--r", required=True)
    p.add_argument("--s", required=True)
    p.add_argument("--mod-p", dest="mod_p")
    p = add("isotropic", cmd_isotropic, "isotropy of a generated submodule")
    p.add_argument("--gens", required=True)
    p.add_argument("--mod-p", dest="mod_p")
    p = add("metab", cmd_metab, "verify or search metabolizers")
    p.add_argument("action", choices=["verify", "search"])
    p.add_argument("--vectors")
    p.add_argument("--height", type=int, default=2)
    p = add("module", cmd_module, "Alexander module: Smith form or independence")
    p.add_argument("action", choices=["smith", "independent"])
    p.add_argument("--elems")
    p = add("aniso", cmd_aniso, "anisotropy criterion at p")
    p.add_argument("--p", required=True)
    p = add("l2sig", cmd_l2sig, "L2 signature of a Hermitian Laurent matrix", matrix=False)
    p.add_argument("--matrix", required=True, help="Hermitian matrix JSON")
    p.add_argument("--bound", type=int)
    p = add("ledger", cmd_ledger, "replay a scenario or certificate", matrix=False)
    p.add_argument("action", choices=["replay"])
    p.add_argument("file")
    p = add("twist", cmd_twist, "twist knot family pipeline", matrix=False)
    p.add_argument("action", choices=["report", "fixture"])
    p.add_argument("--x", type=int, nargs="*")
    p.add_argument("--exploratory", action="store_true", help="allow x = 1")
    return ap


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VerificationFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except (LedgerError, ValueError, KeyError, TypeError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
