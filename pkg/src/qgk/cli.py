"""Command line front end.

Exit codes: 0 = ran (and, for `verify`, the property holds), 1 = a
verification was negative, 2 = bad input.  Tolerance comes from --tol,
else the QGK_TOL environment variable, else 1e-9.
"""

import argparse
import json
import os
import sys
import time

import numpy as np

from . import catalog
from .algebra import FiniteQuantumGroup, verify_hopf_axioms
from .cocycle import (Cocycle, invariance_residual, is_invariant,
                      is_left_cocycle, is_trivial_invariant_class,
                      twist_class_map, twist_class_map_inverse,
                      twist_coproduct)
from .corep import Corepresentation, decompose, is_unitary_corep
from .groups import GroupTable
from .io import from_jsonable, load_json, to_jsonable
from .linalg import resolve_tol
from .normalizer import gamma_group
from .projective import alpha_membership, classify
from .report import VerificationReport


def _fail(msg):
    print("error: %s" % msg, file=sys.stderr)
    raise SystemExit(2)


def _fetch(name, kinds):
    """Resolve a catalog name or a JSON file path to (kind, object)."""
    if name is None:
        _fail("missing object name")
    try:
        if os.path.exists(name) or name.endswith(".json"):
            obj = load_json(name)
            kind = {FiniteQuantumGroup: "quantum_group",
                    Corepresentation: "corep",
                    Cocycle: "cocycle",
                    GroupTable: "group"}.get(type(obj), "array")
        else:
            kind, obj = catalog.resolve(name)
    except (KeyError, ValueError, OSError, json.JSONDecodeError) as exc:
        _fail(str(exc))
    if kind not in kinds:
        _fail("%r is a %s; expected one of %s" % (name, kind, "/".join(kinds)))
    return kind, obj


def _emit(args, payload):
    if args.json_out:
        def plain(x):
            if isinstance(x, VerificationReport):
                return x.to_dict()
            if isinstance(x, (FiniteQuantumGroup, Corepresentation, Cocycle,
                              np.ndarray)):
                return to_jsonable(x)
            if isinstance(x, dict):
                return {k: plain(v) for k, v in x.items()}
            if isinstance(x, (list, tuple)):
                return [plain(v) for v in x]
            if isinstance(x, complex):
                return [x.real, x.imag]
            if isinstance(x, (np.floating, np.integer)):
                return x.item()
            if isinstance(x, np.bool_):
                return bool(x)
            return x
        meta = {"command": " ".join(args._argv),
                "tol": resolve_tol(args.tol), "seed": args.seed,
                "elapsed_s": round(time.time() - args._t0, 3)}
        with open(args.json_out, "w") as fh:
            json.dump({"meta": meta, **plain(payload)}, fh,
                      sort_keys=True, indent=2)
            fh.write("\n")


def _target(args):
    if args.example and args.input:
        _fail("give --example or --input, not both")
    return args.example or args.input


# -- subcommands -------------------------------------------------------------


def cmd_verify(args):
    tol = resolve_tol(args.tol)
    what = args.what
    payload = {"what": what}
    if what == "axioms":
        _, q = _fetch(_target(args), ("quantum_group",))
        rep = verify_hopf_axioms(q, tol=tol, seed=args.seed)
        print(rep)
        for k in sorted(rep.residuals):
            print("  %-24s %.3e" % (k, rep.residuals[k]))
        payload["report"] = rep
        _emit(args, payload)
        return 0 if rep.passed else 1
    if what == "corep":
        _, u = _fetch(_target(args), ("corep",))
        rep = is_unitary_corep(u, tol=tol)
        print(rep)
        payload["report"] = rep
        _emit(args, payload)
        return 0 if rep.passed else 1
    if what in ("cocycle", "invariant"):
        _, w = _fetch(_target(args) or args.cocycle, ("cocycle",))
        rep = is_left_cocycle(w, tol=tol)
        reps = {"left_cocycle": rep}
        ok = rep.passed
        print(rep)
        for k in sorted(rep.residuals):
            print("  %-18s %.3e" % (k, rep.residuals[k]))
        if what == "invariant":
            inv = is_invariant(w, tol=tol)
            reps["invariant"] = inv
            ok = ok and inv.passed
            print(inv)
        payload["reports"] = reps
        _emit(args, payload)
        return 0 if ok else 1
    if what == "projective":
        _, u = _fetch(_target(args) or args.corep, ("corep",))
        if args.cocycle:
            _, w = _fetch(args.cocycle, ("cocycle",))
            rep = alpha_membership(u, w, tol=tol)
            print(rep)
            for k in sorted(rep.residuals):
                print("  %-28s %.3e" % (k, rep.residuals[k]))
            payload["report"] = rep
            _emit(args, payload)
            return 0 if rep.passed else 1
        out = classify(u, tol=tol, seed=args.seed)
        print("kind: %s" % out["kind"])
        payload["kind"] = out["kind"]
        _emit(args, payload)
        return 0 if out["kind"] not in ("not-projective", "not-unitary") else 1
    _fail("unknown verify target %r" % what)


def cmd_classify(args):
    tol = resolve_tol(args.tol)
    _, u = _fetch(_target(args), ("corep",))
    out = classify(u, tol=tol, seed=args.seed)
    print("kind: %s" % out["kind"])
    if out["cocycle"] is not None:
        w = out["cocycle"]
        inv = invariance_residual(u.parent, w.coeffs)
        print("cocycle: %s (invariance residual %.3e)" % (w.name, inv))
    payload = {"kind": out["kind"],
               "cocycle": out["cocycle"],
               "convention": out["convention"]}
    _emit(args, payload)
    return 0


def cmd_decompose(args):
    tol = resolve_tol(args.tol)
    _, u = _fetch(_target(args), ("corep",))
    comps, rep = decompose(u, tol=tol, seed=args.seed)
    dims = sorted(c["corep"].n for c in comps for _ in range(c["multiplicity"]))
    print("%s = %s" % (u.name, " + ".join(
        "%d x %s(dim %d)" % (c["multiplicity"], c["corep"].name, c["corep"].n)
        for c in comps)))
    print("dimension check: sum n_i m_i = %d (carrier %d)"
          % (sum(dims), u.n))
    print(rep)
    payload = {"dims": dims, "report": rep,
               "components": [{"dim": c["corep"].n,
                               "multiplicity": c["multiplicity"]}
                              for c in comps]}
    _emit(args, payload)
    return 0 if rep.passed else 1


def _cocycle_verdicts(w, tol, seed):
    """Per-cocycle battery: validity, invariance, central triviality."""
    q = w.parent
    basic = is_left_cocycle(w, tol=tol)
    inv = is_invariant(w, tol=tol)
    out = {"name": w.name, "left_cocycle": basic, "invariant": inv,
           "trivial": None, "witness_found": None, "obstruction": None}
    if inv.passed:
        info = is_trivial_invariant_class(w, tol=tol, seed=seed)
        out["trivial"] = info["trivial"]
        out["witness_found"] = info["witness"] is not None
        if not info["trivial"]:
            out["obstruction"] = info["obstruction"]["kind"]
    return out


def _print_verdicts(v, indent=""):
    print("%scocycle %s: valid %s (worst %.2e); invariant %s"
          % (indent, v["name"], "yes" if v["left_cocycle"].passed else "NO",
             v["left_cocycle"].worst(), "yes" if v["invariant"].passed else "no"))
    if v["trivial"] is None:
        print("%s  central-triviality: skipped (not invariant)" % indent)
    elif v["trivial"]:
        print("%s  centrally trivial: yes (witness found)" % indent)
    else:
        print("%s  centrally trivial: no (obstruction: %s)"
              % (indent, v["obstruction"]))


def cmd_cohomology(args):
    tol = resolve_tol(args.tol)
    names = [s for s in (args.cocycles or args.cocycle or "").split(",") if s]
    if not names:
        _fail("give at least one cocycle via --cocycles")
    ws = [_fetch(n, ("cocycle",))[1] for n in names]
    q = ws[0].parent
    results = []
    ok = True
    for w in ws:
        try:
            v = _cocycle_verdicts(w, tol, args.seed)
        except ValueError as exc:
            _fail(str(exc))
        ok = ok and v["left_cocycle"].passed
        _print_verdicts(v)
        results.append(v)
    payload = {"cocycles": [
        {"name": v["name"], "valid": v["left_cocycle"].passed,
         "invariant": v["invariant"].passed, "trivial": v["trivial"],
         "obstruction": v["obstruction"]} for v in results]}
    if args.twist:
        _, wt = _fetch(args.twist, ("cocycle",))
        if not is_invariant(wt, tol=tol).passed:
            _fail("--twist cocycle must be invariant")
        qt = twist_coproduct(q, wt, tol=tol)
        rep = verify_hopf_axioms(qt, tol=tol, seed=args.seed)
        print("twisted coproduct axioms: %s" % rep)
        payload["twist_axioms"] = rep
        preserved = True
        twisted = []
        for w, v in zip(ws, results):
            img = twist_class_map(wt, w, tol=tol)
            back = twist_class_map_inverse(wt, img, tol=tol)
            rt = float(np.abs(back.coeffs - w.coeffs).max())
            img_t = Cocycle(qt, img.coeffs, name=img.name)
            vt = _cocycle_verdicts(img_t, tol, args.seed)
            _print_verdicts(vt, indent="  [twisted] ")
            same = (vt["left_cocycle"].passed == v["left_cocycle"].passed
                    and vt["invariant"].passed == v["invariant"].passed
                    and vt["trivial"] == v["trivial"])
            preserved = preserved and same and rt <= 1e-8
            twisted.append({"name": vt["name"], "verdicts_preserved": same,
                            "transport_roundtrip": rt,
                            "trivial": vt["trivial"]})
        print("verdicts preserved under twist by %s: %s"
              % (wt.name, "yes" if preserved else "NO"))
        payload["twisted"] = twisted
        payload["verdicts_preserved"] = preserved
        ok = ok and rep.passed and preserved
    _emit(args, payload)
    return 0 if ok else 1


def cmd_gamma(args):
    tol = resolve_tol(args.tol)
    _, q = _fetch(args.example or args.input, ("quantum_group",))
    if args.cocycles:
        names = [s for s in args.cocycles.split(",") if s]
    else:
        names = catalog.default_cocycles(args.example or "")
    cocycles = [_fetch(n, ("cocycle",))[1] for n in names]
    witnesses = []
    for wname in args.witness or []:
        kind, obj = _fetch(wname, ("unitary", "array"))
        vec = obj[1] if isinstance(obj, tuple) else obj
        witnesses.append(vec)
    try:
        out = gamma_group(q, cocycles, witnesses=witnesses, tol=tol)
    except (ValueError, RuntimeError) as exc:
        _fail(str(exc))
    print("Gamma(%s): order %d" % (q.name, out["order"]))
    print("classes: %s" % " ".join(out["names"]))
    gt = out["group"]
    for i in range(gt.n):
        print("  " + " ".join("%2d" % gt.table[i][j] for j in range(gt.n)))
    for m in out["merges"]:
        print("merged input %d into class %d via %s (residual %.2e)"
              % (m["input_index"], m["merged_into"], m["via"], m["residual"]))
    print("note: classes are distinguished up to central coboundaries and "
          "the %d supplied witness(es); further witnesses can only merge "
          "classes, never split them" % len(witnesses))
    payload = {"order": out["order"], "names": out["names"],
               "table": [list(r) for r in out["group"].table],
               "merges": out["merges"],
               "scope": "up to central coboundaries and supplied witnesses"}
    _emit(args, payload)
    return 0


def cmd_catalog_list(args):
    listing = catalog.catalog_list()
    for section in sorted(listing):
        print("%s:" % section)
        for entry in listing[section]:
            print("  %s" % entry)
    _emit(args, listing)
    return 0


def main(argv=None):
    t0 = time.time()
    ap = argparse.ArgumentParser(prog="qgk", description=__doc__)

    def add_common(p, top):
        # the same flags are accepted before and after the subcommand;
        # SUPPRESS keeps the subparser from clobbering values parsed at
        # the top level when the flag is absent
        sup = argparse.SUPPRESS
        p.add_argument("--tol", type=float,
                       default=None if top else sup,
                       help="numerical tolerance (default: QGK_TOL or 1e-9)")
        p.add_argument("--seed", type=int, default=0 if top else sup)
        p.add_argument("--json-out", default=None if top else sup,
                       help="also write the result as JSON to this path")

    add_common(ap, top=True)
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add_parser(name, **kw):
        p = sub.add_parser(name, **kw)
        add_common(p, top=False)
        return p

    def add_target(p):
        p.add_argument("--example", default=None,
                       help="catalog name (see catalog-list)")
        p.add_argument("--input", default=None, help="JSON file")

    p = add_parser("verify", help="check a stated property")
    p.add_argument("what", choices=["axioms", "corep", "cocycle",
                                    "invariant", "projective"])
    add_target(p)
    p.add_argument("--cocycle", default=None)
    p.add_argument("--corep", default=None)
    p.set_defaults(func=cmd_verify)

    p = add_parser("classify", help="projectivity kind of a unitary")
    add_target(p)
    p.set_defaults(func=cmd_classify)

    p = add_parser("decompose", help="split a corep into irreducibles")
    add_target(p)
    p.set_defaults(func=cmd_decompose)

    p = add_parser("cohomology",
                   help="triviality of invariant cocycle classes")
    p.add_argument("--cocycles", default=None,
                   help="comma separated cocycle names/files")
    p.add_argument("--cocycle", default=None, help="alias for --cocycles")
    p.add_argument("--twist", default=None, metavar="COCYCLE",
                   help="re-run the verdicts on the coproduct twisted by "
                        "this invariant cocycle and report preservation")
    p.set_defaults(func=cmd_cohomology)

    p = add_parser("gamma", help="group generated by invariant classes")
    add_target(p)
    p.add_argument("--cocycles", default=None,
                   help="comma separated cocycle names/files "
                        "(default: the catalog's list for the example)")
    p.add_argument("--witness", action="append", default=[],
                   help="unitary witness for merging classes (repeatable)")
    p.set_defaults(func=cmd_gamma)

    p = add_parser("catalog-list", help="what resolve() accepts")
    p.set_defaults(func=cmd_catalog_list)

    args = ap.parse_args(argv)
    args._argv = list(argv) if argv is not None else sys.argv[1:]
    args._t0 = t0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
