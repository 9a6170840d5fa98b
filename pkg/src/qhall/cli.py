"""Command-line front end.

Subcommands mirror the library: f (quotient algebra), u (quantum
group), ti (symmetries), braid, hall (finite-field oracle), double,
and verify.  Global flags pick the quiver, the field size, the
enumeration budget, and JSON output.  Exit code 0 means every
requested check passed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import double as dbl
from . import falgebra as fa
from . import hall
from . import symmetries as sym
from . import ualgebra as ua
from .cartan import CartanDatum, load_datum, load_quiver
from .exprs import format_element, parse_expr
from .freealg import FreeElement
from .ratfunc import ONE, RatFunc
from .ualgebra import UElement
from .verify import Session, run_suite

SCHEMA = "qhall/1"


def _parse_dims(text: str) -> tuple:
    return tuple(int(x) for x in text.split(","))


def _session(args) -> Session:
    quiver = load_quiver(args.datum)
    budget = args.budget
    if budget is None:
        budget = int(os.environ.get("QHALL_BUDGET", hall.DEFAULT_BUDGET))
    return Session(datum=load_datum(quiver), q=args.q, budget=budget)


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, sort_keys=False))
    else:
        print(text)


def _u_terms_json(x: UElement) -> list:
    out = []
    for (fw, mu, ew), c in x.sorted_terms():
        out.append(
            {
                "F": "*".join(f"F{i}" for i in fw) or "1",
                "K": ",".join(str(m) for m in mu),
                "E": "*".join(f"E{i}" for i in ew) or "1",
                "c": str(c),
            }
        )
    return out


def _element_json(x) -> dict:
    if isinstance(x, UElement):
        return {"schema": SCHEMA, "type": "u", "terms": _u_terms_json(x)}
    if isinstance(x, dbl.DoubleElement):
        terms = [
            {
                "minus": "*".join(f"th{i}" for i in mw) or "1",
                "k": ",".join(str(m) for m in mu),
                "plus": "*".join(f"th{i}" for i in pw) or "1",
                "c": str(c),
            }
            for (mw, mu, pw), c in x.sorted_terms()
        ]
        return {"schema": SCHEMA, "type": "double", "terms": terms}
    if isinstance(x, (FreeElement, fa.FElement)):
        terms = [
            {"word": "*".join(f"th{i}" for i in w) or "1", "c": str(c)}
            for w, c in sorted(x.terms.items(), key=lambda t: (len(t[0]), t[0]))
        ]
        return {"schema": SCHEMA, "type": "f", "terms": terms}
    return {"schema": SCHEMA, "type": "scalar", "value": str(x)}


def _hex_width(q: int) -> int:
    width = 1
    while 16 ** width < q:
        width += 1
    return width


def _mat_hex(m: tuple, q: int) -> str:
    width = _hex_width(q)
    return "".join(f"{entry:0{width}x}" for row in m for entry in row)


def _class_json(quiver, q, dims, point) -> dict:
    return {
        "dims": list(dims),
        "mats": [_mat_hex(m, q) for m in point],
    }


def cmd_f(args) -> int:
    s = _session(args)
    d = s.datum
    if args.f_cmd == "dim":
        nu = _parse_dims(args.nu)
        dim = fa.weight_basis(d, nu).dim
        words = fa.weight_basis(d, nu).basis_words
        _emit(
            args,
            {
                "schema": SCHEMA,
                "weight": list(nu),
                "dim": dim,
                "basis": ["*".join(f"th{i}" for i in w) or "1" for w in words],
            },
            f"dim f_{nu} = {dim}",
        )
        return 0
    if args.f_cmd == "nf":
        val = parse_expr(d, args.expr)
        if isinstance(val, RatFunc):
            val = fa.FElement.unit(d).scale(val)
        elif isinstance(val, FreeElement):
            val = fa.normal_form(val)
        else:
            raise SystemExit("f nf expects a theta expression")
        _emit(args, _element_json(val), format_element(val))
        return 0
    if args.f_cmd == "decompose":
        val = parse_expr(d, args.expr)
        if isinstance(val, FreeElement):
            val = fa.normal_form(val)
        if not isinstance(val, fa.FElement):
            raise SystemExit("f decompose expects a theta expression")
        pieces = fa.i_decompose(args.vertex, val)
        payload = {
            "schema": SCHEMA,
            "vertex": args.vertex,
            "pieces": [
                {"t": t, "element": _element_json(p)["terms"]} for t, p in pieces
            ],
        }
        text = "\n".join(
            f"t={t}: {format_element(p)}" for t, p in pieces
        ) or "0"
        _emit(args, payload, text)
        return 0
    raise SystemExit(f"unknown f subcommand {args.f_cmd}")


def _as_u(d: CartanDatum, val) -> UElement:
    if isinstance(val, RatFunc):
        return UElement.unit(d).scale(val)
    if isinstance(val, FreeElement):
        return ua.embed_plus(fa.normal_form(val))
    if isinstance(val, fa.FElement):
        return ua.embed_plus(val)
    if isinstance(val, UElement):
        return val
    raise SystemExit("expected a quantum-group expression")


def cmd_u(args) -> int:
    s = _session(args)
    d = s.datum
    if args.u_cmd == "nf":
        val = _as_u(d, parse_expr(d, args.expr))
        _emit(args, _element_json(val), format_element(val))
        return 0
    if args.u_cmd == "mul":
        a = _as_u(d, parse_expr(d, args.left))
        b = _as_u(d, parse_expr(d, args.right))
        val = ua.u_mul(a, b)
        _emit(args, _element_json(val), format_element(val))
        return 0
    if args.u_cmd == "delta":
        val = _as_u(d, parse_expr(d, args.expr))
        t = ua.delta(val)
        terms = []
        for (k1, k2), c in sorted(t.terms.items()):
            terms.append(
                {
                    "left": _u_terms_json(UElement(d, {k1: ONE})),
                    "right": _u_terms_json(UElement(d, {k2: ONE})),
                    "c": str(c),
                }
            )
        text = " + ".join(
            f"({format_element(UElement(d, {k1: c}))}) (x) ({format_element(UElement(d, {k2: ONE}))})"
            for (k1, k2), c in sorted(t.terms.items())
        )
        _emit(args, {"schema": SCHEMA, "type": "u-tensor", "terms": terms}, text or "0")
        return 0
    if args.u_cmd == "hopf-check":
        val = _as_u(d, parse_expr(d, args.expr))
        ok = ua.hopf_axiom_check(val)
        _emit(args, {"schema": SCHEMA, "hopf": ok}, "pass" if ok else "fail")
        return 0 if ok else 1
    raise SystemExit(f"unknown u subcommand {args.u_cmd}")


def cmd_ti(args) -> int:
    s = _session(args)
    d = s.datum
    if args.ti_cmd in ("apply", "inv"):
        val = _as_u(d, parse_expr(d, args.expr))
        fn = sym.ti_apply if args.ti_cmd == "apply" else sym.ti_inverse_apply
        out = fn(args.vertex, val)
        _emit(args, _element_json(out), format_element(out))
        return 0
    if args.ti_cmd == "calibrate":
        samples = []
        from .verify import _basis_elements, _weights_upto

        for nu in _weights_upto(d, 3):
            if any(nu):
                samples.extend(list(_basis_elements(d, nu))[:2])
        report = sym.calibrate_twist(d, args.vertex, samples[:8])
        payload = {
            "schema": SCHEMA,
            "vertex": args.vertex,
            "entries": [
                {**e, "weight": list(e["weight"])} for e in report
            ],
        }
        lines = [
            f"weight={e['weight']} r={e['level']} scalar={e['scalar']} "
            f"euler(nu,ri)={e['euler(nu,ri)']} matches={e['matches euler(nu,ri)']}"
            for e in report
        ]
        _emit(args, payload, "\n".join(lines) or "no samples")
        return 0
    raise SystemExit(f"unknown ti subcommand {args.ti_cmd}")


def cmd_braid(args) -> int:
    s = _session(args)
    ok = sym.braid_verify(s.datum, args.i, args.j)
    _emit(args, {"schema": SCHEMA, "braid": ok}, "pass" if ok else "fail")
    return 0 if ok else 1


def cmd_hall(args) -> int:
    s = _session(args)
    quiver = load_quiver(args.quiver)
    if args.hall_cmd == "classes":
        dims = _parse_dims(args.dims)
        classes = hall.iso_classes(quiver, args.field_q, dims, s.budget)
        payload = {
            "schema": SCHEMA,
            "q": args.field_q,
            "dims": list(dims),
            "classes": [
                {**_class_json(quiver, args.field_q, dims, rep), "orbit": size}
                for rep, size in classes
            ],
        }
        text = "\n".join(
            f"#{k}: orbit {size} rep {[_mat_hex(m, args.field_q) for m in rep]}"
            for k, (rep, size) in enumerate(classes)
        )
        _emit(args, payload, text or "1 class (empty)")
        return 0
    if args.hall_cmd == "number":
        q = args.field_q
        dm, im = args.M.split(":")
        dn, iname = args.N.split(":")
        dl, il = args.L.split(":")
        dims_m, dims_n, dims_l = map(_parse_dims, (dm, dn, dl))
        reps_m = hall.iso_classes(quiver, q, dims_m, s.budget)
        reps_n = hall.iso_classes(quiver, q, dims_n, s.budget)
        reps_l = hall.iso_classes(quiver, q, dims_l, s.budget)
        M = hall.QuiverRep(quiver, q, dims_m, reps_m[int(im)][0])
        N = hall.QuiverRep(quiver, q, dims_n, reps_n[int(iname)][0])
        L = hall.QuiverRep(quiver, q, dims_l, reps_l[int(il)][0])
        g = hall.hall_number(M, N, L)
        _emit(args, {"schema": SCHEMA, "hall_number": g}, str(g))
        return 0
    if args.hall_cmd == "strata":
        dims = _parse_dims(args.dims)
        counts = hall.stratum_counts(quiver, dims, args.field_q, args.vertex, s.budget)
        _emit(
            args,
            {"schema": SCHEMA, "counts": counts},
            " ".join(f"r={r}:{c}" for r, c in enumerate(counts)),
        )
        return 0
    if args.hall_cmd == "compare":
        datum = load_datum(quiver)
        report = hall.specialize_compare(
            datum, _parse_dims(args.dimA), _parse_dims(args.dimB), args.field_q, s.budget
        )
        ok = all(r["match"] for r in report)
        payload = {
            "schema": SCHEMA,
            "q": args.field_q,
            "checks": [
                {
                    "left": "*".join(f"th{i}" for i in r["left"]) or "1",
                    "right": "*".join(f"th{i}" for i in r["right"]) or "1",
                    "match": r["match"],
                }
                for r in report
            ],
        }
        text = "\n".join(
            f"{c['left']} . {c['right']}: {'ok' if c['match'] else 'MISMATCH'}"
            for c in payload["checks"]
        )
        _emit(args, payload, text)
        return 0 if ok else 1
    raise SystemExit(f"unknown hall subcommand {args.hall_cmd}")


def cmd_double(args) -> int:
    s = _session(args)
    d = s.datum
    if args.double_cmd == "mul":
        a = parse_expr(d, args.left)
        b = parse_expr(d, args.right)
        if not isinstance(a, dbl.DoubleElement) or not isinstance(b, dbl.DoubleElement):
            raise SystemExit("double mul expects p(...)/m(...)/k(...) expressions")
        val = dbl.double_mul(a, b)
        _emit(args, _element_json(val), format_element(val))
        return 0
    if args.double_cmd == "calibrate":
        consts = dbl.calibrate_pairing(d)
        payload = {
            "schema": SCHEMA,
            "constants": {str(i): str(c) for i, c in consts.items()},
        }
        text = "\n".join(f"c_{i} = {c}" for i, c in consts.items())
        _emit(args, payload, text)
        return 0
    if args.double_cmd == "verify":
        return _report(args, run_suite(_session(args), "double"))
    raise SystemExit(f"unknown double subcommand {args.double_cmd}")


def _report(args, results) -> int:
    payload = [
        {"check": r.name, "status": r.status, "millis": r.millis}
        for r in results
    ]
    if args.json:
        print(json.dumps({"schema": SCHEMA, "results": payload}))
    else:
        for r in results:
            line = f"{r.status.upper():5} {r.name} ({r.millis} ms)"
            if r.detail:
                line += f" - {r.detail}"
            print(line)
    return 0 if all(r.ok for r in results) else 1


def cmd_verify(args) -> int:
    return _report(args, run_suite(_session(args), args.suite))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qhall",
        description="exact quantum groups, braid symmetries, and a "
        "finite-field Hall oracle",
    )
    p.add_argument("--datum", default="1->2", help="quiver: shorthand, JSON, or file")
    p.add_argument("--q", type=int, default=4, help="field size for Hall checks")
    p.add_argument("--budget", type=int, default=None, help="enumeration budget")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    subs = p.add_subparsers(dest="cmd", required=True)

    f = subs.add_parser("f", help="quotient algebra")
    fsubs = f.add_subparsers(dest="f_cmd", required=True)
    fdim = fsubs.add_parser("dim")
    fdim.add_argument("nu")
    fnf = fsubs.add_parser("nf")
    fnf.add_argument("expr")
    fdec = fsubs.add_parser("decompose")
    fdec.add_argument("vertex", type=int)
    fdec.add_argument("expr")
    f.set_defaults(fn=cmd_f)

    u = subs.add_parser("u", help="quantum group")
    usubs = u.add_subparsers(dest="u_cmd", required=True)
    usubs.add_parser("nf").add_argument("expr")
    umul = usubs.add_parser("mul")
    umul.add_argument("left")
    umul.add_argument("right")
    usubs.add_parser("delta").add_argument("expr")
    usubs.add_parser("hopf-check").add_argument("expr")
    u.set_defaults(fn=cmd_u)

    ti = subs.add_parser("ti", help="braid symmetries")
    tisubs = ti.add_subparsers(dest="ti_cmd", required=True)
    tap = tisubs.add_parser("apply")
    tap.add_argument("vertex", type=int)
    tap.add_argument("expr")
    tin = tisubs.add_parser("inv")
    tin.add_argument("vertex", type=int)
    tin.add_argument("expr")
    tical = tisubs.add_parser("calibrate")
    tical.add_argument("vertex", type=int)
    ti.set_defaults(fn=cmd_ti)

    braid = subs.add_parser("braid", help="braid relations")
    bsubs = braid.add_subparsers(dest="braid_cmd", required=True)
    bver = bsubs.add_parser("verify")
    bver.add_argument("i", type=int)
    bver.add_argument("j", type=int)
    braid.set_defaults(fn=cmd_braid)

    h = subs.add_parser("hall", help="finite-field oracle")
    hsubs = h.add_subparsers(dest="hall_cmd", required=True)
    hcl = hsubs.add_parser("classes")
    hcl.add_argument("quiver")
    hcl.add_argument("dims")
    hcl.add_argument("field_q", type=int)
    hnum = hsubs.add_parser("number")
    hnum.add_argument("quiver")
    hnum.add_argument("field_q", type=int)
    hnum.add_argument("M", help="dims:index, e.g. 1,1:1")
    hnum.add_argument("N", help="dims:index")
    hnum.add_argument("L", help="dims:index")
    hst = hsubs.add_parser("strata")
    hst.add_argument("quiver")
    hst.add_argument("dims")
    hst.add_argument("field_q", type=int)
    hst.add_argument("vertex", type=int)
    hcmp = hsubs.add_parser("compare")
    hcmp.add_argument("quiver")
    hcmp.add_argument("dimA")
    hcmp.add_argument("dimB")
    hcmp.add_argument("--q", dest="field_q", type=int, default=4)
    h.set_defaults(fn=cmd_hall)

    dd = subs.add_parser("double", help="the quotient double")
    dsubs = dd.add_subparsers(dest="double_cmd", required=True)
    dmul = dsubs.add_parser("mul")
    dmul.add_argument("left")
    dmul.add_argument("right")
    dsubs.add_parser("calibrate")
    dsubs.add_parser("verify")
    dd.set_defaults(fn=cmd_double)

    ver = subs.add_parser("verify", help="run a verification suite")
    ver.add_argument(
        "suite",
        help="f, u, ti, braid, hall, double, or all (verify- prefixes accepted)",
    )
    ver.set_defaults(fn=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
