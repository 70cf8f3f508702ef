"""Command line front end.

Exit codes: 0 computed and positive, 1 computed with a negative verdict or a failed
expectation, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import dualgraph, kernels
from .curves import CurveFileError, parse_curve_file
from .effmodel import effective_model_fiber, fixed_scheme_fiber
from .kummer import (InconsistentInputError, check_admissible, check_pair_admissible, predict_rdp,
                     relevant_primes, resolution_checklist)
from .localtate import tate_algorithm
from .numring.primes import primes_above
from .verify import B_SUBSCRIPT_NOTE, DELTA_NOTE, run_suite
from .weierstrass import IntegralityError, key_identity


class InputError(Exception):
    pass


def _primes(model, which: str, only_two: bool = False):
    primes = primes_above(model.ring, 2) if only_two else relevant_primes(model)
    if which == "auto":
        return primes
    try:
        idx = int(which)
    except ValueError:
        raise InputError(f"--prime must be 'auto' or an index, got {which!r}") from None
    if not 0 <= idx < len(primes):
        raise InputError(f"prime index {idx} out of range (0..{len(primes) - 1}: "
                         f"{', '.join(P.label for P in primes)})")
    return [primes[idx]]


def _curve(path):
    return parse_curve_file(path)


def _pair(args):
    r1, r2 = _curve(args.first), _curve(args.second)
    if r1.ring != r2.ring:
        raise InputError(f"{r1.identifier} and {r2.identifier} are defined over different rings")
    return r1, r2


# subcommands: each returns (results, notes, ok) --------------------------------------

def cmd_invariants(args):
    results = []
    for path in args.curves:
        rec = _curve(path)
        inv = rec.model.invariants
        results.append({
            "curve": rec.identifier,
            "field": rec.ring.to_json(),
            "coefficients": rec.model.to_json(),
            **{k: getattr(inv, k).to_json() for k in ("b2", "b4", "b6", "b8", "c4", "c6", "disc")},
            "j": {"numerator": inv.j[0].to_json(), "denominator": inv.j[1].to_json()},
            "key_identity": key_identity(rec.model).to_json(),
        })
    return results, [], True


def cmd_tate(args):
    results = []
    for path in args.curves:
        rec = _curve(path)
        for P in _primes(rec.model, args.prime):
            results.append({"curve": rec.identifier, **tate_algorithm(rec.model, P).to_json()})
    return results, [DELTA_NOTE], True


def cmd_effmodel(args):
    results = []
    for path in args.curves:
        rec = _curve(path)
        for P in _primes(rec.model, args.prime, only_two=True):
            M = tate_algorithm(rec.model, P).minimal_model
            results.append({"curve": rec.identifier, "effective_model": effective_model_fiber(M, P, False).to_json(),
                            "fixed_scheme": fixed_scheme_fiber(M, P, False).to_json()})
    return results, [], True


def cmd_admissible(args):
    results, notes, ok = [], [], True
    for path in args.curves:
        rec = _curve(path)
        rep = check_admissible(rec.model)
        ok = ok and rep.verdict
        results.append({"curve": rec.identifier, **rep.to_json()})
        if rec.ring.kind == "quadratic" and rec.ring.m == -2 and B_SUBSCRIPT_NOTE not in notes:
            notes.append(B_SUBSCRIPT_NOTE)
    return results, notes, ok


def cmd_pair(args):
    r1, r2 = _pair(args)
    rep = check_pair_admissible(r1.model, r2.model)
    return [{"curves": [r1.identifier, r2.identifier], **rep.to_json()}], [], rep.verdict


def cmd_predict(args):
    if args.curves:
        if len(args.curves) != 2:
            raise InputError("predict takes either no curve files or exactly two")
        r1, r2 = _curve(args.curves[0]), _curve(args.curves[1])
        if r1.ring != r2.ring:
            raise InputError(f"{r1.identifier} and {r2.identifier} are defined over different rings")
        results = []
        for P in primes_above(r1.ring, 2):
            M1 = tate_algorithm(r1.model, P).minimal_model
            M2 = tate_algorithm(r2.model, P).minimal_model
            G = effective_model_fiber(M1, P, False)
            comps = (fixed_scheme_fiber(M1, P, False).components, fixed_scheme_fiber(M2, P, False).components)
            cfg = predict_rdp(2, G.fiber_type, fix_components=comps)
            results.append({"prime": P.label, "fiber_type": G.fiber_type, "fixed_components": list(comps),
                            **cfg.to_json()})
        return results, [], True
    if args.fiber_type is None:
        raise InputError("predict needs --fiber-type (or two curve files)")
    comps = tuple(args.fix_components) if args.fix_components else None
    cfg = predict_rdp(args.p, args.fiber_type, n=args.n, fix_components=comps)
    return [{"p": args.p, "fiber_type": args.fiber_type, **cfg.to_json()}], [], True


def cmd_checklist(args):
    r1, r2 = _pair(args)
    rep = check_pair_admissible(r1.model, r2.model)
    if not rep.verdict:
        return [{"curves": [r1.identifier, r2.identifier], "passed": False, "failures": rep.reasons}], \
            ["the checklist needs an admissible pair"], False
    out = resolution_checklist(r1.model, r2.model)
    return [{"curves": [r1.identifier, r2.identifier], **out.to_json()}], [], out.passed


def cmd_lattice(args):
    results = []
    if args.graph:
        try:
            g = dualgraph.dynkin(args.graph[0], int(args.graph[1:]))
        except (ValueError, IndexError) as exc:
            raise InputError(f"bad graph {args.graph!r}: {exc}") from None
        entry = {"graph": args.graph.upper(), "matrix": g.matrix(),
                 "negative_definite": dualgraph.is_negative_definite(g),
                 "leading_minors": dualgraph.leading_minors(g.matrix())}
        if args.fundamental_cycle:
            entry["fundamental_cycle"] = dualgraph.fundamental_cycle(g).to_json()
        results.append(entry)
    if args.trace:
        try:
            tr = dualgraph.partial_resolution_trace(args.trace)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        results.append({"trace": tr.to_json()})
    if not results:
        raise InputError("lattice needs --graph and/or --trace")
    return results, [], True


def cmd_verify(args):
    exps, notes = run_suite(args.filter, jobs=args.jobs)
    notes = notes + [f"kernel backend: {kernels.BACKEND}"]
    return [e.to_json() for e in exps], notes, all(e.ok for e in exps)


# plumbing -----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--prime", default="auto", help="'auto' (all relevant primes) or an index")

    parser = argparse.ArgumentParser(prog="kummerlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (("invariants", "b, c invariants, discriminant, j"),
                           ("tate", "Tate's algorithm at the relevant primes"),
                           ("effmodel", "effective model and fixed-scheme fiber at the primes above 2"),
                           ("admissible", "single-curve admissibility")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("curves", nargs="+")
    for name, helptext in (("pair", "pair admissibility"), ("checklist", "resolution checklist for a pair")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("first")
        p.add_argument("second")
    p = sub.add_parser("predict", parents=[common], help="rational double points of a fiberwise quotient")
    p.add_argument("curves", nargs="*")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--fiber-type", choices=("ConstantZ2", "Mu2", "Alpha2"))
    p.add_argument("--n", type=int)
    p.add_argument("--fix-components", type=int, nargs=2)
    p = sub.add_parser("lattice", parents=[common], help="Dynkin graphs, fundamental cycles, resolution traces")
    p.add_argument("--graph")
    p.add_argument("--fundamental-cycle", action="store_true")
    p.add_argument("--trace")
    p = sub.add_parser("verify-paper", parents=[common], help="run the regression suite")
    p.add_argument("--filter")
    p.add_argument("--jobs", type=int, default=1)
    return parser


COMMANDS = {
    "invariants": cmd_invariants, "tate": cmd_tate, "effmodel": cmd_effmodel, "admissible": cmd_admissible,
    "pair": cmd_pair, "predict": cmd_predict, "checklist": cmd_checklist, "lattice": cmd_lattice,
    "verify-paper": cmd_verify,
}


def _text(report: dict) -> str:
    lines = []
    if report["command"] == "verify-paper":
        for r in report["results"]:
            detail = f"  ({r['detail']})" if r["detail"] and not r["pass"] else ""
            lines.append(f"{'PASS' if r['pass'] else 'FAIL'}  {r['group']}: {r['name']}{detail}")
    else:
        for r in report["results"]:
            lines.append(json.dumps(r, sort_keys=True, ensure_ascii=False))
    for n in report["notes"]:
        lines.append(f"note: {n}")
    s = report["summary"]
    lines.append(f"{s['passed']}/{s['total']} ok" if "passed" in s else f"{s['results']} result(s)")
    lines.append("PASS" if report["pass"] else "FAIL")
    return "\n".join(lines)


def run(argv=None) -> tuple[dict | None, int, str]:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        results, notes, ok = COMMANDS[args.command](args)
    except (CurveFileError, InputError, InconsistentInputError, IntegralityError) as exc:
        return None, 2, f"kummerlab {args.command}: error: {exc}"
    summary = {"results": len(results)}
    if args.command == "verify-paper":
        summary = {"total": len(results), "passed": sum(r["pass"] for r in results),
                   "failed": sum(not r["pass"] for r in results)}
    report = {"command": args.command, "results": results, "notes": notes, "summary": summary, "pass": ok}
    if args.format == "json":
        text = json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)
    else:
        text = _text(report)
    return report, 0 if ok else 1, text


def main(argv=None) -> int:
    report, code, text = run(argv)
    print(text, file=sys.stdout if report is not None else sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
