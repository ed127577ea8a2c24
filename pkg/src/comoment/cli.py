"""Command line front end.

Exit codes: 0 ok / exists, 2 validation or input failure, 3 obstructed,
4 inconclusive at the coefficient bound, 5 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import applications as app
from . import moment as mo
from .cartan import nondegeneracy_check
from .foundation import format_q, to_q
from .liealg import validate_lie_algebra
from .problem import (
    ParseError, ProblemError, chain_to_json, comoment_from_json, comoment_to_json,
    dumps, form_terms_to_json, load_problem, loads,
)

EXIT_OK, EXIT_INVALID, EXIT_OBSTRUCTED, EXIT_INCONCLUSIVE, EXIT_VERIFY = 0, 2, 3, 4, 5


class Failure(Exception):
    def __init__(self, code: int, report: dict):
        super().__init__(report.get("error", ""))
        self.code = code
        self.report = report


def _q_rows(matrix) -> list:
    return [[format_q(c) for c in row] for row in matrix]


def _form(form) -> list:
    return form_terms_to_json(form)


def _parse_point(text: str | None):
    if not text:
        return None
    try:
        return tuple(to_q(s) for s in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise Failure(EXIT_INVALID, {"error": f"bad --point: {exc}"}) from exc


def _load(args):
    try:
        P = load_problem(args.problem)
    except ParseError as exc:
        raise Failure(EXIT_INVALID, {"error": "parse error", "line": exc.line, "column": exc.column,
                                     "message": str(exc)}) from exc
    except ProblemError as exc:
        raise Failure(EXIT_INVALID, {"error": "semantic error", "path": exc.path, "message": str(exc)}) from exc
    except OSError as exc:
        raise Failure(EXIT_INVALID, {"error": f"cannot read {args.problem}: {exc.strerror}"}) from exc
    if args.max_degree is not None:
        P.options["max_coeff_degree"] = args.max_degree
    return P


def _validation(P, point=None) -> dict:
    jac = validate_lie_algebra(P.algebra)
    points = [point] if point is not None else P.sample_points
    try:
        verdicts = nondegeneracy_check(P.omega, points)
    except ValueError as exc:
        raise Failure(EXIT_INVALID, {"error": "semantic error", "path": "options.sample_points",
                                     "message": str(exc)}) from exc
    out = {
        "lie_algebra": {"ok": jac.ok, "message": jac.message},
        "nondegeneracy": [{"point": [format_q(x) for x in v.point], "rank": v.rank,
                           "n_plectic": v.nondegenerate} for v in verdicts],
    }
    if jac.ok:
        act = mo.validate_action(P.action, P.omega)
        out["action"] = {"ok": act.ok, "closed": act.closed, "problems": act.describe()}
    else:
        out["lie_algebra"]["triple"] = list(jac.triple) if jac.triple else None
        out["action"] = {"ok": False, "closed": None, "problems": ["skipped: invalid Lie algebra"]}
    return out


def _require_valid(P, point=None) -> dict:
    v = _validation(P, point)
    if not (v["lie_algebra"]["ok"] and v["action"]["ok"]):
        raise Failure(EXIT_INVALID, {"error": "validation failed", "validation": v})
    return v


def _obstruction_json(report: mo.ObstructionReport) -> dict:
    pc = report.point_class
    return {
        "classes": [{"k": e.k, "dim_H_g": e.dim_ce, "dim_H_dR": e.dim_dr, "h": _q_rows(e.matrix), "zero": e.zero}
                    for e in report.entries],
        "exists": report.exists,
        "point_class": None if pc is None else {
            "point": [format_q(x) for x in pc.point],
            "cochain": chain_to_json(pc.cochain),
            "coordinates": [format_q(c) for c in pc.coordinates],
            "zero": pc.zero,
        },
    }


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_validate(args) -> tuple:
    P = _load(args)
    v = _validation(P, _parse_point(args.point))
    ok = v["lie_algebra"]["ok"] and v["action"]["ok"]
    return (EXIT_OK if ok else EXIT_INVALID), {"command": "validate", "problem": P.name, "validation": v, "ok": ok}


def cmd_obstruction(args) -> tuple:
    P = _load(args)
    _require_valid(P)
    g = mo.build_g(P.action, P.omega, P.n)
    report = mo.decompose_obstruction(g, _parse_point(args.point))
    out = {"command": "obstruction", "problem": P.name, "n": P.n, "obstruction": _obstruction_json(report)}
    if not report.exists:
        return EXIT_OBSTRUCTED, out
    try:
        mo.solve_comoment(P.action, P.omega, P.n, P.options.get("max_coeff_degree"))
    except mo.InconclusiveError as exc:
        out["inconclusive_bound"] = exc.bound
        return EXIT_INCONCLUSIVE, out
    return EXIT_OK, out


def cmd_comoment(args) -> tuple:
    P = _load(args)
    _require_valid(P)
    out = {"command": "comoment", "problem": P.name, "n": P.n}
    try:
        res = mo.solve_comoment(P.action, P.omega, P.n, P.options.get("max_coeff_degree"), seed=args.seed)
    except mo.InconclusiveError as exc:
        out.update(inconclusive_bound=exc.bound, obstruction=_obstruction_json(exc.report))
        return EXIT_INCONCLUSIVE, out
    if not res.exists:
        out["obstruction"] = _obstruction_json(res.report)
        out["exists"] = False
        return EXIT_OBSTRUCTED, out
    out["exists"] = True
    out["comoment"] = comoment_to_json(res)
    _write(args.out, comoment_to_json(res))
    return EXIT_OK, out


def _write(path, data):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dumps(data))


def cmd_verify(args) -> tuple:
    P = _load(args)
    _require_valid(P)
    try:
        with open(args.comoment, encoding="utf-8") as fh:
            F = comoment_from_json(P, loads(fh.read()))
    except OSError as exc:
        raise Failure(EXIT_INVALID, {"error": f"cannot read {args.comoment}: {exc.strerror}"}) from exc
    except ParseError as exc:
        raise Failure(EXIT_INVALID, {"error": "parse error", "line": exc.line, "column": exc.column,
                                     "message": str(exc)}) from exc
    except ProblemError as exc:
        raise Failure(EXIT_INVALID, {"error": "semantic error", "path": exc.path, "message": str(exc)}) from exc
    report = mo.verify_morphism(F)
    out = {"command": "verify", "problem": P.name, "ok": report.ok,
           "residuals": [{"label": lab, "bidegree": list(bd), "value": repr(val)} for lab, bd, val in report.residuals]}
    return (EXIT_OK if report.ok else EXIT_VERIFY), out


def cmd_weak(args) -> tuple:
    P = _load(args)
    _require_valid(P)
    res = app.weak_comoment(P.action, P.omega)
    out = {"command": "weak", "problem": P.name, "exists": res.exists}
    if not res.exists:
        out["classes"] = [[format_q(c) for c in row] for row in res.classes]
        return EXIT_OBSTRUCTED, out
    out["j"] = [_form(f) for f in res.forms]
    out["j_text"] = [P.space.form_str(f) for f in res.forms]
    cov = app.covariant_obstruction(P.action, P.omega, res)
    out["covariant"] = {"h2": _q_rows(cov.h2), "exists": cov.exists}
    return EXIT_OK, out


def cmd_exact(args) -> tuple:
    P = _load(args)
    _require_valid(P)
    if P.eta is None:
        raise Failure(EXIT_INVALID, {"error": "semantic error", "path": "eta", "message": "eta: missing"})
    try:
        F = app.exact_comoment(P.action, P.eta, P.omega)
    except app.PotentialError as exc:
        rep = {"error": str(exc)}
        if exc.generator is not None:
            rep["generator"] = exc.generator + 1
        raise Failure(EXIT_INVALID, rep) from exc
    out = {"command": "exact", "problem": P.name, "comoment": comoment_to_json(F),
           "universal": [{"J": _form(e.J), "invariant": e.invariant, "matches": e.matches}
                         for e in app.universal_momentum_report(P.eta, P.action.images, F)]}
    _write(args.out, comoment_to_json(F))
    return EXIT_OK, out


def cmd_multimoment(args) -> tuple:
    P = _load(args)
    _require_valid(P)
    res = app.multimoment_construct(P.action, P.omega, P.n)
    out = {"command": "multimoment", "problem": P.name, "n": P.n, "exists": res.exists}
    if not res.exists:
        out["failed_class"] = {"k": res.k, "h": _q_rows(res.classes)}
        return EXIT_OBSTRUCTED, out
    check = app.multimoment_verify(res)
    out["P_g"] = [chain_to_json(c) for c in res.basis]
    out["vbar"] = [_form(v) for v in res.values]
    out["vbar_text"] = [P.space.form_str(v) for v in res.values]
    out["verified"] = check.ok
    return (EXIT_OK if check.ok else EXIT_VERIFY), out


COMMANDS = {
    "validate": cmd_validate, "obstruction": cmd_obstruction, "comoment": cmd_comoment,
    "verify": cmd_verify, "weak": cmd_weak, "exact": cmd_exact, "multimoment": cmd_multimoment,
}


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _human(report: dict) -> str:
    lines = []
    for key in sorted(report):
        lines.extend(_human_item(key, report[key], 0))
    return "\n".join(lines) + "\n"


def _human_item(key, value, depth: int) -> list:
    pad = "  " * depth
    if isinstance(value, dict):
        out = [f"{pad}{key}:"]
        for k in sorted(value):
            out.extend(_human_item(k, value[k], depth + 1))
        return out
    if isinstance(value, list) and value and all(isinstance(v, (dict, list)) for v in value):
        out = [f"{pad}{key}:"]
        for i, v in enumerate(value):
            out.extend(_human_item(f"[{i}]", v, depth + 1))
        return out
    return [f"{pad}{key}: {json.dumps(value, sort_keys=True)}"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="comoment", description="Exact homotopy co-moment map computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, extra=None):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("problem", help="problem file (JSON)")
        if extra:
            extra(p)
        p.add_argument("--max-degree", type=int, default=None, help="coefficient degree bound for the solver")
        p.add_argument("--point", default=None, help="evaluation point as 'x,y,...'")
        p.add_argument("--out", default=None, help="write the artifact to this file")
        p.add_argument("--format", choices=["human", "machine"], default="human")
        p.add_argument("--timing", action="store_true", help="include wall-clock timing (not deterministic)")
        p.add_argument("--seed", type=int, default=None, help="shuffle solver columns with this seed")
        return p

    add("validate", "check the Lie algebra, omega and the action")
    add("obstruction", "obstruction classes h_k and the point class")
    add("comoment", "solve for a homotopy co-moment map")
    add("verify", "verify a co-moment file", lambda p: p.add_argument("comoment", help="co-moment file (JSON)"))
    add("weak", "weak co-moment and the covariant class h_2")
    add("exact", "co-moment from the invariant potential eta")
    add("multimoment", "multi-moment map on P_g")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        code, report = COMMANDS[args.command](args)
    except Failure as exc:
        code, report = exc.code, dict(exc.report, command=args.command)
    if args.timing:
        report["seconds"] = round(time.perf_counter() - start, 6)
    report["exit_code"] = code
    if args.format == "machine":
        sys.stdout.write(dumps(report))
    else:
        sys.stdout.write(_human(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
