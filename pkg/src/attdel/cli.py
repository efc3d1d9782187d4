"""Command line interface: ``attdel <command> ...``.

Exit status is 0 exactly when the command's verdict is positive (formula
true, update applicable, models bisimilar/isomorphic, formula satisfiable,
battery passed); 2 signals usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .attention import (AttendingTo, AttentionIntrospection, Commutativity,
                        ConjunctiveClosure, Ignoring, SubformulaClosure,
                        SublanguageClosure, build_F, build_H, build_R,
                        check_principle)
from .battery import run_battery_file
from .dot import to_dot
from .equivalence import bisimilar, isomorphic
from .formula import (ParseError, as_attention_atoms, formula_size, label,
                      subformulas, to_text)
from .io import (Workspace, WorkspaceError, dumps, event_model_to_json,
                 load_workspace, model_to_json)
from .models import Pointed, validate
from .sat import k_satisfiable, reduce
from .semantics import Evaluator, RegimeError, update
from .transforms import t1_sem_to_ecem, t1p_ecem_to_sem, t1pp_gau_to_ecem

__all__ = ["main", "build_parser"]


class CliError(Exception):
    pass


def _out(args, payload: dict, text: str) -> None:
    if args.json:
        print(dumps(payload))
    else:
        print(text)


def _workspace(args) -> Workspace:
    if not args.workspace:
        return Workspace()
    return load_workspace(args.workspace)


def _formula_for(ws: Workspace, text: str, pm: Pointed | None = None):
    f = ws.parse(text)
    if pm is not None and not pm.model.is_attention_model:
        f = as_attention_atoms(f)
    return f


# --------------------------------------------------------------------------
# commands


def cmd_check(args) -> int:
    ws = _workspace(args)
    pm = ws.model(args.model)
    diags = validate(pm, ws.agents or None, ws.atoms or None)
    if diags:
        raise CliError("invalid model: " + "; ".join(diags))
    f = _formula_for(ws, args.formula, pm)
    ev = Evaluator()
    result = pm.point in ev.extension(pm.model, f)
    trace = []
    seen = set()
    for g in subformulas(f):
        if g in seen:
            continue
        seen.add(g)
        ext = ev.extension(pm.model, g)
        trace.append({"formula": to_text(g),
                      "worlds": [label(w) for w in pm.model.worlds if w in ext]})
    lines = [f"{'true' if result else 'false'}: {to_text(f)} at {label(pm.point)}"]
    if args.trace:
        lines += [f"  {t['formula']}: {{{', '.join(t['worlds'])}}}" for t in trace]
    _out(args, {"result": result, "formula": to_text(f), "point": label(pm.point),
                "trace": trace}, "\n".join(lines))
    return 0 if result else 1


def cmd_update(args) -> int:
    ws = _workspace(args)
    pm = ws.model(args.model)
    d = ws.event_model(args.event)
    res = update(pm, d)
    if not res.applicable:
        msg = f"{args.event} is not applicable in {args.model} at {label(pm.point)}"
        _out(args, {"applicable": False, "message": msg}, msg)
        return 1
    doc = model_to_json(res.pointed)
    if args.output:
        Path(args.output).write_text(dumps(doc) + "\n")
        _out(args, {"applicable": True, "output": args.output,
                    "worlds": len(res.model.worlds)},
             f"wrote {len(res.model.worlds)} worlds to {args.output}")
    else:
        print(dumps(doc))
    return 0


def cmd_bisim(args) -> int:
    ws = _workspace(args)
    m1, m2 = ws.model(args.left), ws.model(args.right)
    w = bisimilar(m1, m2)
    pairs = sorted([label(a), label(b)] for a, b in w.relation) if w else None
    _out(args, {"bisimilar": w is not None, "relation": pairs},
         "bisimilar" if w else "not bisimilar")
    return 0 if w else 1


def cmd_iso(args) -> int:
    ws = _workspace(args)
    m1, m2 = ws.model(args.left), ws.model(args.right)
    w = isomorphic(m1.model, m2.model, bound=args.bound)
    mapping = {label(a): label(b) for a, b in w.bijection.items()} if w else None
    _out(args, {"isomorphic": w is not None, "bijection": mapping},
         "isomorphic" if w else "not isomorphic")
    return 0 if w else 1


def cmd_transform(args) -> int:
    ws = _workspace(args)
    d = ws.event_model(args.event)
    if args.source == "gau" or d.kind == "gau":
        if d.kind != "gau":
            raise CliError(f"{args.event} is not a generalized arrow update")
        out = t1pp_gau_to_ecem(d)
        if args.to == "sem":
            out = t1p_ecem_to_sem(out)
    elif args.to == "ecem":
        if d.kind != "sem":
            raise CliError(f"{args.event} is a {d.kind}; --to ecem expects a standard event model")
        out = t1_sem_to_ecem(d)
    else:
        if d.kind != "ecem":
            raise CliError(f"{args.event} is a {d.kind}; --to sem expects an edge-conditioned model")
        out = t1p_ecem_to_sem(d)
    print(dumps(event_model_to_json(out)))
    return 0


def cmd_attention(args) -> int:
    ws = _workspace(args)
    agents = args.agents.split(",") if args.agents else (ws.agents or ["a", "b"])
    if args.kind in ("F", "H"):
        phi = ws.parse(args.phi or "T")
        d = (build_F if args.kind == "F" else build_H)(phi, agents)
    else:
        d = build_R([ws.parse(t) for t in args.gamma], agents)
    print(dumps(event_model_to_json(d)))
    return 0


def cmd_size(args) -> int:
    ws = _workspace(args)
    if args.target in ws.events:
        d = ws.events[args.target]
        n, what = d.size(), f"{d.kind} {args.target}"
    else:
        f = ws.parse(args.target)
        n, what = formula_size(f), to_text(f)
    _out(args, {"size": n, "target": what}, f"{n}")
    return 0


def cmd_sat(args) -> int:
    ws = _workspace(args)
    f = ws.parse(args.formula)
    static = reduce(f)
    v = k_satisfiable(static)
    payload = {"satisfiable": v.satisfiable,
               "witness": model_to_json(v.witness) if v.witness else None}
    _out(args, payload, ("satisfiable" if v.satisfiable else "unsatisfiable")
         + (("\n" + dumps(payload["witness"])) if v.witness and args.witness else ""))
    return 0 if v.satisfiable else 1


def cmd_reduce(args) -> int:
    ws = _workspace(args)
    f = ws.parse(args.formula)
    r = reduce(f, simplify=args.simplify)
    _out(args, {"reduced": to_text(r), "size": formula_size(r)}, to_text(r))
    return 0


def cmd_export_dot(args) -> int:
    ws = _workspace(args)
    if args.name in ws.models:
        sys.stdout.write(to_dot(ws.models[args.name], args.name))
    elif args.name in ws.events:
        sys.stdout.write(to_dot(ws.events[args.name], args.name))
    else:
        raise CliError(f"unknown model or event model {args.name!r}")
    return 0


def cmd_battery(args) -> int:
    ws = _workspace(args)
    results = run_battery_file(args.spec, ws)
    ok = all(r.ok for r in results)
    if args.json:
        print(dumps({"ok": ok, "cases": [r.to_json() for r in results]}))
    else:
        for r in results:
            print(f"{'PASS' if r.ok else 'FAIL'} {r.name} (checked {r.checked}, seed {r.seed})"
                  + ("" if r.ok else f": {r.reason}"))
            if not r.ok and r.counterexample is not None:
                print("  counterexample: " + json.dumps(r.counterexample))
        print(f"{sum(r.ok for r in results)}/{len(results)} cases passed")
    return 0 if ok else 1


_PRINCIPLES = {
    "conjunctive-closure": lambda a: ConjunctiveClosure(),
    "commutativity": lambda a: Commutativity(),
    "sublanguage-closure": lambda a: SublanguageClosure(),
    "subformula-closure": lambda a: SubformulaClosure(),
    "introspection": lambda a: AttentionIntrospection(),
    "ignoring": lambda a: Ignoring(*a),
    "attending-to": lambda a: AttendingTo(*a),
}


def cmd_principle(args) -> int:
    ws = _workspace(args)
    pm = ws.model(args.model)
    universe = None
    if args.universe:
        universe = [ws.parse(t) for t in json.loads(Path(args.universe).read_text())]
    agents = args.agents.split(",") if args.agents else []
    if args.principle in ("ignoring", "attending-to") and len(agents) != 2:
        raise CliError(f"{args.principle} needs --agents subject,other")
    violations = check_principle(pm.model, _PRINCIPLES[args.principle](agents), universe)
    _out(args, {"ok": not violations, "violations": [str(v) for v in violations]},
         "ok" if not violations else "\n".join(str(v) for v in violations))
    return 0 if not violations else 1


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-w", "--workspace", help="workspace JSON file or directory")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized commands")

    p = argparse.ArgumentParser(prog="attdel", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="evaluate a formula at a model's point")
    s.add_argument("model")
    s.add_argument("formula")
    s.add_argument("--trace", action="store_true", help="print subformula extensions")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("update", parents=[common], help="product update of a model")
    s.add_argument("model")
    s.add_argument("event")
    s.add_argument("-o", "--output", help="write the updated model here")
    s.set_defaults(func=cmd_update)

    s = sub.add_parser("bisim", parents=[common], help="bisimilarity of two pointed models")
    s.add_argument("left")
    s.add_argument("right")
    s.set_defaults(func=cmd_bisim)

    s = sub.add_parser("iso", parents=[common], help="isomorphism of two models")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("--bound", type=int, default=12, help="largest model size searched")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("transform", parents=[common], help="translate an event model")
    s.add_argument("event")
    s.add_argument("--to", choices=["ecem", "sem"], default="ecem")
    s.add_argument("--from", dest="source", choices=["sem", "ecem", "gau"])
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("attention", help="attention event models")
    asub = s.add_subparsers(dest="attention_command", required=True)
    g = asub.add_parser("gen", parents=[common], help="generate F, H or R")
    g.add_argument("--kind", choices=["F", "H", "R"], required=True)
    g.add_argument("--phi", help="conjunction of literals (F, H)")
    g.add_argument("--gamma", nargs="*", default=[], help="revealed formulas (R)")
    g.add_argument("--agents", help="comma separated agents")
    g.set_defaults(func=cmd_attention)

    s = sub.add_parser("size", parents=[common], help="size of an event model or formula")
    s.add_argument("target")
    s.set_defaults(func=cmd_size)

    s = sub.add_parser("sat", parents=[common], help="satisfiability (after reduction)")
    s.add_argument("formula")
    s.add_argument("--witness", action="store_true", help="print the witness model")
    s.set_defaults(func=cmd_sat)

    s = sub.add_parser("reduce", parents=[common], help="eliminate dynamic modalities")
    s.add_argument("formula")
    s.add_argument("--simplify", action="store_true", help="apply T-absorption")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("export-dot", parents=[common], help="Graphviz export")
    s.add_argument("name")
    s.set_defaults(func=cmd_export_dot)

    s = sub.add_parser("battery", parents=[common], help="run a battery specification")
    s.add_argument("spec")
    s.set_defaults(func=cmd_battery)

    s = sub.add_parser("principle", parents=[common], help="check an attention principle")
    s.add_argument("model")
    s.add_argument("principle", choices=sorted(_PRINCIPLES))
    s.add_argument("--universe", help="JSON list of formulas for universe-relative principles")
    s.add_argument("--agents", help="subject,other for ignoring / attending-to")
    s.set_defaults(func=cmd_principle)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, WorkspaceError, ParseError, RegimeError, ValueError,
            FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
