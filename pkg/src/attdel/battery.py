"""Battery specifications: declarative lists of checks run by ``attdel battery``.

A battery file is JSON::

    {"seed": 7,
     "cases": [
       {"name": "F/H equivalence for p&q", "check": "update_equivalence",
        "left": {"gen": "F", "phi": "p & q", "agents": ["a", "b"]},
        "right": {"gen": "H", "phi": "p & q", "agents": ["a", "b"]},
        "count": 50, "models": {"max_worlds": 4, "attention_atoms": true}},
       {"name": "T1 on random SEMs", "check": "transform", "transform": "t1",
        "event": {"random": "sem"}, "events": 10, "count": 10},
       {"name": "start model", "check": "formula", "model": "start",
        "formula": "A[a]p & ~A[a]q", "expect": true},
       {"name": "update", "check": "update_bisimilar", "model": "start",
        "event": "H_pq", "target": "after_pq"}]}

Event references are workspace names or generator objects
(``{"gen": "F"|"H"|"R"|"trivial", ...}``); ``{"random": kind}`` draws
random event models.  Every case reports its seed; failures carry a
counterexample model in workspace JSON form.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import transforms
from .attention import build_F, build_H, build_R
from .equivalence import bisimilar, check_isomorphism, update_equivalence_battery
from .events import trivial_ecem
from .formula import as_attention_atoms, parse, to_text
from .io import Workspace, model_to_json
from .models import Pointed, RandomModelParams, random_model
from .randomgen import random_ecem, random_gau, random_sem
from .semantics import Evaluator, satisfies, update

__all__ = ["CaseResult", "run_battery", "run_battery_file", "transform_problem"]


@dataclass
class CaseResult:
    name: str
    ok: bool
    checked: int = 0
    seed: int | None = None
    reason: str = ""
    counterexample: dict | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"name": self.name, "ok": self.ok, "checked": self.checked, "seed": self.seed,
               "reason": self.reason}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        out.update(self.extra)
        return out


def _event(ref: Any, ws: Workspace, default_agents):
    if isinstance(ref, str):
        return ws.event_model(ref)
    gen = ref.get("gen")
    agents = ref.get("agents", default_agents)
    if gen == "F":
        return build_F(parse(ref["phi"]), agents)
    if gen == "H":
        return build_H(parse(ref["phi"]), agents)
    if gen == "R":
        return build_R([ws.parse(t) for t in ref.get("gamma", [])], agents)
    if gen == "trivial":
        return trivial_ecem(agents)
    raise ValueError(f"unknown event reference {ref!r}")


def _params(spec: dict, ws: Workspace) -> tuple[RandomModelParams, int | None]:
    universe = spec.get("universe")
    params = RandomModelParams(
        num_worlds=spec.get("num_worlds", 3),
        agents=tuple(spec.get("agents", ws.agents or ("a", "b"))),
        atoms=tuple(spec.get("atoms", ws.atoms or ("p", "q"))),
        density=spec.get("density", 0.4),
        attention_atoms=spec.get("attention_atoms", False),
        universe=tuple(ws.parse(t) for t in universe) if universe else None)
    return params, spec.get("max_worlds")


_TRANSFORMS = {"t1": "t1_sem_to_ecem", "t1p": "t1p_ecem_to_sem", "t1pp": "t1pp_gau_to_ecem"}


def transform_problem(d, pm: Pointed, which: str, ev: Evaluator | None = None,
                      translated=None) -> str | None:
    """Check ``M (x) D`` against ``M (x) T(D)`` for one pointed model.

    ``which`` names the translation: ``t1`` (SEM -> ECEM), ``t1p`` (ECEM ->
    SEM) or ``t1pp`` (GAU -> ECEM).  The expected isomorphism is the identity
    on pairs, or ``(w,e) -> (w,(e,Gamma_(w,e)))`` for ``t1p``.  Returns a
    description of the first problem, or None.  ``translated`` may supply a
    precomputed ``T(D)``.
    """
    ev = ev or Evaluator()
    td = translated if translated is not None else getattr(transforms, _TRANSFORMS[which])(d)
    m1 = ev.product(pm.model, d)
    m2 = ev.product(pm.model, td)
    if which == "t1p":
        f = transforms.gamma_bijection(d, pm.model, m1.worlds)
    else:
        f = {w: w for w in m1.worlds}
    problems = check_isomorphism(m1, m2, f)
    if problems:
        return "products not isomorphic under the expected map: " + problems[0]
    r1, r2 = update(pm, d, ev), update(pm, td, ev)
    if r1.applicable != r2.applicable:
        return f"applicability differs ({r1.applicable} vs {r2.applicable})"
    if r1.applicable and f[r1.point] != r2.point:
        return "designated product worlds do not correspond"
    return None


def _random_event(kind: str, rng: random.Random, spec: dict):
    agents = spec.get("agents", ("a", "b"))
    atoms = spec.get("atoms", ("p", "q"))
    if kind == "sem":
        return random_sem(rng, atoms, agents)
    if kind == "ecem":
        return random_ecem(rng, atoms, agents)
    if kind == "gau":
        return random_gau(rng, atoms, agents)
    raise ValueError(f"unknown random event kind {kind!r}")


def _run_case(case: dict, ws: Workspace, seed: int) -> CaseResult:
    name = case.get("name", case.get("check", "case"))
    seed = case.get("seed", seed)
    check = case.get("check")
    agents = case.get("agents", ws.agents or ["a", "b"])
    if check == "update_equivalence":
        d1 = _event(case["left"], ws, agents)
        d2 = _event(case["right"], ws, agents)
        params, max_worlds = _params(case.get("models", {}), ws)
        v = update_equivalence_battery(d1, d2, count=case.get("count", 100), params=params,
                                       seed=seed, max_worlds=max_worlds)
        return CaseResult(name, v.ok, v.checked, seed, v.reason,
                          model_to_json(v.counterexample) if v.counterexample else None)
    if check == "transform":
        rng = random.Random(seed)
        params, max_worlds = _params(case.get("models", {}), ws)
        ref = case["event"]
        n_events = case.get("events", 1)
        checked = 0
        for _ in range(n_events):
            d = (_random_event(ref["random"], rng, case) if isinstance(ref, dict) and "random" in ref
                 else _event(ref, ws, agents))
            td = getattr(transforms, _TRANSFORMS[case["transform"]])(d)
            for _ in range(case.get("count", 20)):
                s = rng.randrange(2 ** 31)
                n = rng.randint(1, max_worlds) if max_worlds else params.num_worlds
                pm = random_model(RandomModelParams(
                    num_worlds=n, agents=params.agents, atoms=params.atoms, density=rng.random(),
                    attention_atoms=params.attention_atoms, universe=params.universe, seed=s))
                checked += 1
                problem = transform_problem(d, pm, case["transform"], translated=td)
                if problem:
                    return CaseResult(name, False, checked, seed, problem, model_to_json(pm),
                                      {"event_model": str(d), "sample_seed": s})
        return CaseResult(name, True, checked, seed, "no counterexample")
    if check == "formula":
        pm = ws.model(case["model"])
        f = ws.parse(case["formula"])
        if not pm.model.is_attention_model:
            f = as_attention_atoms(f)
        got = satisfies(pm, f)
        ok = got == case.get("expect", True)
        return CaseResult(name, ok, 1, seed, f"{to_text(f)} evaluated to {got}",
                          None if ok else model_to_json(pm))
    if check == "update_bisimilar":
        pm = ws.model(case["model"])
        d = _event(case["event"], ws, agents)
        res = update(pm, d)
        if not res.applicable:
            return CaseResult(name, False, 1, seed, "update not applicable", model_to_json(pm))
        target = ws.model(case["target"])
        ok = bisimilar(res.pointed, target) is not None
        return CaseResult(name, ok, 1, seed, "bisimilar" if ok else "not bisimilar",
                          None if ok else model_to_json(res.pointed))
    raise ValueError(f"unknown check {check!r} in case {name!r}")


def run_battery(spec: dict, ws: Workspace | None = None) -> list[CaseResult]:
    ws = ws or Workspace()
    seed = spec.get("seed", 0)
    return [_run_case(case, ws, seed) for case in spec.get("cases", [])]


def run_battery_file(path: str | Path, ws: Workspace | None = None) -> list[CaseResult]:
    return run_battery(json.loads(Path(path).read_text()), ws)
