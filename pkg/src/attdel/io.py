"""JSON workspace format.

A workspace is one JSON document (or a directory of them, merged)::

    {"agents": ["a", "b"], "atoms": ["p", "q"],
     "models": {"M": {"worlds": [{"id": "w", "val": ["p", "Att[a]p"],
                                  "att": {"a": ["p"]}}],
                      "rel": {"a": [["w", "w"]]}, "point": "w"}},
     "events": {"H": {"kind": "ecem", "events": ["T", "p"],
                      "pre": {"T": "T", "p": "p"},
                      "edges": {"a": [{"from": "p", "src": "Att[a]p",
                                       "to": "p", "tgt": "Att[a]p"}]},
                      "designated": ["p"]}},
     "formulas": {"ex1": "A[a]p & ~A[a]q"}}

A model containing an ``att`` field in any world is an attention model.
SEM edges are ``{"from", "to"}`` objects or ``[from, to]`` pairs; GAU
``events`` are the outcomes and edges carry source/target conditions.
Event conditions may refer to other event models of the workspace.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .events import (ConditionedEdge, EdgeConditionedEventModel,
                     GeneralizedArrowUpdate, StandardEventModel)
from .formula import Atom, AttAtom, Formula, ParseError, label, parse, to_text
from .models import AttentionModel, KripkeModel, Pointed

__all__ = ["Workspace", "WorkspaceError", "load_workspace", "model_to_json",
           "event_model_to_json", "model_from_json", "dumps"]


class WorkspaceError(ValueError):
    """Unresolvable or malformed workspace content."""


@dataclass
class Workspace:
    agents: list[str] = field(default_factory=list)
    atoms: list[str] = field(default_factory=list)
    models: dict[str, Pointed] = field(default_factory=dict)
    events: dict[str, Any] = field(default_factory=dict)
    formulas: dict[str, str] = field(default_factory=dict)

    def parse(self, text: str, tag=None) -> Formula:
        """Parse a formula against the workspace's declarations and event models."""
        if text in self.formulas:
            text = self.formulas[text]
        return parse(text, tag, events=self.events,
                     agents=self.agents or None, atoms=self.atoms or None)

    def model(self, name: str) -> Pointed:
        try:
            return self.models[name]
        except KeyError:
            raise WorkspaceError(f"unknown model {name!r}; known: {sorted(self.models)}") from None

    def event_model(self, name: str):
        try:
            return self.events[name]
        except KeyError:
            raise WorkspaceError(f"unknown event model {name!r}; known: {sorted(self.events)}") from None


def load_workspace(path: str | Path) -> Workspace:
    """Load a workspace from a JSON file or a directory of JSON files."""
    path = Path(path)
    if path.is_dir():
        docs = [json.loads(p.read_text()) for p in sorted(path.glob("*.json"))]
    else:
        docs = [json.loads(path.read_text())]
    return workspace_from_json(docs)


def workspace_from_json(docs: list[dict] | dict) -> Workspace:
    if isinstance(docs, dict):
        docs = [docs]
    ws = Workspace()
    raw_events: dict[str, dict] = {}
    raw_models: dict[str, dict] = {}
    for doc in docs:
        for a in doc.get("agents", []):
            if a not in ws.agents:
                ws.agents.append(a)
        for p in doc.get("atoms", []):
            if p not in ws.atoms:
                ws.atoms.append(p)
        for kind, target in (("events", raw_events), ("models", raw_models),
                             ("formulas", ws.formulas)):
            for name, body in doc.get(kind, {}).items():
                if name in target or (kind != "formulas" and (name in raw_events or name in raw_models)):
                    raise WorkspaceError(f"duplicate name {name!r}")
                target[name] = body
    _resolve_events(ws, raw_events)
    for name, body in raw_models.items():
        ws.models[name] = model_from_json(body, lambda t: _parse_in(ws, t, name))
    return ws


def _parse_in(ws: Workspace, text: str, where: str) -> Formula:
    try:
        return parse(text, None, events=ws.events, agents=ws.agents or None, atoms=ws.atoms or None)
    except ParseError as exc:
        raise WorkspaceError(f"{where}: cannot parse {text!r}: {exc}") from None


def _resolve_events(ws: Workspace, raw: dict[str, dict]) -> None:
    """Build event models in dependency order (conditions may mention others)."""
    state: dict[str, str] = {}

    def refs(body: dict) -> set[str]:
        texts = list(body.get("pre", {}).values())
        for edges in body.get("edges", {}).values():
            for e in edges:
                if isinstance(e, dict):
                    texts += [e.get("src", "T"), e.get("tgt", "T")]
        out = set()
        for t in texts:
            for other in raw:
                if f"[@{other}:" in t or f"[@{other}]" in t:
                    out.add(other)
        return out

    def build(name: str) -> None:
        if state.get(name) == "done":
            return
        if state.get(name) == "busy":
            raise WorkspaceError(f"cyclic reference through event model {name!r}")
        state[name] = "busy"
        for other in sorted(refs(raw[name])):
            build(other)
        ws.events[name] = event_model_from_json(raw[name], lambda t: _parse_in(ws, t, name), name)
        state[name] = "done"

    for name in raw:
        build(name)


def _world_id(x: Any):
    return tuple(_world_id(y) for y in x) if isinstance(x, list) else x


def model_from_json(body: dict, parse_formula=None) -> Pointed:
    pf = parse_formula or (lambda t: parse(t))
    worlds, val, att = [], {}, {}
    has_att = False
    for wd in body["worlds"]:
        w = _world_id(wd["id"])
        worlds.append(w)
        entries = set()
        for x in wd.get("val", []):
            f = pf(x)
            if not isinstance(f, (Atom, AttAtom)):
                raise WorkspaceError(f"valuation entry {x!r} at {w} is not an atom")
            entries.add(f)
        val[w] = entries
        if "att" in wd:
            has_att = True
            for a, forms in wd["att"].items():
                att[(a, w)] = {pf(t) for t in forms}
    rel = {a: {(_world_id(p[0]), _world_id(p[1])) for p in pairs}
           for a, pairs in body.get("rel", {}).items()}
    for a in body.get("agents", []):
        rel.setdefault(a, set())
    if has_att:
        m = AttentionModel(worlds=tuple(worlds), rel=rel, val=val, att=att)
    else:
        m = KripkeModel(worlds=tuple(worlds), rel=rel, val=val)
    point = _world_id(body.get("point", worlds[0] if worlds else None))
    return Pointed(m, point)


def event_model_from_json(body: dict, parse_formula=None, name: str = ""):
    pf = parse_formula or (lambda t: parse(t))
    kind = body.get("kind")
    events = [_world_id(e) for e in body.get("events", [])]
    by_label = {label(e): e for e in events}

    def ref(x):  # event references may be written as ids or as printed labels
        x = _world_id(x)
        return by_label.get(x, x) if isinstance(x, str) else x
    designated = [ref(e) for e in body.get("designated", [])]
    try:
        if kind == "sem":
            pre = {ref(e): pf(t) for e, t in body["pre"].items()}
            rel = {}
            for a, edges in body.get("edges", {}).items():
                rel[a] = [(ref(x["from"]), ref(x["to"])) if isinstance(x, dict)
                          else (ref(x[0]), ref(x[1])) for x in edges]
            return StandardEventModel(events=events, rel=rel, pre=pre,
                                      designated=frozenset(designated), name=name)
        if kind == "ecem":
            pre = {ref(e): pf(t) for e, t in body["pre"].items()}
            cedges = {a: [ConditionedEdge(ref(x["from"]), pf(x.get("src", "T")),
                                          ref(x["to"]), pf(x.get("tgt", "T"))) for x in edges]
                      for a, edges in body.get("edges", {}).items()}
            if len(designated) > 1:
                raise WorkspaceError(f"{name}: edge-conditioned event models are single-pointed")
            return EdgeConditionedEventModel(events=events, pre=pre, cedges=cedges,
                                             designated=designated[0] if designated else None,
                                             name=name)
        if kind == "gau":
            arrows: dict = {}
            for a, edges in body.get("edges", {}).items():
                for x in edges:
                    arrows.setdefault((a, ref(x["from"])), []).append(
                        (pf(x.get("src", "T")), ref(x["to"]), pf(x.get("tgt", "T"))))
            if len(designated) > 1:
                raise WorkspaceError(f"{name}: generalized arrow updates are single-pointed")
            return GeneralizedArrowUpdate(outcomes=events, arrows=arrows,
                                          designated=designated[0] if designated else None,
                                          name=name)
    except (KeyError, ValueError) as exc:
        if isinstance(exc, WorkspaceError):
            raise
        raise WorkspaceError(f"event model {name!r}: {exc}") from None
    raise WorkspaceError(f"event model {name!r}: unknown kind {kind!r}")


# --------------------------------------------------------------------------
# serialization


def _sorted_labels(xs) -> list:
    return sorted(xs, key=label)


def model_to_json(m: KripkeModel | Pointed) -> dict:
    """JSON document for a (pointed) model; world ids become labels."""
    point = None
    if isinstance(m, Pointed):
        m, point = m.model, m.point
    worlds = []
    for w in m.worlds:
        wd: dict = {"id": label(w), "val": sorted(to_text(e) for e in m.valuation(w))}
        if m.is_attention_model:
            agents = sorted(set(m.agents) | {a for a, _ in m.att})
            wd["att"] = {a: sorted(to_text(f) for f in m.attention(a, w)) for a in agents}
        worlds.append(wd)
    out: dict = {"worlds": worlds,
                 "rel": {a: sorted([label(w), label(v)] for w, v in pairs)
                         for a, pairs in m.rel.items()}}
    if point is not None:
        out["point"] = label(point)
    return out


def event_model_to_json(d) -> dict:
    if isinstance(d, StandardEventModel):
        return {"kind": "sem", "events": [label(e) for e in d.events],
                "pre": {label(e): to_text(d.pre[e]) for e in d.events},
                "edges": {a: sorted(({"from": label(e), "to": label(f)} for e, f in pairs),
                                    key=lambda x: (x["from"], x["to"]))
                          for a, pairs in d.rel.items()},
                "designated": [label(e) for e in d.designation()]}
    if isinstance(d, EdgeConditionedEventModel):
        return {"kind": "ecem", "events": [label(e) for e in d.events],
                "pre": {label(e): to_text(d.pre[e]) for e in d.events},
                "edges": {a: [{"from": label(ce.source), "src": to_text(ce.src_cond),
                               "to": label(ce.target), "tgt": to_text(ce.tgt_cond)}
                              for ce in d.edges(a)] for a in d.agents()},
                "designated": [label(e) for e in d.designation()]}
    if isinstance(d, GeneralizedArrowUpdate):
        edges: dict = {}
        for a in d.agents():
            for o in d.outcomes:
                for x in d.arrows_from(a, o):
                    edges.setdefault(a, []).append({"from": label(o), "src": to_text(x.src_cond),
                                                    "to": label(x.target), "tgt": to_text(x.tgt_cond)})
        return {"kind": "gau", "events": [label(o) for o in d.outcomes], "edges": edges,
                "designated": [label(o) for o in d.designation()]}
    raise TypeError(f"not an event model: {d!r}")


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)
