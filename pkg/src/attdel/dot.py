"""Graphviz DOT export for models and event models.

Conventions follow the usual drawings: the point of a model and the
designated events of an event model are drawn with a double border and an
underlined label; edges are labelled by agent, conditioned edges by
``a:(phi,psi)``.
"""

from __future__ import annotations

from html import escape
from typing import Iterator

from .events import EdgeConditionedEventModel, GeneralizedArrowUpdate, StandardEventModel
from .formula import label, to_text
from .models import KripkeModel, Pointed

__all__ = ["model_dot", "event_model_dot", "to_dot"]


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _node(name: str, text: str, designated: bool) -> str:
    if designated:
        return f"  {_q(name)} [label=<<U>{escape(text)}</U>>, peripheries=2];"
    return f"  {_q(name)} [label={_q(text)}];"


def model_dot(m: KripkeModel | Pointed, name: str = "M") -> Iterator[str]:
    point = None
    if isinstance(m, Pointed):
        m, point = m.model, m.point
    yield f"digraph {_q(name)} {{"
    for w in m.worlds:
        parts = sorted(to_text(e) for e in m.valuation(w))
        if m.is_attention_model:
            for a in sorted(set(m.agents) | {a for a, _ in m.att}):
                s = m.attention(a, w)
                if s:
                    parts.append(f"A_{a}{{{', '.join(sorted(to_text(f) for f in s))}}}")
        text = label(w) + (": " + ", ".join(parts) if parts else "")
        yield _node(label(w), text, w == point)
    for a, pairs in m.rel.items():
        for w, v in sorted(pairs, key=lambda p: (label(p[0]), label(p[1]))):
            yield f"  {_q(label(w))} -> {_q(label(v))} [label={_q(a)}];"
    yield "}"


def event_model_dot(d, name: str | None = None) -> Iterator[str]:
    yield f"digraph {_q(name or d.name or d.kind)} {{"
    points = set(d.designation())
    if isinstance(d, GeneralizedArrowUpdate):
        for o in d.outcomes:
            yield _node(label(o), label(o), o in points)
        for a in d.agents():
            for o in d.outcomes:
                for x in d.arrows_from(a, o):
                    text = f"{a}:({to_text(x.src_cond)},{to_text(x.tgt_cond)})"
                    yield f"  {_q(label(o))} -> {_q(label(x.target))} [label={_q(text)}];"
        yield "}"
        return
    for e in d.events:
        yield _node(label(e), f"{label(e)}: {to_text(d.pre[e])}", e in points)
    if isinstance(d, StandardEventModel):
        for a, pairs in d.rel.items():
            for e, f in sorted(pairs, key=lambda p: (label(p[0]), label(p[1]))):
                yield f"  {_q(label(e))} -> {_q(label(f))} [label={_q(a)}];"
    elif isinstance(d, EdgeConditionedEventModel):
        for a in d.agents():
            for ce in d.edges(a):
                text = f"{a}:({to_text(ce.src_cond)},{to_text(ce.tgt_cond)})"
                yield f"  {_q(label(ce.source))} -> {_q(label(ce.target))} [label={_q(text)}];"
    yield "}"


def to_dot(x, name: str | None = None) -> str:
    if isinstance(x, (KripkeModel, Pointed)):
        return "\n".join(model_dot(x, name or "M")) + "\n"
    return "\n".join(event_model_dot(x, name)) + "\n"
