"""The three event formalisms: standard event models (SEM), edge-conditioned
event models (ECEM) and generalized arrow updates (GAU).

All three are immutable and hashable (they are embedded in formulas).  The
constructors accept plain dicts/lists and normalize them; structural
violations raise :class:`ValueError` listing every diagnostic.

Event identifiers may be strings or (nested) tuples of strings; the
printable form is :func:`attdel.formula.label`.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Any, Hashable, Iterable, Mapping

from .formula import Formula, TOP, _Hashed, formula_size, label, to_text

__all__ = [
    "StandardEventModel", "EdgeConditionedEventModel", "GeneralizedArrowUpdate",
    "ConditionedEdge", "Arrow", "size_sem", "size_ecem", "size_gau", "cond_set",
    "event_model_size", "trivial_ecem", "trivial_sem",
]

EventId = Hashable


class _FrozenMap(Mapping):
    """Read-only hashable mapping used inside event models."""

    __slots__ = ("_d", "_h")

    def __init__(self, data: Mapping | Iterable = ()):
        self._d = dict(data)
        self._h = None

    def __getitem__(self, k):
        return self._d[k]

    def __iter__(self):
        return iter(self._d)

    def __len__(self):
        return len(self._d)

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self._d.items()))
        return self._h

    def __eq__(self, other):
        if isinstance(other, Mapping):
            return dict(self._d) == dict(other)
        return NotImplemented

    def __repr__(self):
        return f"{{{', '.join(f'{k!r}: {v!r}' for k, v in self._d.items())}}}"


def _sort_key(x: Any) -> str:
    return label(x)


@dataclass(frozen=True)
class ConditionedEdge:
    """Conditioned edge ``(source: src_cond, target: tgt_cond)``."""
    source: EventId
    src_cond: Formula
    target: EventId
    tgt_cond: Formula

    def sort_key(self) -> tuple:
        return (_sort_key(self.source), to_text(self.src_cond),
                _sort_key(self.target), to_text(self.tgt_cond))


@dataclass(frozen=True)
class Arrow:
    """Generalized arrow ``(src_cond, target, tgt_cond)`` leaving some outcome."""
    src_cond: Formula
    target: EventId
    tgt_cond: Formula

    def sort_key(self) -> tuple:
        return (to_text(self.src_cond), _sort_key(self.target), to_text(self.tgt_cond))


def _raise_if(diags: list[str], what: str) -> None:
    if diags:
        raise ValueError(f"invalid {what}: " + "; ".join(diags))


class _EventModelBase(_Hashed):
    _skip_fields = ("name",)
    kind = ""

    def event_ids(self) -> tuple:
        raise NotImplementedError

    def designation(self) -> tuple:
        """Designated events as a tuple (empty when the model is unpointed)."""
        raise NotImplementedError

    def with_designation(self, ids: Iterable[EventId]):
        raise NotImplementedError

    def named(self, name: str):
        return replace(self, name=name)

    def size(self) -> int:
        raise NotImplementedError

    def conditions(self) -> set[Formula]:
        raise NotImplementedError

    def agents(self) -> tuple[str, ...]:
        raise NotImplementedError

    def __str__(self) -> str:
        return f"{self.kind}:{self.name or 'anon'}"


# --------------------------------------------------------------------------
# standard event models


@dataclass(frozen=True, eq=False)
class StandardEventModel(_EventModelBase):
    """``E = (E, Q, pre)`` with a (possibly multi-pointed) designation."""

    events: tuple
    rel: Mapping[str, frozenset]
    pre: Mapping[EventId, Formula]
    designated: frozenset = frozenset()
    name: str = field(default="", compare=False)
    kind = "sem"

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(dict.fromkeys(self.events)))
        object.__setattr__(self, "rel", _FrozenMap(
            (a, frozenset(tuple(p) for p in pairs)) for a, pairs in sorted(dict(self.rel).items())))
        object.__setattr__(self, "pre", _FrozenMap(self.pre))
        d = self.designated
        if d is None:
            d = frozenset()
        elif isinstance(d, (str, tuple)) and d in self.events:
            d = frozenset([d])
        object.__setattr__(self, "designated", frozenset(d))
        _raise_if(self._diagnostics(), "standard event model")

    def _diagnostics(self) -> list[str]:
        diags = []
        ev = set(self.events)
        if not ev:
            diags.append("no events")
        for e in self.events:
            if e not in self.pre:
                diags.append(f"missing precondition for {label(e)}")
        for e in self.pre:
            if e not in ev:
                diags.append(f"precondition for unknown event {label(e)}")
        for a, pairs in self.rel.items():
            for e, f in pairs:
                if e not in ev or f not in ev:
                    diags.append(f"{a}-edge ({label(e)},{label(f)}) has an unknown endpoint")
        for e in self.designated:
            if e not in ev:
                diags.append(f"designated event {label(e)} unknown")
        return diags

    def event_ids(self) -> tuple:
        return self.events

    def designation(self) -> tuple:
        return tuple(e for e in self.events if e in self.designated)

    def with_designation(self, ids: Iterable[EventId]) -> "StandardEventModel":
        return replace(self, designated=frozenset(ids))

    def edges(self, agent: str) -> frozenset:
        return self.rel.get(agent, frozenset())

    def agents(self) -> tuple[str, ...]:
        return tuple(self.rel)

    def size(self) -> int:
        return size_sem(self)

    def conditions(self) -> set[Formula]:
        return set(self.pre.values())

    @cached_property
    def successors(self) -> dict:
        out: dict = {}
        for a, pairs in self.rel.items():
            for e, f in pairs:
                out.setdefault((a, e), set()).add(f)
        return out


# --------------------------------------------------------------------------
# edge-conditioned event models


@dataclass(frozen=True, eq=False)
class EdgeConditionedEventModel(_EventModelBase):
    """``C = (E, Q, pre)`` where ``Q_a`` is a set of conditioned edges."""

    events: tuple
    pre: Mapping[EventId, Formula]
    cedges: Mapping[str, frozenset]
    designated: EventId | None = None
    name: str = field(default="", compare=False)
    kind = "ecem"

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(dict.fromkeys(self.events)))
        object.__setattr__(self, "pre", _FrozenMap(self.pre))
        norm = []
        for a, edges in sorted(dict(self.cedges).items()):
            norm.append((a, frozenset(e if isinstance(e, ConditionedEdge) else ConditionedEdge(*e)
                                      for e in edges)))
        object.__setattr__(self, "cedges", _FrozenMap(norm))
        _raise_if(self._diagnostics(), "edge-conditioned event model")

    def _diagnostics(self) -> list[str]:
        diags = []
        ev = set(self.events)
        if not ev:
            diags.append("no events")
        for e in self.events:
            if e not in self.pre:
                diags.append(f"missing precondition for {label(e)}")
        for e in self.pre:
            if e not in ev:
                diags.append(f"precondition for unknown event {label(e)}")
        for a, edges in self.cedges.items():
            for ce in edges:
                if ce.source not in ev or ce.target not in ev:
                    diags.append(f"{a}-edge from {label(ce.source)} to {label(ce.target)} "
                                 "has an unknown endpoint")
                if not isinstance(ce.src_cond, Formula) or not isinstance(ce.tgt_cond, Formula):
                    diags.append(f"{a}-edge conditions must be formulas")
        if self.designated is not None and self.designated not in ev:
            diags.append(f"designated event {label(self.designated)} unknown")
        return diags

    def event_ids(self) -> tuple:
        return self.events

    def designation(self) -> tuple:
        return () if self.designated is None else (self.designated,)

    def with_designation(self, ids: Iterable[EventId]) -> "EdgeConditionedEventModel":
        ids = list(ids)
        if len(ids) != 1:
            raise ValueError("edge-conditioned event models are single-pointed")
        return replace(self, designated=ids[0])

    def agents(self) -> tuple[str, ...]:
        return tuple(self.cedges)

    @cached_property
    def _sorted_edges(self) -> dict:
        return {a: tuple(sorted(edges, key=ConditionedEdge.sort_key))
                for a, edges in self.cedges.items()}

    def edges(self, agent: str) -> tuple[ConditionedEdge, ...]:
        """The agent's conditioned edges in a deterministic order."""
        return self._sorted_edges.get(agent, ())

    def edges_from(self, agent: str, e: EventId) -> tuple[ConditionedEdge, ...]:
        return tuple(ce for ce in self.edges(agent) if ce.source == e)

    def size(self) -> int:
        return size_ecem(self)

    def conditions(self) -> set[Formula]:
        out = set(self.pre.values())
        for edges in self.cedges.values():
            for ce in edges:
                out.add(ce.src_cond)
                out.add(ce.tgt_cond)
        return out


# --------------------------------------------------------------------------
# generalized arrow updates


@dataclass(frozen=True, eq=False)
class GeneralizedArrowUpdate(_EventModelBase):
    """``U = (O, arrows)``; ``arrows[(a, o)]`` is the set of a-arrows leaving ``o``."""

    outcomes: tuple
    arrows: Mapping[tuple, frozenset]
    designated: EventId | None = None
    name: str = field(default="", compare=False)
    kind = "gau"

    def __post_init__(self):
        object.__setattr__(self, "outcomes", tuple(dict.fromkeys(self.outcomes)))
        norm = []
        for key, arrs in sorted(dict(self.arrows).items(), key=lambda kv: label(kv[0])):
            arrs = frozenset(x if isinstance(x, Arrow) else Arrow(*x) for x in arrs)
            if arrs:
                norm.append((tuple(key), arrs))
        object.__setattr__(self, "arrows", _FrozenMap(norm))
        _raise_if(self._diagnostics(), "generalized arrow update")

    def _diagnostics(self) -> list[str]:
        diags = []
        out = set(self.outcomes)
        if not out:
            diags.append("no outcomes")
        for (a, o), arrs in self.arrows.items():
            if o not in out:
                diags.append(f"{a}-arrows leave unknown outcome {label(o)}")
            for x in arrs:
                if x.target not in out:
                    diags.append(f"{a}-arrow from {label(o)} to unknown outcome {label(x.target)}")
        if self.designated is not None and self.designated not in out:
            diags.append(f"designated outcome {label(self.designated)} unknown")
        return diags

    def event_ids(self) -> tuple:
        return self.outcomes

    def designation(self) -> tuple:
        return () if self.designated is None else (self.designated,)

    def with_designation(self, ids: Iterable[EventId]) -> "GeneralizedArrowUpdate":
        ids = list(ids)
        if len(ids) != 1:
            raise ValueError("generalized arrow updates are single-pointed")
        return replace(self, designated=ids[0])

    def agents(self) -> tuple[str, ...]:
        return tuple(sorted({a for a, _ in self.arrows}))

    def arrows_from(self, agent: str, o: EventId) -> tuple[Arrow, ...]:
        return tuple(sorted(self.arrows.get((agent, o), ()), key=Arrow.sort_key))

    def size(self) -> int:
        return size_gau(self)

    def conditions(self) -> set[Formula]:
        out: set[Formula] = set()
        for arrs in self.arrows.values():
            for x in arrs:
                out.add(x.src_cond)
                out.add(x.tgt_cond)
        return out


# --------------------------------------------------------------------------
# sizes and conditions


def size_sem(E: StandardEventModel) -> int:
    """``|E| + sum_a |Q_a| + sum_e |pre(e)|``."""
    return (len(E.events) + sum(len(p) for p in E.rel.values())
            + sum(formula_size(E.pre[e]) for e in E.events))


def size_ecem(C: EdgeConditionedEventModel) -> int:
    """``|E| + sum_a (|Q_a| + sum_edges (|phi| + |psi|)) + sum_e |pre(e)|``."""
    total = len(C.events) + sum(formula_size(C.pre[e]) for e in C.events)
    for edges in C.cedges.values():
        total += len(edges)
        total += sum(formula_size(ce.src_cond) + formula_size(ce.tgt_cond) for ce in edges)
    return total


def size_gau(U: GeneralizedArrowUpdate) -> int:
    """``|O| + sum_{a,o} (|arrows_a(o)| + sum (|phi| + |psi|))``."""
    total = len(U.outcomes)
    for arrs in U.arrows.values():
        total += len(arrs)
        total += sum(formula_size(x.src_cond) + formula_size(x.tgt_cond) for x in arrs)
    return total


def event_model_size(D) -> int:
    return D.size()


def cond_set(D) -> set[Formula]:
    """Preconditions (SEM); preconditions and edge conditions (ECEM); arrow conditions (GAU)."""
    return D.conditions()


def trivial_ecem(agents: Iterable[str], event: str = "e", name: str = "trivial") -> EdgeConditionedEventModel:
    """Single event, precondition ``T``, ``(e:T, e:T)`` loop for every agent."""
    return EdgeConditionedEventModel(
        events=(event,), pre={event: TOP},
        cedges={a: [ConditionedEdge(event, TOP, event, TOP)] for a in agents},
        designated=event, name=name)


def trivial_sem(agents: Iterable[str], event: str = "e", name: str = "skip") -> StandardEventModel:
    return StandardEventModel(events=(event,), rel={a: [(event, event)] for a in agents},
                              pre={event: TOP}, designated={event}, name=name)
