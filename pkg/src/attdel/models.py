"""Kripke models and attention models.

Two regimes are supported:

* PA regime: a :class:`KripkeModel` whose valuation may contain attention
  atoms (:class:`~attdel.formula.AttAtom`) next to plain atoms;
* GA regime: an :class:`AttentionModel` whose valuation holds plain atoms and
  whose ``att`` maps ``(agent, world)`` to a finite set of formulas.

World identifiers are strings or (nested) tuples of identifiers; product
updates name their worlds by ``(world, event)`` pairs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Sequence

from .formula import Atom, AttAtom, Formula, LanguageError, check_language, label

__all__ = [
    "KripkeModel", "AttentionModel", "Pointed", "validate", "generated_submodel",
    "random_model", "RandomModelParams", "with_introspection",
]

World = Hashable


@dataclass(frozen=True, eq=False)
class KripkeModel:
    """``M = (W, R, V)``.

    ``rel`` maps each agent to a set of world pairs; ``val`` maps worlds to
    sets of :class:`Atom`/:class:`AttAtom` entries.  Plain strings in ``val``
    are accepted and read as atoms.  The constructor normalizes but does not
    validate; use :func:`validate`.
    """

    worlds: tuple
    rel: Mapping[str, frozenset]
    val: Mapping[World, frozenset]

    def __post_init__(self):
        object.__setattr__(self, "worlds", tuple(dict.fromkeys(self.worlds)))
        object.__setattr__(self, "rel", {a: frozenset(tuple(p) for p in pairs)
                                         for a, pairs in sorted(dict(self.rel).items())})
        object.__setattr__(self, "val", {w: frozenset(_entry(x) for x in xs)
                                         for w, xs in dict(self.val).items()})

    @property
    def agents(self) -> tuple[str, ...]:
        return tuple(self.rel)

    def valuation(self, w: World) -> frozenset:
        return self.val.get(w, frozenset())

    def at(self, w: World) -> "Pointed":
        return Pointed(self, w)

    @cached_property
    def _succ(self) -> dict:
        out: dict = {}
        for a, pairs in self.rel.items():
            for w, v in pairs:
                out.setdefault((a, w), []).append(v)
        return out

    def successors(self, agent: str, w: World) -> list:
        return self._succ.get((agent, w), [])

    @property
    def is_attention_model(self) -> bool:
        return False

    def __eq__(self, other):
        if not isinstance(other, KripkeModel) or type(self) is not type(other):
            return NotImplemented
        return (set(self.worlds) == set(other.worlds) and self.rel == other.rel
                and {w: self.valuation(w) for w in self.worlds}
                == {w: other.valuation(w) for w in other.worlds}
                and self._att_eq(other))

    def _att_eq(self, other) -> bool:
        return True

    __hash__ = None

    def restrict(self, keep: Iterable[World]) -> "KripkeModel":
        keep = set(keep)
        return KripkeModel(
            worlds=tuple(w for w in self.worlds if w in keep),
            rel={a: {(w, v) for w, v in pairs if w in keep and v in keep}
                 for a, pairs in self.rel.items()},
            val={w: self.valuation(w) for w in self.worlds if w in keep})


def _entry(x) -> Formula:
    if isinstance(x, (Atom, AttAtom)):
        return x
    if isinstance(x, str):
        return Atom(x)
    raise TypeError(f"valuation entries must be atoms or attention atoms, got {x!r}")


@dataclass(frozen=True, eq=False)
class AttentionModel(KripkeModel):
    """Kripke model plus attention function ``att[(agent, world)]``."""

    att: Mapping[tuple, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "att", {tuple(k): frozenset(v) for k, v in dict(self.att).items()})

    @property
    def is_attention_model(self) -> bool:
        return True

    def attention(self, agent: str, w: World) -> frozenset:
        return self.att.get((agent, w), frozenset())

    def _att_eq(self, other) -> bool:
        return ({k: v for k, v in self.att.items() if v} == {k: v for k, v in other.att.items() if v})

    def restrict(self, keep: Iterable[World]) -> "AttentionModel":
        keep = set(keep)
        base = super().restrict(keep)
        return AttentionModel(worlds=base.worlds, rel=base.rel, val=base.val,
                              att={(a, w): s for (a, w), s in self.att.items() if w in keep})


@dataclass(frozen=True)
class Pointed:
    """Pointed model ``(M, w)``."""
    model: KripkeModel
    point: World


# --------------------------------------------------------------------------


def validate(m: KripkeModel | Pointed, agents: Iterable[str] | None = None,
             atoms: Iterable[str] | None = None) -> list[str]:
    """Diagnostics for every violated invariant; the empty list means valid.

    ``agents``/``atoms`` are the declared identifiers (checked when given).
    """
    point = None
    if isinstance(m, Pointed):
        m, point = m.model, m.point
    diags: list[str] = []
    ws = set(m.worlds)
    ag = set(agents) if agents is not None else None
    at = set(atoms) if atoms is not None else None
    if not ws:
        diags.append("model has no worlds")
    if point is not None and point not in ws:
        diags.append(f"point {label(point)} is not a world")
    for a, pairs in m.rel.items():
        if ag is not None and a not in ag:
            diags.append(f"undeclared agent {a!r} in relation")
        for w, v in sorted(pairs, key=lambda p: (label(p[0]), label(p[1]))):
            for x in (w, v):
                if x not in ws:
                    diags.append(f"{a}-pair ({label(w)},{label(v)}) references undeclared world {label(x)}")
    for w, entries in m.val.items():
        if w not in ws:
            diags.append(f"valuation for undeclared world {label(w)}")
        for e in entries:
            name = e.name if isinstance(e, Atom) else e.atom
            if at is not None and name not in at:
                diags.append(f"undeclared atom {name!r} at {label(w)}")
            if isinstance(e, AttAtom):
                if ag is not None and e.agent not in ag:
                    diags.append(f"undeclared agent {e.agent!r} in {e} at {label(w)}")
                if m.is_attention_model:
                    diags.append(f"attention atom {e} in the valuation of attention model world {label(w)}")
    if m.is_attention_model:
        all_agents = ag if ag is not None else set(m.agents) | {a for a, _ in m.att}
        for a in sorted(all_agents):
            for w in m.worlds:
                if (a, w) not in m.att:
                    diags.append(f"missing attention set for ({a}, {label(w)})")
        for (a, w), forms in m.att.items():
            if w not in ws:
                diags.append(f"attention set for undeclared world {label(w)}")
            for f in forms:
                try:
                    check_language(f, "GA")
                except LanguageError as exc:
                    diags.append(f"attention set ({a}, {label(w)}): {exc}")
    return diags


def generated_submodel(pm: Pointed) -> Pointed:
    """Restriction to the worlds reachable from the point via any agent."""
    m = pm.model
    seen = {pm.point}
    stack = [pm.point]
    while stack:
        w = stack.pop()
        for a in m.agents:
            for v in m.successors(a, w):
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
    if len(seen) == len(m.worlds):
        return pm
    return Pointed(m.restrict(seen), pm.point)


def with_introspection(m: AttentionModel | KripkeModel) -> KripkeModel:
    """Copy of ``m`` where attention is constant along each agent's relation.

    Attention of agent ``a`` is made uniform on every connected component of
    ``R_a`` (taking the attention of the component's first world), which
    ensures ``(w,v) in R_a`` implies equal attention.  For PA-regime models the
    agent's attention atoms are unified instead.
    """
    comps: dict[str, dict] = {}
    for a in m.agents:
        parent = {w: w for w in m.worlds}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x
        for w, v in m.rel[a]:
            rw, rv = find(w), find(v)
            if rw != rv:
                if m.worlds.index(rw) < m.worlds.index(rv):
                    parent[rv] = rw
                else:
                    parent[rw] = rv
        comps[a] = {w: find(w) for w in m.worlds}
    if m.is_attention_model:
        att = {}
        for a in set(m.agents) | {a for a, _ in m.att}:
            for w in m.worlds:
                root = comps.get(a, {}).get(w, w)
                att[(a, w)] = m.attention(a, root)
        return AttentionModel(worlds=m.worlds, rel=m.rel, val=m.val, att=att)
    val = {}
    for w in m.worlds:
        entries = {e for e in m.valuation(w)
                   if not isinstance(e, AttAtom) or e.agent not in comps}
        for a, comp in comps.items():
            entries |= {e for e in m.valuation(comp[w]) if isinstance(e, AttAtom) and e.agent == a}
        val[w] = entries
    return KripkeModel(worlds=m.worlds, rel=m.rel, val=val)


@dataclass(frozen=True)
class RandomModelParams:
    """Parameters of :func:`random_model`.

    ``density`` is a probability or a per-agent mapping.  ``attention_atoms``
    adds PA attention atoms ``A_a p`` (for every agent and atom) to the
    sampled valuation.  A non-empty ``universe`` produces an
    :class:`AttentionModel` whose attention sets are sampled subsets of it.
    """
    num_worlds: int
    agents: Sequence[str] = ("a", "b")
    atoms: Sequence[str] = ("p", "q")
    density: float | Mapping[str, float] = 0.4
    attention_atoms: bool = False
    universe: Sequence[Formula] | None = None
    seed: int = 0
    world_prefix: str = "w"


def random_model(params: RandomModelParams | None = None, **kwargs) -> Pointed:
    """Seeded random pointed model; the point is the first world.

    Accepts a :class:`RandomModelParams` or its fields as keyword arguments.
    """
    if params is None:
        params = RandomModelParams(**kwargs)
    elif kwargs:
        raise TypeError("pass either params or keyword arguments")
    if params.num_worlds < 1:
        raise ValueError("num_worlds must be at least 1")
    rng = random.Random(params.seed)
    worlds = [f"{params.world_prefix}{i}" for i in range(params.num_worlds)]
    rel = {}
    for a in params.agents:
        d = params.density[a] if isinstance(params.density, Mapping) else params.density
        if not 0.0 <= d <= 1.0:
            raise ValueError("density must lie in [0, 1]")
        rel[a] = {(w, v) for w in worlds for v in worlds if rng.random() < d}
    val = {}
    for w in worlds:
        entries = {Atom(p) for p in params.atoms if rng.random() < 0.5}
        if params.attention_atoms:
            entries |= {AttAtom(a, p) for a in params.agents for p in params.atoms
                        if rng.random() < 0.5}
        val[w] = entries
    if params.universe:
        att = {(a, w): {f for f in params.universe if rng.random() < 0.5}
               for a in params.agents for w in worlds}
        return Pointed(AttentionModel(worlds=tuple(worlds), rel=rel, val=val, att=att), worlds[0])
    return Pointed(KripkeModel(worlds=tuple(worlds), rel=rel, val=val), worlds[0])
