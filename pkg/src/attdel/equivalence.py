"""Bisimulation, isomorphism and update-equivalence batteries.

Search and validation are separate: :func:`bisimilar` and
:func:`isomorphic` compute witnesses, while :func:`check_bisimulation` and
:func:`check_isomorphism` independently validate a proposed relation or
bijection against the definitions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from .formula import label
from .models import KripkeModel, Pointed, RandomModelParams, random_model
from .semantics import Evaluator, update

__all__ = [
    "BisimulationWitness", "IsomorphismWitness", "BatteryVerdict",
    "world_label", "bisimulation_partition", "bisimilar", "check_bisimulation",
    "isomorphic", "check_isomorphism", "update_equivalence_battery",
]


@dataclass(frozen=True)
class BisimulationWitness:
    relation: frozenset


@dataclass(frozen=True)
class IsomorphismWitness:
    bijection: Mapping


@dataclass
class BatteryVerdict:
    ok: bool
    checked: int = 0
    counterexample: Pointed | None = None
    reason: str = ""
    seed: int | None = None
    details: dict = field(default_factory=dict)


def world_label(m: KripkeModel, w) -> tuple:
    """Everything an atom-like formula can observe at ``w``: the valuation and,
    for attention models, the attention sets (agents with empty sets omitted)."""
    val = frozenset(m.valuation(w))
    if m.is_attention_model:
        agents = set(m.agents) | {a for a, _ in m.att}
        att = frozenset((a, frozenset(m.attention(a, w))) for a in agents if m.attention(a, w))
        return (val, att)
    return (val, frozenset())


def _check_regimes(m1: KripkeModel, m2: KripkeModel) -> None:
    if m1.is_attention_model != m2.is_attention_model:
        raise ValueError("cannot compare an attention model with a model without attention sets")


def bisimulation_partition(models: Iterable[KripkeModel]) -> dict:
    """Coarsest bisimulation on the disjoint union, by partition refinement.

    Returns a map ``(index, world) -> block number``.
    """
    models = list(models)
    agents = sorted({a for m in models for a in m.agents})
    nodes = [(i, w) for i, m in enumerate(models) for w in m.worlds]
    labels: dict = {}
    block = {}
    for n in nodes:
        lab = world_label(models[n[0]], n[1])
        block[n] = labels.setdefault(lab, len(labels))
    count = len(labels)
    while True:
        sigs: dict = {}
        new = {}
        for i, w in nodes:
            m = models[i]
            sig = (block[(i, w)],) + tuple(
                frozenset(block[(i, v)] for v in m.successors(a, w)) for a in agents)
            new[(i, w)] = sigs.setdefault(sig, len(sigs))
        if len(sigs) == count:
            return new
        block, count = new, len(sigs)


def bisimilar(pm1: Pointed, pm2: Pointed) -> BisimulationWitness | None:
    """Coarsest bisimulation between the two models if it links the points."""
    m1, m2 = pm1.model, pm2.model
    _check_regimes(m1, m2)
    part = bisimulation_partition([m1, m2])
    if part[(0, pm1.point)] != part[(1, pm2.point)]:
        return None
    by_block: dict = {}
    for w in m2.worlds:
        by_block.setdefault(part[(1, w)], []).append(w)
    rel = frozenset((w, v) for w in m1.worlds for v in by_block.get(part[(0, w)], ()))
    return BisimulationWitness(rel)


def check_bisimulation(m1: KripkeModel, m2: KripkeModel, relation: Iterable[tuple],
                       points: tuple | None = None) -> list[str]:
    """Problems with ``relation`` as a bisimulation (empty list = valid)."""
    Z = set(relation)
    problems = []
    if points is not None and tuple(points) not in Z:
        problems.append(f"points {label(points[0])}, {label(points[1])} not related")
    w1, w2 = set(m1.worlds), set(m2.worlds)
    zf: dict = {}
    for w, v in Z:
        if w not in w1 or v not in w2:
            problems.append(f"pair ({label(w)},{label(v)}) mentions an unknown world")
            continue
        zf.setdefault(w, set()).add(v)
    agents = sorted(set(m1.agents) | set(m2.agents))
    for w, v in sorted(Z, key=lambda p: (label(p[0]), label(p[1]))):
        if w not in w1 or v not in w2:
            continue
        if world_label(m1, w) != world_label(m2, v):
            problems.append(f"[Atom] fails at ({label(w)},{label(v)})")
        for a in agents:
            for w2_ in m1.successors(a, w):
                if not any(v2 in zf.get(w2_, ()) for v2 in m2.successors(a, v)):
                    problems.append(f"[Forth] fails for {a} at ({label(w)},{label(v)}) -> {label(w2_)}")
            for v2 in m2.successors(a, v):
                if not any(v2 in zf.get(w2_, ()) for w2_ in m1.successors(a, w)):
                    problems.append(f"[Back] fails for {a} at ({label(w)},{label(v)}) -> {label(v2)}")
    return problems


def _graph(m: KripkeModel) -> nx.DiGraph:
    g = nx.DiGraph()
    for w in m.worlds:
        g.add_node(w, label=world_label(m, w))
    for a, pairs in m.rel.items():
        for w, v in pairs:
            if g.has_edge(w, v):
                g[w][v]["agents"] = g[w][v]["agents"] | {a}
            else:
                g.add_edge(w, v, agents=frozenset({a}))
    return g


def isomorphic(m1: KripkeModel, m2: KripkeModel, candidate: Mapping | None = None,
               bound: int = 12) -> IsomorphismWitness | None:
    """Isomorphism between two models.

    With ``candidate`` the given bijection is validated (no size bound);
    otherwise a labelled-digraph search is run on models of at most ``bound``
    worlds, raising :class:`ValueError` above the bound.
    """
    _check_regimes(m1, m2)
    if candidate is not None:
        return IsomorphismWitness(dict(candidate)) if not check_isomorphism(m1, m2, candidate) else None
    if len(m1.worlds) != len(m2.worlds):
        return None
    if len(m1.worlds) > bound:
        raise ValueError(f"isomorphism search bound exceeded ({len(m1.worlds)} > {bound} worlds); "
                         "supply a candidate bijection or raise the bound")
    matcher = DiGraphMatcher(_graph(m1), _graph(m2),
                             node_match=lambda x, y: x["label"] == y["label"],
                             edge_match=lambda x, y: x["agents"] == y["agents"])
    for mapping in matcher.isomorphisms_iter():
        if not check_isomorphism(m1, m2, mapping):
            return IsomorphismWitness(dict(mapping))
    return None


def check_isomorphism(m1: KripkeModel, m2: KripkeModel, f: Mapping) -> list[str]:
    """Problems with ``f`` as an isomorphism (empty list = valid)."""
    problems = []
    if set(f) != set(m1.worlds):
        problems.append("map is not total on the first model's worlds")
        return problems
    image = [f[w] for w in m1.worlds]
    if len(set(image)) != len(image) or set(image) != set(m2.worlds):
        problems.append("map is not a bijection onto the second model's worlds")
        return problems
    for w in m1.worlds:
        if world_label(m1, w) != world_label(m2, f[w]):
            problems.append(f"labels differ at {label(w)} -> {label(f[w])}")
    for a in sorted(set(m1.agents) | set(m2.agents)):
        r1 = {(f[w], f[v]) for w, v in m1.rel.get(a, ())}
        r2 = set(m2.rel.get(a, ()))
        for w, v in sorted(r1 ^ r2, key=lambda p: (label(p[0]), label(p[1]))):
            problems.append(f"{a}-edge ({label(w)},{label(v)}) not preserved")
    return problems


def update_equivalence_battery(d1, d2, count: int = 100, params: RandomModelParams | None = None,
                               seed: int = 0, max_worlds: int | None = None,
                               model_factory: Callable[[int], Pointed] | None = None) -> BatteryVerdict:
    """Falsification battery for update equivalence of ``d1`` and ``d2``.

    For ``count`` seeded random pointed models: applicability must agree, and
    applicable updates must be bisimilar.  The first failure is returned with
    the sampled model.  ``params`` fixes the model shape; when ``max_worlds``
    is given the number of worlds is drawn from ``1..max_worlds`` per sample.
    """
    import random

    rng = random.Random(seed)
    base = params or RandomModelParams(num_worlds=3)
    for i in range(count):
        s = rng.randrange(2 ** 31)
        if model_factory is not None:
            pm = model_factory(s)
        else:
            n = rng.randint(1, max_worlds) if max_worlds else base.num_worlds
            pm = random_model(RandomModelParams(
                num_worlds=n, agents=base.agents, atoms=base.atoms, density=rng.random(),
                attention_atoms=base.attention_atoms, universe=base.universe, seed=s))
        ev = Evaluator()
        r1, r2 = update(pm, d1, ev), update(pm, d2, ev)
        if r1.applicable != r2.applicable:
            return BatteryVerdict(False, i + 1, pm, f"applicability differs ({r1.applicable} vs "
                                  f"{r2.applicable})", seed, {"sample_seed": s})
        if r1.applicable and bisimilar(r1.pointed, r2.pointed) is None:
            return BatteryVerdict(False, i + 1, pm, "updates are not bisimilar", seed,
                                  {"sample_seed": s})
    return BatteryVerdict(True, count, None, "no counterexample", seed)

