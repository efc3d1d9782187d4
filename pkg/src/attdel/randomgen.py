"""Seeded random formulas and event models for property batteries."""

from __future__ import annotations

import random
from typing import Sequence

from .events import (Arrow, ConditionedEdge, EdgeConditionedEventModel,
                     GeneralizedArrowUpdate, StandardEventModel)
from .formula import TOP, And, Atom, AttAtom, Attends, Believes, Formula, Not

__all__ = ["random_formula", "random_sem", "random_ecem", "random_gau", "PA_CONDITIONS"]


def random_formula(rng: random.Random, atoms: Sequence[str], agents: Sequence[str],
                   depth: int, attention: str | None = None,
                   universe: Sequence[Formula] | None = None) -> Formula:
    """Random static formula of modal-and-connective depth at most ``depth``.

    ``attention="atom"`` adds PA attention atoms as leaves; ``"modal"`` adds
    ``A_a phi`` leaves with ``phi`` drawn from ``universe`` (default: atoms).
    """
    def leaf() -> Formula:
        r = rng.random()
        if attention == "atom" and r < 0.35:
            return AttAtom(rng.choice(agents), rng.choice(atoms))
        if attention == "modal" and r < 0.35:
            pool = list(universe) if universe else [Atom(p) for p in atoms]
            return Attends(rng.choice(agents), rng.choice(pool))
        if r > 0.93:
            return TOP
        return Atom(rng.choice(atoms))

    def go(d: int) -> Formula:
        if d <= 0 or rng.random() < 0.25:
            return leaf()
        r = rng.random()
        if r < 0.3:
            return Not(go(d - 1))
        if r < 0.65:
            return And(go(d - 1), go(d - 1))
        return Believes(rng.choice(agents), go(d - 1))
    return go(depth)


PA_CONDITIONS = (TOP, AttAtom("a", "p"), Not(AttAtom("a", "p")), Atom("p"))


def _cond(rng: random.Random, pool: Sequence[Formula] | None, atoms, agents, depth, attention):
    if pool is not None:
        return rng.choice(pool)
    return random_formula(rng, atoms, agents, depth, attention)


def random_sem(rng: random.Random, atoms: Sequence[str] = ("p", "q"),
               agents: Sequence[str] = ("a", "b"), max_events: int = 4,
               pre_depth: int = 1, attention: str | None = None,
               density: float = 0.4, multi: bool = False) -> StandardEventModel:
    n = rng.randint(1, max_events)
    events = [f"e{i}" for i in range(n)]
    rel = {a: [(e, f) for e in events for f in events if rng.random() < density] for a in agents}
    pre = {e: random_formula(rng, atoms, agents, pre_depth, attention) for e in events}
    k = rng.randint(1, n) if multi else 1
    designated = frozenset(rng.sample(events, k))
    return StandardEventModel(events=events, rel=rel, pre=pre, designated=designated, name="E")


def random_ecem(rng: random.Random, atoms: Sequence[str] = ("p", "q"),
                agents: Sequence[str] = ("a", "b"), max_events: int = 3,
                cond_depth: int = 1, attention: str | None = None,
                pool: Sequence[Formula] | None = None, density: float = 0.5,
                pre_pool: Sequence[Formula] | None = None) -> EdgeConditionedEventModel:
    """Random pointed ECEM; conditions come from ``pool`` when given."""
    n = rng.randint(1, max_events)
    events = [f"e{i}" for i in range(n)]
    pre = {e: _cond(rng, pre_pool if pre_pool is not None else pool, atoms, agents, cond_depth,
                    attention) for e in events}
    cedges = {}
    for a in agents:
        edges = []
        for e in events:
            for f in events:
                for _ in range(2):
                    if rng.random() < density:
                        edges.append(ConditionedEdge(
                            e, _cond(rng, pool, atoms, agents, cond_depth, attention),
                            f, _cond(rng, pool, atoms, agents, cond_depth, attention)))
        cedges[a] = edges
    return EdgeConditionedEventModel(events=events, pre=pre, cedges=cedges,
                                     designated=rng.choice(events), name="C")


def random_gau(rng: random.Random, atoms: Sequence[str] = ("p", "q"),
               agents: Sequence[str] = ("a", "b"), max_outcomes: int = 3,
               cond_depth: int = 1, attention: str | None = None,
               density: float = 0.5) -> GeneralizedArrowUpdate:
    n = rng.randint(1, max_outcomes)
    outcomes = [f"o{i}" for i in range(n)]
    arrows = {}
    for a in agents:
        for o in outcomes:
            arrs = [Arrow(random_formula(rng, atoms, agents, cond_depth, attention), t,
                          random_formula(rng, atoms, agents, cond_depth, attention))
                    for t in outcomes for _ in range(2) if rng.random() < density]
            if arrs:
                arrows[(a, o)] = arrs
    return GeneralizedArrowUpdate(outcomes=outcomes, arrows=arrows,
                                  designated=rng.choice(outcomes), name="U")
