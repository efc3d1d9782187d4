"""Translations between the event formalisms.

* ``t1_sem_to_ecem`` / ``t2``: standard event model -> edge-conditioned event
  model (every edge ``(e,f)`` becomes ``(e:T, f:T)``);
* ``t1p_ecem_to_sem`` / ``t2p``: edge-conditioned -> standard event model
  via maximal consistent sign assignments over each event's conditions;
* ``t1pp_gau_to_ecem`` / ``t2pp``: generalized arrow update ->
  edge-conditioned event model (outcomes become events with precondition T).

Each ``t2*`` rewrites the dynamic modalities of one kind inside a formula,
recursively translating the conditions of the embedded models.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Hashable

from .events import (ConditionedEdge, EdgeConditionedEventModel,
                     GeneralizedArrowUpdate, StandardEventModel)
from .formula import (TOP, And, Atom, AttAtom, Attends, Believes, Dyn, Formula,
                      Not, Top, big_and, implies, to_text)
from .models import KripkeModel

__all__ = [
    "MaximalConsistentSet", "t1_sem_to_ecem", "t2", "t1p_ecem_to_sem", "t2p",
    "t1pp_gau_to_ecem", "t2pp", "phi_conditions", "gamma_of", "gamma_bijection",
    "translate",
]


def _map_dyn(f: Formula, fn: Callable[[Dyn], Formula | None]) -> Formula:
    """Rebuild ``f`` bottom-up, replacing dynamic modalities via ``fn``.

    ``fn`` receives the modality with its body already rewritten and returns a
    replacement, or None to keep the node.  Attention contents are data and
    are left untouched.
    """
    if isinstance(f, (Top, Atom, AttAtom, Attends)):
        return f
    if isinstance(f, Not):
        return Not(_map_dyn(f.sub, fn))
    if isinstance(f, And):
        return And(_map_dyn(f.left, fn), _map_dyn(f.right, fn))
    if isinstance(f, Believes):
        return Believes(f.agent, _map_dyn(f.sub, fn))
    if isinstance(f, Dyn):
        node = Dyn(f.model, _map_dyn(f.sub, fn))
        out = fn(node)
        return node if out is None else out
    raise TypeError(f"not a formula: {f!r}")


# --------------------------------------------------------------------------
# T1: SEM -> ECEM


def t1_sem_to_ecem(E: StandardEventModel) -> EdgeConditionedEventModel:
    """Same events, preconditions translated by ``t2``, edges ``(e:T, f:T)``.

    A single designated event is kept; a multi-pointed (or unpointed) model
    yields an unpointed ECEM (use ``t2`` for multi-pointed modalities).
    """
    points = E.designation()
    return EdgeConditionedEventModel(
        events=E.events,
        pre={e: t2(E.pre[e]) for e in E.events},
        cedges={a: [ConditionedEdge(e, TOP, f, TOP) for e, f in pairs]
                for a, pairs in E.rel.items()},
        designated=points[0] if len(points) == 1 else None,
        name=f"T1({E.name})" if E.name else "")


def t2(f: Formula) -> Formula:
    """Rewrite standard event model modalities into ECEM modalities.

    ``[(E, E_d)]phi`` with several designated events becomes
    ``AND_{e in E_d} ((pre(e) & AND_{g != e} ~pre(g)) -> [(T1(E), e)]phi)``.
    """
    def step(node: Dyn):
        E = node.model
        if not isinstance(E, StandardEventModel):
            return None
        C = t1_sem_to_ecem(E.with_designation([]))
        points = E.designation()
        if len(points) == 1:
            return Dyn(C.with_designation(points), node.sub)
        parts = []
        for e in points:
            guard = big_and([C.pre[e]] + [Not(C.pre[g]) for g in points if g != e])
            parts.append(implies(guard, Dyn(C.with_designation([e]), node.sub)))
        return big_and(parts)
    return _map_dyn(f, step)


# --------------------------------------------------------------------------
# T1': ECEM -> SEM


@dataclass(frozen=True)
class MaximalConsistentSet:
    """A consistent sign assignment ``Gamma`` over ``Phi(e)``."""
    members: frozenset
    conjunction: Formula

    @property
    def key(self) -> str:
        return to_text(self.conjunction)


def _gamma(members) -> MaximalConsistentSet:
    ms = frozenset(members)
    return MaximalConsistentSet(ms, big_and(sorted(ms, key=to_text)))


def phi_conditions(C: EdgeConditionedEventModel, e: Hashable,
                   consistency: Callable | None = None):
    """``(Phi(e), Phi'(e), mc(e))`` for event ``e`` of ``C``.

    ``Phi(e)`` lists source conditions of edges leaving ``e`` and target
    conditions of edges entering ``e``, deduplicated syntactically.
    ``Phi'(e)`` adds ``~phi`` for each member (no double negation
    elimination).  ``mc(e)`` holds the consistent sign assignments over
    ``Phi(e)``, checked after reducing dynamic conditions.
    """
    from .sat import consistent, reduce

    check = consistency or (lambda G: consistent([reduce(g) for g in G]))
    phi: list[Formula] = []
    for a in C.agents():
        for ce in C.edges(a):
            if ce.source == e and ce.src_cond not in phi:
                phi.append(ce.src_cond)
            if ce.target == e and ce.tgt_cond not in phi:
                phi.append(ce.tgt_cond)
    phi_prime = phi + [Not(g) for g in phi if Not(g) not in phi]
    mcs: list[MaximalConsistentSet] = []
    seen = set()
    for signs in itertools.product((True, False), repeat=len(phi)):
        members = frozenset(g if s else Not(g) for g, s in zip(phi, signs))
        if members in seen:
            continue
        seen.add(members)
        if check(members):
            mcs.append(_gamma(members))
    return phi, phi_prime, mcs


def t1p_ecem_to_sem(C: EdgeConditionedEventModel) -> StandardEventModel:
    """Events ``(e, Gamma)``; ``Q'_a`` links ``(e,Gamma)`` to ``(f,Gamma')`` when some
    ``(e:phi, f:phi') in Q_a`` has ``phi in Gamma`` and ``phi' in Gamma'``;
    ``pre'(e,Gamma) = t2p(pre(e) & AND Gamma)``.

    Event ids are pairs ``(e, text of AND Gamma)``.  A designated ``d`` gives
    the designation ``{(d, Gamma) : Gamma in mc(d)}``; exactly one of these
    is applicable wherever ``pre(d)`` holds.
    """
    mc = {e: phi_conditions(C, e)[2] for e in C.events}
    events = [(e, g.key) for e in C.events for g in mc[e]]
    pre = {(e, g.key): t2p(And(C.pre[e], g.conjunction)) for e in C.events for g in mc[e]}
    rel: dict[str, set] = {}
    for a in C.agents():
        pairs = set()
        for ce in C.edges(a):
            for g in mc[ce.source]:
                if ce.src_cond not in g.members:
                    continue
                for h in mc[ce.target]:
                    if ce.tgt_cond in h.members:
                        pairs.add(((ce.source, g.key), (ce.target, h.key)))
        rel[a] = pairs
    designated = ()
    if C.designated is not None:
        designated = [(C.designated, g.key) for g in mc[C.designated]]
    return StandardEventModel(events=events, rel=rel, pre=pre, designated=frozenset(designated),
                              name=f"T1p({C.name})" if C.name else "")


def t2p(f: Formula) -> Formula:
    """Rewrite ECEM modalities into (multi-pointed) SEM modalities."""
    def step(node: Dyn):
        if isinstance(node.model, EdgeConditionedEventModel):
            return Dyn(t1p_ecem_to_sem(node.model), node.sub)
        return None
    return _map_dyn(f, step)


def gamma_of(C: EdgeConditionedEventModel, m: KripkeModel, w, e, evaluator=None) -> str:
    """Key of the unique ``Gamma_(w,e)`` in mc(e): the conditions true at ``w``
    with the negation of the others."""
    from .semantics import Evaluator

    ev = evaluator or Evaluator()
    phi, _, _ = phi_conditions(C, e, consistency=lambda G: True)
    members = [g if w in ev.extension(m, g) else Not(g) for g in phi]
    return _gamma(members).key


def gamma_bijection(C: EdgeConditionedEventModel, m: KripkeModel, worlds) -> dict:
    """The map ``(w,e) -> (w,(e,Gamma_(w,e)))`` on the given product worlds."""
    from .semantics import Evaluator

    ev = Evaluator()
    cache: dict = {}
    out = {}
    for (w, e) in worlds:
        if e not in cache:
            cache[e] = phi_conditions(C, e, consistency=lambda G: True)[0]
        members = [g if w in ev.extension(m, g) else Not(g) for g in cache[e]]
        out[(w, e)] = (w, (e, _gamma(members).key))
    return out


# --------------------------------------------------------------------------
# T1'': GAU -> ECEM


def t1pp_gau_to_ecem(U: GeneralizedArrowUpdate) -> EdgeConditionedEventModel:
    """Outcomes become events with precondition ``T``; each a-arrow
    ``(phi, o', psi)`` leaving ``o`` becomes ``(o: t2pp(phi), o': t2pp(psi))``."""
    cedges: dict[str, list] = {}
    for (a, o), arrs in U.arrows.items():
        for x in arrs:
            cedges.setdefault(a, []).append(
                ConditionedEdge(o, t2pp(x.src_cond), x.target, t2pp(x.tgt_cond)))
    return EdgeConditionedEventModel(
        events=U.outcomes, pre={o: TOP for o in U.outcomes}, cedges=cedges,
        designated=U.designated, name=f"T1pp({U.name})" if U.name else "")


def t2pp(f: Formula) -> Formula:
    def step(node: Dyn):
        if isinstance(node.model, GeneralizedArrowUpdate):
            return Dyn(t1pp_gau_to_ecem(node.model), node.sub)
        return None
    return _map_dyn(f, step)


def translate(d, target: str):
    """Translate an event model to ``target`` in {"ecem", "sem"}."""
    if target == "ecem":
        if isinstance(d, StandardEventModel):
            return t1_sem_to_ecem(d)
        if isinstance(d, GeneralizedArrowUpdate):
            return t1pp_gau_to_ecem(d)
        if isinstance(d, EdgeConditionedEventModel):
            return d
    if target == "sem":
        if isinstance(d, EdgeConditionedEventModel):
            return t1p_ecem_to_sem(d)
        if isinstance(d, GeneralizedArrowUpdate):
            return t1p_ecem_to_sem(t1pp_gau_to_ecem(d))
        if isinstance(d, StandardEventModel):
            return d
    raise ValueError(f"no translation from {d.kind} to {target}")

