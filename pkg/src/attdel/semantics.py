"""Satisfaction and product updates.

Truth is computed set-wise: :func:`extension` returns the set of worlds
where a formula holds, memoizing subformulas and product models, so that a
dynamic modality triggers one product construction per model rather than
one per world.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Hashable

from .events import (EdgeConditionedEventModel, GeneralizedArrowUpdate,
                     StandardEventModel)
from .formula import (And, Atom, AttAtom, Attends, Believes, Dyn, Formula, Not,
                      Top, to_text)
from .models import AttentionModel, KripkeModel, Pointed

__all__ = [
    "RegimeError", "UpdateResult", "Evaluator", "satisfies", "extension",
    "product_sem", "product_ecem", "product_gau", "product", "update_sem",
    "update_ecem", "update_gau", "update", "applicable",
]


class RegimeError(ValueError):
    """A formula of one attention regime was evaluated on a model of the other."""


@dataclass(frozen=True)
class UpdateResult:
    """Outcome of a pointed update; ``model``/``point`` are None when inapplicable."""
    model: KripkeModel | None
    point: Hashable | None
    applicable: bool

    @property
    def pointed(self) -> Pointed | None:
        return Pointed(self.model, self.point) if self.applicable else None


class Evaluator:
    """Memoizing evaluator; one instance may be reused across queries."""

    def __init__(self) -> None:
        self._ext: dict = {}
        self._prod: dict = {}
        self._keep: dict = {}

    def _remember(self, m: Any) -> None:
        # cache keys use id(); keep the objects alive for the evaluator's lifetime
        self._keep[id(m)] = m

    def extension(self, m: KripkeModel, f: Formula) -> frozenset:
        key = (id(m), f)
        hit = self._ext.get(key)
        if hit is not None:
            return hit
        self._remember(m)
        res = frozenset(self._compute(m, f))
        self._ext[key] = res
        return res

    def _compute(self, m: KripkeModel, f: Formula):
        if isinstance(f, Top):
            return m.worlds
        if isinstance(f, Atom):
            return [w for w in m.worlds if f in m.valuation(w)]
        if isinstance(f, AttAtom):
            if m.is_attention_model:
                raise RegimeError(f"attention atom {to_text(f)} evaluated on an attention model")
            return [w for w in m.worlds if f in m.valuation(w)]
        if isinstance(f, Attends):
            if not m.is_attention_model:
                raise RegimeError(f"attention modality {to_text(f)} evaluated on a model "
                                  "without attention sets")
            return [w for w in m.worlds if f.sub in m.attention(f.agent, w)]
        if isinstance(f, Not):
            sub = self.extension(m, f.sub)
            return [w for w in m.worlds if w not in sub]
        if isinstance(f, And):
            left = self.extension(m, f.left)
            if not left:
                return ()
            right = self.extension(m, f.right)
            return left & right
        if isinstance(f, Believes):
            sub = self.extension(m, f.sub)
            return [w for w in m.worlds
                    if all(v in sub for v in m.successors(f.agent, w))]
        if isinstance(f, Dyn):
            return self._dynamic(m, f)
        raise TypeError(f"not a formula: {f!r}")

    def _dynamic(self, m: KripkeModel, f: Dyn):
        d = f.model
        points = d.designation()
        if not points:
            raise ValueError(f"dynamic modality over unpointed {d}")
        prod = self.product(m, d)
        sub = self.extension(prod, f.sub)
        pw = set(prod.worlds)
        out = []
        for w in m.worlds:
            live = [e for e in points if (w, e) in pw]
            if len(live) != 1 or (w, live[0]) in sub:
                out.append(w)
        return out

    # -- products

    def product(self, m: KripkeModel, d) -> KripkeModel:
        key = (id(m), d)
        hit = self._prod.get(key)
        if hit is None:
            self._remember(m)
            if isinstance(d, StandardEventModel):
                hit = self._product_sem(m, d)
            elif isinstance(d, EdgeConditionedEventModel):
                hit = self._product_ecem(m, d)
            elif isinstance(d, GeneralizedArrowUpdate):
                hit = self._product_gau(m, d)
            else:
                raise TypeError(f"not an event model: {d!r}")
            self._prod[key] = hit
        return hit

    def _worlds_by_pre(self, m: KripkeModel, events, pre) -> list:
        exts = {e: self.extension(m, pre[e]) for e in events}
        return [(w, e) for w in m.worlds for e in events if w in exts[e]]

    def _product_sem(self, m: KripkeModel, E: StandardEventModel) -> KripkeModel:
        worlds = self._worlds_by_pre(m, E.events, E.pre)
        ws = set(worlds)
        rel = {}
        for a in m.agents:
            qa = E.successors
            pairs = set()
            for (w, e) in worlds:
                fs = qa.get((a, e))
                if not fs:
                    continue
                for v in m.successors(a, w):
                    for f in fs:
                        if (v, f) in ws:
                            pairs.add(((w, e), (v, f)))
            rel[a] = pairs
        return _assemble(m, worlds, rel)

    def _product_ecem(self, m: KripkeModel, C: EdgeConditionedEventModel) -> KripkeModel:
        worlds = self._worlds_by_pre(m, C.events, C.pre)
        ws = set(worlds)
        rel = {}
        for a in m.agents:
            pairs = set()
            ra = m.rel[a]
            for ce in C.edges(a):
                src = self.extension(m, ce.src_cond)
                tgt = self.extension(m, ce.tgt_cond)
                for w, v in ra:
                    if w in src and v in tgt and (w, ce.source) in ws and (v, ce.target) in ws:
                        pairs.add(((w, ce.source), (v, ce.target)))
            rel[a] = pairs
        return _assemble(m, worlds, rel)

    def _product_gau(self, m: KripkeModel, U: GeneralizedArrowUpdate) -> KripkeModel:
        worlds = [(w, o) for w in m.worlds for o in U.outcomes]
        rel = {}
        for a in m.agents:
            pairs = set()
            ra = m.rel[a]
            for o in U.outcomes:
                for x in U.arrows_from(a, o):
                    src = self.extension(m, x.src_cond)
                    tgt = self.extension(m, x.tgt_cond)
                    for w, v in ra:
                        if w in src and v in tgt:
                            pairs.add(((w, o), (v, x.target)))
            rel[a] = pairs
        return _assemble(m, worlds, rel)


def _assemble(m: KripkeModel, worlds: list, rel: dict) -> KripkeModel:
    val = {(w, e): m.valuation(w) for (w, e) in worlds}
    if isinstance(m, AttentionModel):
        agents = set(m.agents) | {a for a, _ in m.att}
        att = {(a, (w, e)): m.attention(a, w) for a in agents for (w, e) in worlds}
        return AttentionModel(worlds=tuple(worlds), rel=rel, val=val, att=att)
    return KripkeModel(worlds=tuple(worlds), rel=rel, val=val)


# --------------------------------------------------------------------------
# functional interface


def extension(m: KripkeModel, f: Formula) -> frozenset:
    """Worlds of ``m`` where ``f`` holds."""
    return Evaluator().extension(m, f)


def satisfies(pm: Pointed, f: Formula, evaluator: Evaluator | None = None) -> bool:
    """``(M, w) |= f``."""
    ev = evaluator or Evaluator()
    return pm.point in ev.extension(pm.model, f)


def product_sem(m: KripkeModel, E: StandardEventModel) -> KripkeModel:
    return Evaluator().product(m, E)


def product_ecem(m: KripkeModel, C: EdgeConditionedEventModel) -> KripkeModel:
    return Evaluator().product(m, C)


def product_gau(m: KripkeModel, U: GeneralizedArrowUpdate) -> KripkeModel:
    return Evaluator().product(m, U)


def product(m: KripkeModel, d) -> KripkeModel:
    """Full product ``M (x) D`` (designation ignored)."""
    return Evaluator().product(m, d)


def applicable(pm: Pointed, d, evaluator: Evaluator | None = None) -> Hashable | None:
    """The unique designated event applicable at the point, if any."""
    ev = evaluator or Evaluator()
    points = d.designation()
    if not points:
        raise ValueError(f"{d} has no designated event")
    if isinstance(d, GeneralizedArrowUpdate):
        return points[0]
    pre = d.pre
    live = [e for e in points if pm.point in ev.extension(pm.model, pre[e])]
    return live[0] if len(live) == 1 else None


def update(pm: Pointed, d, evaluator: Evaluator | None = None) -> UpdateResult:
    """Pointed product update with any event formalism."""
    ev = evaluator or Evaluator()
    e = applicable(pm, d, ev)
    if e is None:
        return UpdateResult(None, None, False)
    return UpdateResult(ev.product(pm.model, d), (pm.point, e), True)


def update_sem(pm: Pointed, E: StandardEventModel) -> UpdateResult:
    """Update with a (multi-)pointed SEM; applicable iff exactly one designated
    precondition holds at the point."""
    if not isinstance(E, StandardEventModel):
        raise TypeError("update_sem expects a standard event model")
    return update(pm, E)


def update_ecem(pm: Pointed, C: EdgeConditionedEventModel) -> UpdateResult:
    if not isinstance(C, EdgeConditionedEventModel):
        raise TypeError("update_ecem expects an edge-conditioned event model")
    return update(pm, C)


def update_gau(pm: Pointed, U: GeneralizedArrowUpdate) -> UpdateResult:
    if not isinstance(U, GeneralizedArrowUpdate):
        raise TypeError("update_gau expects a generalized arrow update")
    return update(pm, U)
