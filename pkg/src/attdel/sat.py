"""Reduction of dynamic formulas and a tableau for multi-agent K.

:func:`reduce` eliminates dynamic modalities with the reduction axioms for
edge-conditioned event models::

    [(C,e)]p        <-> (pre(e) -> p)
    [(C,e)]~psi     <-> (pre(e) -> ~[(C,e)]psi)
    [(C,e)](psi&chi) <-> ([(C,e)]psi & [(C,e)]chi)
    [(C,e)]B_a psi  <-> (pre(e) -> AND_{(e:chi, f:chi') in Q_a} (chi -> B_a(chi' -> [(C,f)]psi)))

Attention atoms and attention modalities are atom-like (updates copy them),
so they follow the first axiom.  Standard event models and generalized arrow
updates are first translated into edge-conditioned event models.

:func:`k_satisfiable` decides static formulas with a tableau in which
attention atoms and ``A_a phi`` (keyed by agent and formula) are opaque
propositional tokens.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable

from .events import (ConditionedEdge, EdgeConditionedEventModel,
                     GeneralizedArrowUpdate, StandardEventModel)
from .formula import (TOP, And, Atom, AttAtom, Attends, Believes, Dyn, Formula,
                      Not, Top, agents_of, big_and, implies, is_static, to_text)
from .models import AttentionModel, KripkeModel, Pointed

__all__ = ["TableauVerdict", "reduce", "reduction_step", "k_satisfiable",
           "consistent", "valid", "simplify_top"]


# --------------------------------------------------------------------------
# reduction


def reduce(f: Formula, simplify: bool = False) -> Formula:
    """Static formula equivalent to ``f`` on every model.

    With ``simplify=True`` the result is cleaned by ``T``-absorption only
    (``T -> x = x``, ``x & T = T & x = x``, ``x -> T = T``).
    """
    out = _reduce(f, {})
    return simplify_top(out) if simplify else out


def _reduce(f: Formula, memo: dict) -> Formula:
    hit = memo.get(f)
    if hit is not None:
        return hit
    if isinstance(f, (Top, Atom, AttAtom, Attends)):
        out = f  # the attended formula is data, never rewritten
    elif isinstance(f, Not):
        out = Not(_reduce(f.sub, memo))
    elif isinstance(f, And):
        out = And(_reduce(f.left, memo), _reduce(f.right, memo))
    elif isinstance(f, Believes):
        out = Believes(f.agent, _reduce(f.sub, memo))
    elif isinstance(f, Dyn):
        out = _reduce_dyn(f.model, _reduce(f.sub, memo), memo)
    else:
        raise TypeError(f"not a formula: {f!r}")
    memo[f] = out
    return out


def _reduce_dyn(d, psi: Formula, memo: dict) -> Formula:
    from .transforms import t1_sem_to_ecem, t1pp_gau_to_ecem

    if isinstance(d, StandardEventModel):
        points = d.designation()
        C = _static_ecem(t1_sem_to_ecem(d.with_designation([])), memo)
        if len(points) == 1:
            return _push(C, points[0], psi, {})
        parts = []
        for e in points:
            guard = big_and([C.pre[e]] + [Not(C.pre[g]) for g in points if g != e])
            parts.append(implies(guard, _push(C, e, psi, {})))
        return big_and(parts)
    if isinstance(d, GeneralizedArrowUpdate):
        C = _static_ecem(t1pp_gau_to_ecem(d), memo)
        return _push(C, d.designated, psi, {})
    if isinstance(d, EdgeConditionedEventModel):
        C = _static_ecem(d, memo)
        return _push(C, d.designated, psi, {})
    raise TypeError(f"not an event model: {d!r}")


def _static_ecem(C: EdgeConditionedEventModel, memo: dict) -> EdgeConditionedEventModel:
    """Same model with every condition reduced to a static formula."""
    if all(is_static(c) for c in C.conditions()):
        return C
    r = lambda g: _reduce(g, memo)  # noqa: E731
    return replace(
        C, pre={e: r(C.pre[e]) for e in C.events},
        cedges={a: [ConditionedEdge(ce.source, r(ce.src_cond), ce.target, r(ce.tgt_cond))
                    for ce in C.edges(a)] for a in C.agents()})


def _push(C: EdgeConditionedEventModel, e, psi: Formula, memo: dict) -> Formula:
    """Static equivalent of ``[(C,e)]psi`` for static ``psi`` and static C."""
    key = (e, psi)
    hit = memo.get(key)
    if hit is not None:
        return hit
    pre = C.pre[e]
    if isinstance(psi, (Top, Atom, AttAtom, Attends)):
        out = implies(pre, psi)
    elif isinstance(psi, Not):
        out = implies(pre, Not(_push(C, e, psi.sub, memo)))
    elif isinstance(psi, And):
        out = And(_push(C, e, psi.left, memo), _push(C, e, psi.right, memo))
    elif isinstance(psi, Believes):
        out = implies(pre, big_and(
            implies(ce.src_cond,
                    Believes(psi.agent, implies(ce.tgt_cond, _push(C, ce.target, psi.sub, memo))))
            for ce in C.edges_from(psi.agent, e)))
    else:
        raise TypeError(f"cannot push an event model through {to_text(psi)}")
    memo[key] = out
    return out


def reduction_step(C: EdgeConditionedEventModel, e, psi: Formula) -> Formula:
    """Right-hand side of the single reduction axiom matching ``[(C,e)]psi``.

    Inner occurrences of ``[(C,f)]`` are kept as dynamic modalities.
    """
    pre = C.pre[e]
    box = lambda f, g: Dyn(C.with_designation([f]), g)  # noqa: E731
    if isinstance(psi, (Top, Atom, AttAtom, Attends)):
        return implies(pre, psi)
    if isinstance(psi, Not):
        return implies(pre, Not(box(e, psi.sub)))
    if isinstance(psi, And):
        return And(box(e, psi.left), box(e, psi.right))
    if isinstance(psi, Believes):
        return implies(pre, big_and(
            implies(ce.src_cond, Believes(psi.agent, implies(ce.tgt_cond, box(ce.target, psi.sub))))
            for ce in C.edges_from(psi.agent, e)))
    raise TypeError(f"no reduction axiom for {to_text(psi)}")


def simplify_top(f: Formula) -> Formula:
    """``T``-absorption: ``T -> x = x``, ``x & T = x``, ``x -> T = T``."""
    if isinstance(f, Not):
        inner = f.sub
        if isinstance(inner, And):
            left = simplify_top(inner.left)
            right = simplify_top(inner.right)
            if isinstance(right, Not):
                # implication left -> right.sub
                cons = right.sub
                if isinstance(left, Top):
                    return cons
                if isinstance(cons, Top):
                    return TOP
            return Not(_and(left, right))
        return Not(simplify_top(inner))
    if isinstance(f, And):
        return _and(simplify_top(f.left), simplify_top(f.right))
    if isinstance(f, Believes):
        return Believes(f.agent, simplify_top(f.sub))
    if isinstance(f, Dyn):
        return Dyn(f.model, simplify_top(f.sub))
    return f


def _and(left: Formula, right: Formula) -> Formula:
    if isinstance(right, Top):
        return left
    if isinstance(left, Top):
        return right
    return And(left, right)


# --------------------------------------------------------------------------
# tableau


@dataclass(frozen=True)
class TableauVerdict:
    satisfiable: bool
    witness: Pointed | None = None

    def __bool__(self) -> bool:
        return self.satisfiable


def _is_token(f: Formula) -> bool:
    return isinstance(f, (Atom, AttAtom, Attends))


def _nnf(f: Formula, positive: bool = True) -> tuple:
    """Negation normal form as nested tuples.

    ``('top',) ('bot',) ('lit', token, sign) ('and', l, r) ('or', l, r)
    ('box', a, g) ('dia', a, g)``
    """
    if isinstance(f, Top):
        return ("top",) if positive else ("bot",)
    if _is_token(f):
        return ("lit", f, positive)
    if isinstance(f, Not):
        return _nnf(f.sub, not positive)
    if isinstance(f, And):
        op = "and" if positive else "or"
        return (op, _nnf(f.left, positive), _nnf(f.right, positive))
    if isinstance(f, Believes):
        return ("box" if positive else "dia", f.agent, _nnf(f.sub, positive))
    raise ValueError(f"tableau expects a static formula, got {to_text(f)}")


class _Tableau:
    def __init__(self) -> None:
        self.memo: dict = {}

    def sat(self, label: frozenset):
        """Tree witness ``(literals, [(agent, child), ...])`` or None."""
        if label in self.memo:
            return self.memo[label]
        self.memo[label] = None  # K has no cycles in the search, but guard anyway
        res = self._expand(list(label), {}, {}, [])
        self.memo[label] = res
        return res

    def _expand(self, todo: list, lits: dict, boxes: dict, dias: list):
        while todo:
            g = todo.pop()
            tag = g[0]
            if tag == "top":
                continue
            if tag == "bot":
                return None
            if tag == "lit":
                prev = lits.get(g[1])
                if prev is not None and prev != g[2]:
                    return None
                lits = {**lits, g[1]: g[2]} if prev is None else lits
                continue
            if tag == "and":
                todo = todo + [g[2], g[1]]
                continue
            if tag == "or":
                for branch in (g[1], g[2]):
                    res = self._expand(todo + [branch], lits, boxes, dias)
                    if res is not None:
                        return res
                return None
            if tag == "box":
                boxes = {**boxes, g[1]: boxes.get(g[1], frozenset()) | {g[2]}}
                continue
            if tag == "dia":
                dias = dias + [g]
                continue
            raise AssertionError(tag)
        children = []
        for _, a, g in dias:
            child = self.sat(frozenset({g}) | boxes.get(a, frozenset()))
            if child is None:
                return None
            children.append((a, child))
        return (lits, children)


def k_satisfiable(f: Formula) -> TableauVerdict:
    """Decide satisfiability of a static formula in multi-agent K."""
    if not is_static(f):
        raise ValueError("k_satisfiable expects a static formula; use reduce() first")
    tree = _Tableau().sat(frozenset({_nnf(f)}))
    if tree is None:
        return TableauVerdict(False, None)
    return TableauVerdict(True, _witness(tree, f))


def _witness(tree, f: Formula) -> Pointed:
    worlds: list[str] = []
    rel: dict[str, set] = {a: set() for a in sorted(agents_of(f))}
    val: dict[str, set] = {}
    att: dict[tuple, set] = {}
    uses_attends = any(isinstance(t, Attends) for t in _tokens(f))
    stack = [(tree, None, None)]
    while stack:
        node, parent, agent = stack.pop()
        w = f"w{len(worlds)}"
        worlds.append(w)
        if parent is not None:
            rel.setdefault(agent, set()).add((parent, w))
        lits, children = node
        val[w] = {t for t, s in lits.items() if s and isinstance(t, (Atom, AttAtom))}
        for t, s in lits.items():
            if s and isinstance(t, Attends):
                att.setdefault((t.agent, w), set()).add(t.sub)
        for a, child in reversed(children):
            stack.append((child, w, a))
    if uses_attends:
        agents = set(rel) | {a for a, _ in att}
        full = {(a, w): att.get((a, w), set()) for a in agents for w in worlds}
        model = AttentionModel(worlds=tuple(worlds), rel=rel, val=val, att=full)
    else:
        model = KripkeModel(worlds=tuple(worlds), rel=rel, val=val)
    return Pointed(model, worlds[0])


def _tokens(f: Formula) -> Iterable[Formula]:
    if _is_token(f):
        yield f
    elif isinstance(f, (Not, Believes)):
        yield from _tokens(f.sub)
    elif isinstance(f, And):
        yield from _tokens(f.left)
        yield from _tokens(f.right)


def consistent(G: Iterable[Formula]) -> bool:
    """``G`` is jointly satisfiable (the empty set is consistent)."""
    return k_satisfiable(big_and(G)).satisfiable


def valid(f: Formula) -> bool:
    return not k_satisfiable(Not(f)).satisfiable
