"""Attention event models and attention principles.

Generators:

* :func:`build_F` -- multi-pointed standard event model for propositional
  attention (events are full descriptions of revealed literals and attention
  atoms, edges by attentiveness and inertia);
* :func:`build_H` -- the compact edge-conditioned event model for
  propositional attention;
* :func:`build_R` -- the edge-conditioned event model for general attention
  revealing a set of formulas.

Principles are checked over explicit (finite) attention sets; closure
principles that quantify over all formulas are restricted to a caller
supplied universe.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .events import ConditionedEdge, EdgeConditionedEventModel, StandardEventModel
from .formula import (And, AttAtom, Attends, Believes, Formula, Literal, Not,
                      atoms_of, big_and, children, literals_of, to_text)
from .models import KripkeModel

__all__ = [
    "Revelation", "build_F", "build_H", "build_R", "ConjunctiveClosure",
    "Commutativity", "SublanguageClosure", "SubformulaClosure", "Ignoring",
    "AttendingTo", "AttentionIntrospection", "Violation", "check_principle",
    "f_event_count", "f_designated_count",
]


@dataclass(frozen=True)
class Revelation:
    """Revealed formulas, in a fixed order.

    ``Revelation.literals(...)`` builds the propositional case (a
    conjunction of literals, canonically ordered); ``Revelation.of(...)``
    builds the general case.
    """
    formulas: tuple[Formula, ...]
    propositional: bool = False

    @classmethod
    def of(cls, formulas: Iterable[Formula]) -> "Revelation":
        fs = tuple(formulas)
        if len(set(fs)) != len(fs):
            raise ValueError("duplicate formulas in revelation")
        return cls(fs, False)

    @classmethod
    def literals(cls, phi: Formula | Sequence[Literal]) -> "Revelation":
        lits = literals_of(phi)
        chosen: dict[str, bool] = {}
        for lit in lits:
            if chosen.get(lit.atom, lit.positive) != lit.positive:
                raise ValueError(f"atom {lit.atom!r} occurs with both polarities")
            chosen[lit.atom] = lit.positive
        return cls(tuple(Literal(p, chosen[p]).formula() for p in sorted(chosen)), True)

    def literal_list(self) -> list[Literal]:
        if not self.propositional:
            raise ValueError("not a propositional revelation")
        return [lit for f in self.formulas for lit in literals_of(f)]


def _propositional(phi) -> list[Literal]:
    if isinstance(phi, Revelation):
        return phi.literal_list()
    try:
        return Revelation.literals(phi).literal_list()
    except ValueError as exc:
        raise ValueError(f"non-propositional revelation: {exc}") from None


def _subsets(items: Sequence) -> list[tuple]:
    """All subsets in a fixed order (by size, then lexicographically)."""
    return [c for k in range(len(items) + 1) for c in itertools.combinations(items, k)]


# --------------------------------------------------------------------------
# F(phi)


def build_F(phi, agents: Iterable[str], name: str = "") -> StandardEventModel:
    """Multi-pointed standard event model for propositional attention.

    Events are ``AND_{p in S} l(p) & AND_a (AND_{p in X_a} A_a p & AND_{p in S\\X_a} ~A_a p)``
    for ``S`` a subset of the revealed atoms and ``X_a`` a subset of ``S``.
    ``(e, f) in Q_a`` iff for every revealed atom ``p``: ``A_a p in e`` implies
    ``A_a p in f`` and ``l(p) in f`` (attentiveness), and ``A_a p not in e``
    implies ``l(p) not in f`` (inertia).  Designated events contain every
    revealed literal.
    """
    lits = _propositional(phi)
    agents = sorted(set(agents))
    atoms = [lit.atom for lit in lits]
    sign = {lit.atom: lit.positive for lit in lits}
    profiles = []  # (S, {a: X_a}, formula)
    for S in _subsets(atoms):
        for choice in itertools.product(*[_subsets(S) for _ in agents]):
            X = dict(zip(agents, (frozenset(x) for x in choice)))
            parts: list[Formula] = [Literal(p, sign[p]).formula() for p in S]
            for a in agents:
                for p in S:
                    parts.append(AttAtom(a, p) if p in X[a] else Not(AttAtom(a, p)))
            profiles.append((frozenset(S), X, big_and(parts)))
    ids = [to_text(f) for _, _, f in profiles]
    rel = {}
    for a in agents:
        pairs = []
        for (S_e, X_e, _), e in zip(profiles, ids):
            for (S_f, X_f, _), f in zip(profiles, ids):
                attentive = all(p in X_f[a] and p in S_f for p in X_e[a])
                inert = all(p not in S_f for p in atoms if p not in X_e[a])
                if attentive and inert:
                    pairs.append((e, f))
        rel[a] = pairs
    designated = [e for (S, _, _), e in zip(profiles, ids) if len(S) == len(atoms)]
    return StandardEventModel(events=ids, rel=rel,
                              pre={e: f for (_, _, f), e in zip(profiles, ids)},
                              designated=frozenset(designated),
                              name=name or f"F({_phi_name(lits)})")


def f_event_count(n_atoms: int, n_agents: int) -> int:
    """Closed form ``sum_k C(n,k) 2^(k |Ag|)`` of the number of events of F."""
    from math import comb
    return sum(comb(n_atoms, k) * 2 ** (k * n_agents) for k in range(n_atoms + 1))


def f_designated_count(n_atoms: int, n_agents: int) -> int:
    return (2 ** n_atoms) ** n_agents


def _phi_name(lits: list[Literal]) -> str:
    if not lits:
        return "T"
    return "&".join(("" if lit.positive else "~") + lit.atom for lit in lits)


# --------------------------------------------------------------------------
# H(phi) and R(Gamma)


def _attention_ecem(items: Sequence[Formula], att, agents: Sequence[str], name: str) -> EdgeConditionedEventModel:
    """Shared construction: events ``AND S`` for ``S`` a subset of ``items``;
    per agent the edges ``(AND S : AND_T att(a,x) & AND_{S\\T} ~att(a,x), AND T : AND_T att(a,x))``."""
    subsets = _subsets(tuple(range(len(items))))
    conj = {S: big_and(items[i] for i in S) for S in subsets}
    ids = {S: to_text(conj[S]) for S in subsets}
    cedges = {}
    for a in agents:
        edges = []
        for S in subsets:
            for T in _subsets(S):
                rest = [i for i in S if i not in T]
                src = big_and([att(a, items[i]) for i in T] + [Not(att(a, items[i])) for i in rest])
                tgt = big_and(att(a, items[i]) for i in T)
                edges.append(ConditionedEdge(ids[S], src, ids[tuple(T)], tgt))
        cedges[a] = edges
    full = tuple(range(len(items)))
    return EdgeConditionedEventModel(
        events=[ids[S] for S in subsets], pre={ids[S]: conj[S] for S in subsets},
        cedges=cedges, designated=ids[full], name=name)


def build_H(phi, agents: Iterable[str], name: str = "") -> EdgeConditionedEventModel:
    """Edge-conditioned event model for propositional attention, pointed at ``phi``.

    Events are the conjunctions of subsets of the revealed literals (``T`` for
    the empty subset), each with itself as precondition.
    """
    lits = _propositional(phi)
    items = [lit.formula() for lit in lits]
    return _attention_ecem(items, lambda a, f: AttAtom(a, next(iter(atoms_of(f)))),
                           sorted(set(agents)), name or f"H({_phi_name(lits)})")


def build_R(gamma, agents: Iterable[str] | None = None, name: str = "") -> EdgeConditionedEventModel:
    """Edge-conditioned event model for general attention revealing ``gamma``.

    ``gamma`` is a :class:`Revelation` or a sequence of formulas (kept in
    the given order).  When ``agents`` is omitted, the agents mentioned in the
    revealed formulas are used.
    """
    items = list(gamma.formulas if isinstance(gamma, Revelation) else Revelation.of(gamma).formulas)
    if agents is None:
        from .formula import agents_of
        agents = set().union(*(agents_of(f) for f in items)) if items else set()
    return _attention_ecem(items, Attends, sorted(set(agents)), name or "R")


# --------------------------------------------------------------------------
# principles


@dataclass(frozen=True)
class ConjunctiveClosure:
    """``phi & psi in A_a(w)`` iff ``phi in A_a(w)`` and ``psi in A_a(w)``, for conjunctions in the universe."""


@dataclass(frozen=True)
class Commutativity:
    """``phi & psi in A_a(w)`` iff ``psi & phi in A_a(w)``, for conjunctions in the universe."""


@dataclass(frozen=True)
class SublanguageClosure:
    """If ``phi in A_a(w)`` then every universe formula over ``At(phi)`` is in ``A_a(w)``."""


@dataclass(frozen=True)
class SubformulaClosure:
    """If ``phi in A_a(w)`` then every subformula of ``phi`` is in ``A_a(w)``."""


@dataclass(frozen=True)
class Ignoring:
    """``subject`` ignores ``ignored``: no ``B_ignored phi`` in ``A_subject(w)``
    (only ``phi`` from the universe, when a universe is given)."""
    subject: str
    ignored: str


@dataclass(frozen=True)
class AttendingTo:
    """``subject`` attends to ``attended``: ``B_attended phi in A_subject(w)`` for every universe formula ``phi``."""
    subject: str
    attended: str


@dataclass(frozen=True)
class AttentionIntrospection:
    """``(w, v) in R_a`` implies ``A_a(w) = A_a(v)``."""


@dataclass(frozen=True)
class Violation:
    world: object
    agent: str
    formulas: tuple
    reason: str

    def __str__(self) -> str:
        fs = ", ".join(to_text(f) if isinstance(f, Formula) else str(f) for f in self.formulas)
        return f"{self.reason} at world {self.world} for agent {self.agent}: {fs}"


def _attention_sets(m: KripkeModel) -> dict:
    """``(agent, world) -> set of attended formulas`` for either regime."""
    if m.is_attention_model:
        agents = set(m.agents) | {a for a, _ in m.att}
        return {(a, w): set(m.attention(a, w)) for a in agents for w in m.worlds}
    from .formula import Atom
    out = {(a, w): set() for a in m.agents for w in m.worlds}
    for w in m.worlds:
        for e in m.valuation(w):
            if isinstance(e, AttAtom):
                out.setdefault((e.agent, w), set()).add(Atom(e.atom))
    return out


def _proper_subformulas(f: Formula) -> set[Formula]:
    out: set[Formula] = set()
    stack = list(children(f))
    while stack:
        g = stack.pop()
        if g not in out:
            out.add(g)
            stack.extend(children(g))
    return out


def check_principle(m: KripkeModel, p, universe: Iterable[Formula] | None = None) -> list[Violation]:
    """Violations of principle ``p`` in ``m``; the empty list means the principle holds.

    ``universe`` is the finite set of formulas over which universe-relative
    principles quantify (default: all formulas occurring in attention sets).
    """
    sets = _attention_sets(m)
    if universe is None:
        universe_set = set().union(*sets.values()) if sets else set()
        explicit = False
    else:
        universe_set = set(universe)
        explicit = True
    out: list[Violation] = []
    keys = sorted(sets, key=lambda k: (str(k[1]), k[0]))
    if isinstance(p, ConjunctiveClosure):
        conjs = sorted((f for f in universe_set if isinstance(f, And)), key=to_text)
        for a, w in keys:
            s = sets[(a, w)]
            for f in conjs:
                if (f in s) != (f.left in s and f.right in s):
                    out.append(Violation(w, a, (f, f.left, f.right), "conjunctive closure"))
    elif isinstance(p, Commutativity):
        conjs = sorted((f for f in universe_set if isinstance(f, And)), key=to_text)
        for a, w in keys:
            s = sets[(a, w)]
            for f in conjs:
                if (f in s) != (And(f.right, f.left) in s):
                    out.append(Violation(w, a, (f,), "commutativity"))
    elif isinstance(p, SublanguageClosure):
        for a, w in keys:
            s = sets[(a, w)]
            for f in sorted(s, key=to_text):
                at = atoms_of(f)
                missing = [g for g in universe_set if atoms_of(g) <= at and g not in s]
                if missing:
                    out.append(Violation(w, a, (f, *sorted(missing, key=to_text)),
                                         "sublanguage closure"))
    elif isinstance(p, SubformulaClosure):
        for a, w in keys:
            s = sets[(a, w)]
            for f in sorted(s, key=to_text):
                missing = [g for g in _proper_subformulas(f) if g not in s]
                if missing:
                    out.append(Violation(w, a, (f, *sorted(missing, key=to_text)),
                                         "subformula closure"))
    elif isinstance(p, Ignoring):
        for w in m.worlds:
            s = sets.get((p.subject, w), set())
            bad = [f for f in s if isinstance(f, Believes) and f.agent == p.ignored
                   and (not explicit or f.sub in universe_set)]
            if bad:
                out.append(Violation(w, p.subject, tuple(sorted(bad, key=to_text)), "ignoring"))
    elif isinstance(p, AttendingTo):
        for w in m.worlds:
            s = sets.get((p.subject, w), set())
            missing = [Believes(p.attended, f) for f in universe_set
                       if Believes(p.attended, f) not in s]
            if missing:
                out.append(Violation(w, p.subject, tuple(sorted(missing, key=to_text)),
                                     "attending to"))
    elif isinstance(p, AttentionIntrospection):
        for a in sorted({a for a, _ in sets}):
            for w, v in sorted(m.rel.get(a, ()), key=str):
                sw, sv = sets.get((a, w), set()), sets.get((a, v), set())
                if sw != sv:
                    diff = tuple(sorted(sw ^ sv, key=to_text))
                    out.append(Violation(w, a, diff, f"attention introspection (edge to {v})"))
    else:
        raise TypeError(f"unknown principle {p!r}")
    return out
