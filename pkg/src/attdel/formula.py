"""Formula AST shared by all languages, with parser, printer and metrics.

A single immutable AST serves every language of the hierarchy:

* ``Top``, ``Atom``, ``Not``, ``And``, ``Believes`` -- the epistemic core;
* ``AttAtom`` -- propositional attention atom ``A_a p`` (PA regime, stored in
  the valuation);
* ``Attends`` -- the general attention modality ``A_a phi`` (GA regime,
  evaluated by membership in the attention set);
* ``Dyn`` -- a dynamic modality ``[D]phi`` where ``D`` is a standard event
  model, an edge-conditioned event model or a generalized arrow update,
  carrying its own designation.

Derived connectives (or, implies, iff, dual belief) are expanded by the
parser and the helper constructors; the printer renders only the core.

Concrete syntax::

    T  F  p  ~f  (f & g)  (f | g)  (f -> g)  (f <-> g)
    B[a]f  <a>f  A[a]f  Att[a]p  [@name:e]f  [@name:e1,e2]f

Binary operators may also be written without the outer parentheses;
precedence from tightest: unary, ``&``, ``|``, ``->`` (right assoc), ``<->``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, fields
from functools import cached_property
from typing import Any, Iterable, Iterator, Mapping, Sequence

__all__ = [
    "Formula", "Top", "Atom", "AttAtom", "Not", "And", "Believes", "Attends",
    "Dyn", "Literal", "LanguageTag", "ParseError", "LanguageError",
    "TOP", "BOT", "neg", "conj", "disj", "implies", "iff", "big_and",
    "diamond", "parse", "to_text", "formula_size", "atoms_of", "agents_of",
    "subformulas", "is_static", "hierarchy_level", "check_language",
    "in_language", "canonicalize_literal_conjunction", "literals_of",
    "as_attention_atoms", "label",
]


class ParseError(ValueError):
    """Syntax or resolution error; ``pos`` is the 0-based offset in the text."""

    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        super().__init__(message if pos is None else f"{message} (at position {pos})")


class LanguageError(ValueError):
    """A construct is not allowed in the requested language."""


class _Hashed:
    """Structural equality with a cached hash, for deep immutable trees."""

    _skip_fields: tuple[str, ...] = ()

    @cached_property
    def _key(self) -> tuple:
        return tuple(getattr(self, f.name) for f in fields(self)
                     if f.name not in self._skip_fields)

    @cached_property
    def _hash(self) -> int:
        return hash((type(self).__name__, self._key))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if type(self) is not type(other):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key

    def __ne__(self, other: object) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq


class Formula(_Hashed):
    """Base class of all formula nodes."""

    def __str__(self) -> str:
        return to_text(self)

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return disj(self, other)

    def __invert__(self) -> "Formula":
        return Not(self)

    def __rshift__(self, other: "Formula") -> "Formula":
        return implies(self, other)


@dataclass(frozen=True, eq=False)
class Top(Formula):
    pass


@dataclass(frozen=True, eq=False)
class Atom(Formula):
    name: str


@dataclass(frozen=True, eq=False)
class AttAtom(Formula):
    """Propositional attention atom ``A_a p`` of the PA regime."""
    agent: str
    atom: str


@dataclass(frozen=True, eq=False)
class Not(Formula):
    sub: Formula


@dataclass(frozen=True, eq=False)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=False)
class Believes(Formula):
    agent: str
    sub: Formula


@dataclass(frozen=True, eq=False)
class Attends(Formula):
    """General attention modality ``A_a phi`` (true iff phi is in the attention set)."""
    agent: str
    sub: Formula


@dataclass(frozen=True, eq=False)
class Dyn(Formula):
    """Dynamic modality ``[D]sub``; ``model`` carries its own designation."""
    model: Any
    sub: Formula

    @property
    def kind(self) -> str:
        return self.model.kind


@dataclass(frozen=True)
class Literal:
    atom: str
    positive: bool = True

    def formula(self) -> Formula:
        a = Atom(self.atom)
        return a if self.positive else Not(a)


TOP = Top()
BOT = Not(TOP)


# --------------------------------------------------------------------------
# derived constructors


def neg(f: Formula) -> Formula:
    return Not(f)


def conj(left: Formula, right: Formula) -> Formula:
    return And(left, right)


def disj(left: Formula, right: Formula) -> Formula:
    return Not(And(Not(left), Not(right)))


def implies(left: Formula, right: Formula) -> Formula:
    return Not(And(left, Not(right)))


def iff(left: Formula, right: Formula) -> Formula:
    return And(implies(left, right), implies(right, left))


def diamond(agent: str, f: Formula) -> Formula:
    return Not(Believes(agent, Not(f)))


def big_and(items: Iterable[Formula]) -> Formula:
    """Left-nested conjunction; the empty conjunction is ``T``."""
    result: Formula | None = None
    for f in items:
        result = f if result is None else And(result, f)
    return TOP if result is None else result


# --------------------------------------------------------------------------
# labels for event / world identifiers


def label(x: Any) -> str:
    """Printable name of a world or event identifier (strings, tuples, formulas)."""
    if isinstance(x, str):
        return x
    if isinstance(x, tuple):
        return "(" + ",".join(label(y) for y in x) + ")"
    if isinstance(x, Formula):
        return to_text(x)
    return str(x)


# --------------------------------------------------------------------------
# printer


def to_text(f: Formula) -> str:
    """Canonical ASCII rendering; ``parse(to_text(f)) == f``."""
    out: list[str] = []
    _emit(f, out)
    return "".join(out)


def _emit(f: Formula, out: list[str]) -> None:
    if isinstance(f, Top):
        out.append("T")
    elif isinstance(f, Atom):
        out.append(f.name)
    elif isinstance(f, AttAtom):
        out.append(f"Att[{f.agent}]{f.atom}")
    elif isinstance(f, Not):
        out.append("~")
        _emit(f.sub, out)
    elif isinstance(f, And):
        out.append("(")
        _emit(f.left, out)
        out.append(" & ")
        _emit(f.right, out)
        out.append(")")
    elif isinstance(f, Believes):
        out.append(f"B[{f.agent}]")
        _emit(f.sub, out)
    elif isinstance(f, Attends):
        out.append(f"A[{f.agent}]")
        _emit(f.sub, out)
    elif isinstance(f, Dyn):
        d = f.model
        points = d.designation()
        name = d.name or "anon"
        pts = ",".join(label(e) for e in points) if points else ""
        out.append(f"[@{name}:{pts}]" if pts else f"[@{name}]")
        _emit(f.sub, out)
    else:
        raise TypeError(f"not a formula: {f!r}")


# --------------------------------------------------------------------------
# parser


class LanguageTag(enum.Enum):
    EL = "EL"
    DEL = "DEL"
    ECM = "ECM"
    PA = "PA"
    PAplus = "PAplus"
    GA = "GA"
    GAU = "GAU"


_IDENT = re.compile(r"[a-z][a-z0-9_]*")
_AGENT = re.compile(r"[A-Za-z0-9_]+")
_MODEL_NAME = re.compile(r"[^:\[\]\s]+")


class _Parser:
    def __init__(self, text: str, tag: LanguageTag | None,
                 events: Mapping[str, Any] | None,
                 agents: Iterable[str] | None, atoms: Iterable[str] | None):
        self.text = text
        self.pos = 0
        self.tag = tag
        self.events = events or {}
        self.agents = set(agents) if agents is not None else None
        self.atoms = set(atoms) if atoms is not None else None

    # -- lexical helpers
    def ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.ws()
        return self.text.startswith(s, self.pos)

    def take(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def expect(self, s: str) -> None:
        if not self.take(s):
            raise ParseError(f"expected {s!r}", self.pos)

    def regex(self, rx: re.Pattern, what: str) -> str:
        self.ws()
        m = rx.match(self.text, self.pos)
        if not m:
            raise ParseError(f"expected {what}", self.pos)
        self.pos = m.end()
        return m.group(0)

    def agent(self) -> str:
        start = self.pos
        a = self.regex(_AGENT, "agent identifier")
        if self.agents is not None and a not in self.agents:
            raise ParseError(f"undeclared agent {a!r}", start)
        return a

    def atom(self) -> str:
        start = self.pos
        p = self.regex(_IDENT, "atom")
        if self.atoms is not None and p not in self.atoms:
            raise ParseError(f"undeclared atom {p!r}", start)
        return p

    # -- grammar
    def parse(self) -> Formula:
        f = self.iff()
        self.ws()
        if self.pos != len(self.text):
            raise ParseError("unexpected trailing input", self.pos)
        return f

    def iff(self) -> Formula:
        f = self.imp()
        while self.take("<->"):
            f = iff(f, self.imp())
        return f

    def imp(self) -> Formula:
        f = self.disj()
        if self.take("->"):
            return implies(f, self.imp())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.take("|"):
            f = disj(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.take("&"):
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        self.ws()
        start = self.pos
        if self.take("~"):
            return Not(self.unary())
        if self.take("("):
            f = self.iff()
            self.expect(")")
            return f
        if self.take("[@"):
            return self.dynamic(start)
        if self.take("Att["):
            a = self.agent()
            self.expect("]")
            p = self.atom()
            return self.attention_atom(a, p, start)
        if self.take("A["):
            a = self.agent()
            self.expect("]")
            return self.attends(a, self.unary(), start)
        if self.take("B["):
            a = self.agent()
            self.expect("]")
            return Believes(a, self.unary())
        if self.peek("<") and not self.peek("<->"):
            self.take("<")
            a = self.agent()
            self.expect(">")
            return diamond(a, self.unary())
        if self.text.startswith("T", self.pos) and not _continues(self.text, self.pos + 1):
            self.pos += 1
            return TOP
        if self.text.startswith("F", self.pos) and not _continues(self.text, self.pos + 1):
            self.pos += 1
            return BOT
        if self.pos < len(self.text) and _IDENT.match(self.text, self.pos):
            return Atom(self.atom())
        raise ParseError("expected a formula", self.pos)

    def attention_atom(self, agent: str, atom: str, pos: int) -> Formula:
        if self.tag in (LanguageTag.PA, LanguageTag.PAplus, None):
            return AttAtom(agent, atom)
        raise ParseError(f"attention atoms are not allowed in {self.tag.value}", pos)

    def attends(self, agent: str, sub: Formula, pos: int) -> Formula:
        if self.tag in (LanguageTag.PA, LanguageTag.PAplus):
            if isinstance(sub, Atom):
                return AttAtom(agent, sub.name)
            raise ParseError(f"{self.tag.value} only allows attention to atoms", pos)
        if self.tag in (None, LanguageTag.GA):
            return Attends(agent, sub)
        raise ParseError(f"attention is not allowed in {self.tag.value}", pos)

    def dynamic(self, start: int) -> Formula:
        name = self.regex(_MODEL_NAME, "event model name")
        if name not in self.events:
            raise ParseError(f"unknown event model {name!r}", start)
        model = self.events[name]
        points: list[str] | None = None
        if self.take(":"):
            points = self._designation()
        self.expect("]")
        if points is not None:
            by_label = {label(e): e for e in model.event_ids()}
            try:
                ids = [by_label[p] for p in points]
            except KeyError as exc:
                raise ParseError(f"unknown event {exc.args[0]!r} in {name!r}", start) from None
            model = model.with_designation(ids)
        elif not model.designation():
            raise ParseError(f"event model {name!r} has no designated event", start)
        f = Dyn(model, self.unary())
        if self.tag is not None:
            try:
                check_language(f, self.tag)
            except LanguageError as exc:
                raise ParseError(str(exc), start) from None
        return f

    def _designation(self) -> list[str]:
        """Read comma separated event labels up to the bracket closing ``[@``."""
        depth = 0
        parts: list[str] = []
        buf: list[str] = []
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch in "([":
                depth += 1
            elif ch in ")]":
                if depth == 0:
                    break
                depth -= 1
            if ch == "," and depth == 0:
                parts.append("".join(buf).strip())
                buf = []
            else:
                buf.append(ch)
            self.pos += 1
        parts.append("".join(buf).strip())
        if any(not p for p in parts):
            raise ParseError("empty event label", self.pos)
        return parts


def _continues(text: str, pos: int) -> bool:
    return pos < len(text) and (text[pos].isalnum() or text[pos] in "_[")


def parse(text: str, tag: LanguageTag | str | None = None, *,
          events: Mapping[str, Any] | None = None,
          agents: Iterable[str] | None = None,
          atoms: Iterable[str] | None = None) -> Formula:
    """Parse ``text``.

    With ``tag=None`` every construct is accepted and ``A[a]f`` denotes the
    general attention modality.  Under ``PA``/``PAplus``, ``A[a]p`` denotes
    the attention atom.  ``events`` resolves ``[@name...]`` references;
    ``agents``/``atoms``, when given, are the declared identifiers.
    """
    if isinstance(tag, str):
        tag = LanguageTag(tag)
    f = _Parser(text, tag, events, agents, atoms).parse()
    if tag is not None:
        try:
            check_language(f, tag)
        except LanguageError as exc:
            raise ParseError(str(exc)) from None
    return f


# --------------------------------------------------------------------------
# traversal and metrics


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, (Not, Believes, Attends, Dyn)):
        return (f.sub,)
    if isinstance(f, And):
        return (f.left, f.right)
    return ()


def subformulas(f: Formula) -> Iterator[Formula]:
    """All subformulas of ``f`` (post-order, with repetitions), not entering event models."""
    for c in children(f):
        yield from subformulas(c)
    yield f


def formula_size(f: Formula) -> int:
    """Symbol count of the core rendering.

    Atoms, attention atoms and ``T`` count 1; ``~`` and ``&`` count 1;
    ``B_a``/``A_a`` count 2 (operator and agent); ``[D]phi`` counts the
    size of the event model plus the size of ``phi`` (designation ignored).
    """
    if isinstance(f, (Top, Atom, AttAtom)):
        return 1
    if isinstance(f, Not):
        return 1 + formula_size(f.sub)
    if isinstance(f, And):
        return 1 + formula_size(f.left) + formula_size(f.right)
    if isinstance(f, (Believes, Attends)):
        return 2 + formula_size(f.sub)
    if isinstance(f, Dyn):
        return f.model.size() + formula_size(f.sub)
    raise TypeError(f"not a formula: {f!r}")


def atoms_of(f: Formula) -> set[str]:
    """Atoms occurring in ``f``, including inside attention atoms and event models."""
    out: set[str] = set()
    for g in subformulas(f):
        if isinstance(g, Atom):
            out.add(g.name)
        elif isinstance(g, AttAtom):
            out.add(g.atom)
        elif isinstance(g, Dyn):
            for c in g.model.conditions():
                out |= atoms_of(c)
    return out


def agents_of(f: Formula) -> set[str]:
    """Agents mentioned in ``f`` (modalities, attention atoms, event models)."""
    out: set[str] = set()
    for g in subformulas(f):
        if isinstance(g, (Believes, Attends)):
            out.add(g.agent)
        elif isinstance(g, AttAtom):
            out.add(g.agent)
        elif isinstance(g, Dyn):
            out |= set(g.model.agents())
            for c in g.model.conditions():
                out |= agents_of(c)
    return out


def is_static(f: Formula) -> bool:
    return not any(isinstance(g, Dyn) for g in subformulas(f))


def hierarchy_level(x: Any) -> int:
    """Level in the language hierarchy of a formula or an event model.

    A formula without dynamic modalities has level 0; ``[D]phi`` has level
    ``level(D) + 1`` where ``level(D)`` is the maximal level of D's conditions.
    """
    if not isinstance(x, Formula):
        return max((hierarchy_level(c) for c in x.conditions()), default=0)
    level = 0
    for g in subformulas(x):
        if isinstance(g, Dyn):
            level = max(level, hierarchy_level(g.model) + 1)
    return level


# --------------------------------------------------------------------------
# languages


_ALLOWED_DYN = {
    LanguageTag.EL: (),
    LanguageTag.DEL: ("sem",),
    LanguageTag.ECM: ("ecem",),
    LanguageTag.PA: ("sem",),
    LanguageTag.PAplus: ("ecem",),
    LanguageTag.GA: ("ecem",),
    LanguageTag.GAU: ("gau",),
}


def check_language(f: Formula, tag: LanguageTag | str) -> None:
    """Raise :class:`LanguageError` unless ``f`` belongs to the tagged language."""
    if isinstance(tag, str):
        tag = LanguageTag(tag)
    for g in subformulas(f):
        if isinstance(g, AttAtom) and tag not in (LanguageTag.PA, LanguageTag.PAplus):
            raise LanguageError(f"attention atom {to_text(g)} not in {tag.value}")
        if isinstance(g, Attends) and tag is not LanguageTag.GA:
            raise LanguageError(f"attention modality {to_text(g)} not in {tag.value}")
        if isinstance(g, Dyn):
            if g.kind not in _ALLOWED_DYN[tag]:
                raise LanguageError(f"{g.kind} modality not in {tag.value}")
            for c in g.model.conditions():
                check_language(c, tag)


def in_language(f: Formula, tag: LanguageTag | str) -> bool:
    try:
        check_language(f, tag)
    except LanguageError:
        return False
    return True


def as_attention_atoms(f: Formula) -> Formula:
    """Rewrite ``A_a p`` modalities on atoms into PA attention atoms."""
    if isinstance(f, Attends):
        if isinstance(f.sub, Atom):
            return AttAtom(f.agent, f.sub.name)
        raise LanguageError(f"{to_text(f)}: only attention to atoms has an attention atom")
    if isinstance(f, Not):
        return Not(as_attention_atoms(f.sub))
    if isinstance(f, And):
        return And(as_attention_atoms(f.left), as_attention_atoms(f.right))
    if isinstance(f, Believes):
        return Believes(f.agent, as_attention_atoms(f.sub))
    if isinstance(f, Dyn):
        return Dyn(f.model, as_attention_atoms(f.sub))
    return f


# --------------------------------------------------------------------------
# literal conjunctions


def canonicalize_literal_conjunction(literals: Iterable[Literal]) -> Formula:
    """Conjunction of literals in lexicographic atom order, duplicates merged."""
    chosen: dict[str, bool] = {}
    for lit in literals:
        if chosen.get(lit.atom, lit.positive) != lit.positive:
            raise ValueError(f"atom {lit.atom!r} occurs with both polarities")
        chosen[lit.atom] = lit.positive
    return big_and(Literal(p, chosen[p]).formula() for p in sorted(chosen))


def literals_of(f: Formula | Sequence[Literal]) -> list[Literal]:
    """Literals of a conjunction of literals (``T`` is the empty conjunction)."""
    if not isinstance(f, Formula):
        return list(f)
    if isinstance(f, Top):
        return []
    if isinstance(f, Atom):
        return [Literal(f.name, True)]
    if isinstance(f, Not) and isinstance(f.sub, Atom):
        return [Literal(f.sub.name, False)]
    if isinstance(f, And):
        return literals_of(f.left) + literals_of(f.right)
    raise ValueError(f"{to_text(f)} is not a conjunction of literals")
