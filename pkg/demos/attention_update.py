"""Propositional attention: update the two-agent model with H(p & q).

Run with ``python3 demos/attention_update.py`` from the repository root.
"""

from pathlib import Path

from attdel import io
from attdel.attention import build_F, build_H
from attdel.equivalence import bisimilar
from attdel.formula import as_attention_atoms, parse, to_text
from attdel.semantics import satisfies, update

ws = io.load_workspace(Path(__file__).resolve().parent.parent / "fixtures" / "worked")
before = ws.model("start")

for text in ("A[a]p & ~A[a]q", "B[b]B[a](A[a]p & A[a]q)"):
    f = as_attention_atoms(parse(text))
    print(f"before: {to_text(f):40} {satisfies(before, f)}")

H = build_H(parse("p & q"), ["a", "b"])
F = build_F(parse("p & q"), ["a", "b"])
print(f"H(p & q): {len(H.events)} events, size {H.size()}")
print(f"F(p & q): {len(F.events)} events, size {F.size()}")

after_h = update(before, H)
after_f = update(before, F)
print(f"updated models: {len(after_h.model.worlds)} worlds (H), {len(after_f.model.worlds)} worlds (F)")
print("H and F updates bisimilar:", bisimilar(after_h.pointed, after_f.pointed) is not None)

for text in ("B[a]p & ~B[a]q & ~B[a]~q", "~B[b]Att[a]p & ~B[b]~Att[a]p"):
    print(f"after:  {text:40} {satisfies(after_h.pointed, parse(text))}")
