"""Eliminate a dynamic modality with the reduction axioms, then decide
satisfiability of the result with the K tableau.

Run with ``python3 demos/reduction_and_sat.py``.
"""

from attdel.attention import build_H
from attdel.formula import parse, to_text
from attdel.sat import k_satisfiable, reduce

H = build_H(parse("p"), ["a"])
events = {"H": H}

for text in ("[@H:p]B[a]p", "[@H:p]~B[a]p", "p & Att[a]p & <a>(Att[a]p & p) & [@H:p]B[a]F"):
    f = parse(text, events=events)
    r = reduce(f, simplify=True)
    v = k_satisfiable(r)
    print(text)
    print("  reduced:", to_text(r))
    print("  satisfiable:", v.satisfiable)
    if v.witness is not None:
        print("  witness worlds:", len(v.witness.model.worlds))
