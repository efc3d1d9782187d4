"""Translate between event-model classes and confirm the products agree.

Run with ``python3 demos/translations.py``.
"""

from attdel.attention import build_F, build_H
from attdel.battery import transform_problem
from attdel.formula import parse
from attdel.models import random_model
from attdel.transforms import t1_sem_to_ecem, t1p_ecem_to_sem

H = build_H(parse("p"), ["a"])
E = t1p_ecem_to_sem(H)
print(f"H(p): {len(H.events)} events, size {H.size()}")
print(f"T1'(H(p)): {len(E.events)} events, size {E.size()}")
for e in E.events:
    print("  ", e, "pre:", E.pre[e])

F = build_F(parse("p"), ["a", "b"])
C = t1_sem_to_ecem(F)
print(f"F(p): size {F.size()}; T1(F(p)): size {C.size()}")

bad = 0
for seed in range(200):
    pm = random_model(num_worlds=3, density=0.5, attention_atoms=True, agents=("a",), seed=seed)
    bad += transform_problem(H, pm, "t1p") is not None
print("random models where the T1' product differs:", bad)
