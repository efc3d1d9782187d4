"""Write the hand-built worked-example fixtures under fixtures/worked/ (plain dicts, no library code)."""
import json
from itertools import product
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "fixtures" / "worked"


def clique(ws):
    return [[x, y] for x in ws for y in ws]


def start():
    box1 = [f"u{int(p)}{int(q)}" for p, q in product([1, 0], repeat=2)]
    box2 = [f"v{int(ap)}{int(aq)}" for ap, aq in product([1, 0], repeat=2)]
    worlds = [{"id": "w", "val": ["p", "q", "Att[a]p", "Att[b]p", "Att[b]q"]}]
    for u in box1:
        val = [x for x, on in (("p", u[1] == "1"), ("q", u[2] == "1")) if on]
        worlds.append({"id": u, "val": val + ["Att[a]p", "Att[a]q", "Att[b]p", "Att[b]q"]})
    for v in box2:
        val = ["p", "q", "Att[b]p", "Att[b]q"]
        val += ["Att[a]p"] if v[1] == "1" else []
        val += ["Att[a]q"] if v[2] == "1" else []
        worlds.append({"id": v, "val": val})
    a = [["w", u] for u in box1] + clique(box1) + [[v, u] for v in box2 for u in box1]
    b = [["w", "w"]] + [["w", v] for v in box2] + clique(box1) + clique(box2)
    return {"worlds": worlds, "rel": {"a": a, "b": b}, "point": "w"}


# after_pq / reveal_start share a skeleton: the actual world, four upper classes in
# which everything is attended, and a lower box where b attends to p and q
# while a's attention varies.
UPPER = {
    "pq?": [("p", "q"), ("p",)],
    "pq": [("p", "q")],
    "p?q": [("p", "q"), ("q",)],
    "p?q?": [("p", "q"), ("p",), ("q",), ()],
}
LOWER = {  # world -> (A_a p, A_a q, upper class seen by a)
    "l10": (True, False, "pq?"),
    "l11": (True, True, "pq"),
    "l01": (False, True, "p?q"),
    "l00": (False, False, "p?q?"),
}


def skeleton():
    worlds, a, b = [], [], []
    upper_ids = {}
    for cls, vals in UPPER.items():
        ids = [f"{cls}:{''.join(v) or '-'}" for v in vals]
        upper_ids[cls] = ids
        for i, v in zip(ids, vals):
            worlds.append((i, list(v), (True, True), "upper"))
        a += clique(ids)
        b += clique(ids)
    for lw, (ap, aq, cls) in LOWER.items():
        worlds.append((lw, ["p", "q"], (ap, aq), "lower"))
        a += [[lw, u] for u in upper_ids[cls]]
    b += clique(list(LOWER))
    worlds.insert(0, ("x", ["p", "q"], (True, False), "actual"))
    a += [["x", u] for u in upper_ids["pq?"]]
    b += [["x", "x"]] + [["x", lw] for lw in LOWER]
    return worlds, a, b


def after_pq():
    worlds, a, b = skeleton()
    out = []
    for i, val, (ap, aq), _ in worlds:
        att = ["Att[b]p", "Att[b]q"]
        att += ["Att[a]p"] if ap else []
        att += ["Att[a]q"] if aq else []
        out.append({"id": i, "val": val + att})
    return {"worlds": out, "rel": {"a": a, "b": b}, "point": "x"}


def reveal_start():
    worlds, a, b = skeleton()
    out = []
    for i, val, (ap, aq), _ in worlds:
        att_a = (["p"] if ap else []) + (["q"] if aq else [])
        # the enrichment: b attends to B_a p, ~B_a p, B_a q, ~B_a q at every
        # b-accessible world, which here is every world
        att_b = ["p", "q", "B[a]p", "~B[a]p", "B[a]q", "~B[a]q"]
        out.append({"id": i, "val": val, "att": {"a": att_a, "b": att_b}})
    return {"worlds": out, "rel": {"a": a, "b": b}, "point": "x"}


def h_edges(items, att, agent):
    """Edges of the attention model over literal items (hand rule: for T <= S)."""
    from itertools import combinations
    subsets = [c for k in range(len(items) + 1) for c in combinations(items, k)]

    def conj(xs):
        if not xs:
            return "T"
        s = xs[0]
        for x in xs[1:]:
            s = f"({s} & {x})"
        return s
    edges = []
    for S in subsets:
        for k in range(len(S) + 1):
            for T in combinations(S, k):
                rest = [x for x in S if x not in T]
                src = conj([att(agent, x) for x in T] + [f"~{att(agent, x)}" for x in rest])
                edges.append({"from": conj(list(S)), "src": src, "to": conj(list(T)),
                              "tgt": conj([att(agent, x) for x in T])})
    return [conj(list(S)) for S in subsets], edges


def h_model(items, agents):
    att = lambda a, x: f"Att[{a}]{x.lstrip('~')}"
    events, _ = h_edges(items, att, agents[0])
    return {"kind": "ecem", "events": events, "pre": {e: e for e in events},
            "edges": {a: h_edges(items, att, a)[1] for a in agents},
            "designated": [events[-1]]}


def t1p_h_p():
    """T1'(H(p)) for one agent, derived by hand: the event p splits by whether
    a attends to p (maximal consistent sets over {Att[a]p, ~Att[a]p})."""
    top, att, inatt = ["T", "T"], ["p", "(Att[a]p & ~~Att[a]p)"], ["p", "~Att[a]p"]
    name = lambda e: f"({e[0]},{e[1]})"
    return {"kind": "sem", "events": [top, att, inatt],
            "pre": {name(top): "(T & T)", name(att): "(p & (Att[a]p & ~~Att[a]p))",
                    name(inatt): "(p & ~Att[a]p)"},
            "edges": {"a": [[top, top], [att, att], [inatt, top]]},
            "designated": [att, inatt]}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    docs = {
        "start.json": {"agents": ["a", "b"], "atoms": ["p", "q"], "models": {"start": start()},
                      "formulas": {"start_attention": "A[a]p & ~A[a]q",
                                   "start_belief": "B[b]B[a](A[a]p & A[a]q)"}},
        "h_pq.json": {"events": {"H_pq": h_model(["p", "q"], ["a", "b"])}},
        "after_pq.json": {"models": {"after_pq": after_pq()}},
        "reveal_start.json": {"models": {"reveal_start": reveal_start()}},
        "hp.json": {"events": {"H_p": h_model(["p"], ["a", "b"]),
                               "H_p_a": h_model(["p"], ["a"]),
                               "T1p_H_p_a": t1p_h_p()}},
    }
    for name, doc in docs.items():
        (OUT / name).write_text(json.dumps(doc, indent=2) + "\n")


if __name__ == "__main__":
    main()
