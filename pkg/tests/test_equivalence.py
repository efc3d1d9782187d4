import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from attdel.attention import build_F, build_H
from attdel.equivalence import (bisimilar, bisimulation_partition, check_bisimulation,
                                check_isomorphism, isomorphic, update_equivalence_battery,
                                world_label)
from attdel.events import trivial_ecem
from attdel.formula import parse
from attdel.models import AttentionModel, KripkeModel, Pointed, RandomModelParams, random_model
from attdel.semantics import update

seeds = st.integers(0, 2 ** 31 - 1)


def naive_bisimulation(m1, m2):
    """Greatest bisimulation by deleting bad pairs until a fixpoint."""
    Z = {(w, v) for w in m1.worlds for v in m2.worlds if world_label(m1, w) == world_label(m2, v)}
    agents = set(m1.agents) | set(m2.agents)
    changed = True
    while changed:
        changed = False
        for w, v in sorted(Z, key=repr):
            ok = all(any((w2, v2) in Z for v2 in m2.successors(a, v)) for a in agents
                     for w2 in m1.successors(a, w)) and \
                all(any((w2, v2) in Z for w2 in m1.successors(a, w)) for a in agents
                    for v2 in m2.successors(a, v))
            if not ok:
                Z.discard((w, v))
                changed = True
    return Z


def _pm(seed, prefix="w"):
    rng = random.Random(seed)
    return random_model(RandomModelParams(num_worlds=rng.randint(1, 4), density=rng.random(),
                                          seed=seed, world_prefix=prefix))


# --------------------------------------------------------------------------
# bisimulation


def test_model_bisimilar_to_itself():
    pm = random_model(num_worlds=5, seed=2)
    w = bisimilar(pm, pm)
    assert w is not None and (pm.point, pm.point) in w.relation
    assert check_bisimulation(pm.model, pm.model, w.relation, (pm.point, pm.point)) == []


def test_distinct_single_worlds_not_bisimilar():
    m1 = KripkeModel(worlds=("w",), rel={"a": []}, val={"w": {"p"}})
    m2 = KripkeModel(worlds=("v",), rel={"a": []}, val={"v": set()})
    assert bisimilar(m1.at("w"), m2.at("v")) is None
    loop = KripkeModel(worlds=("v",), rel={"a": [("v", "v")]}, val={"v": {"p"}})
    assert bisimilar(m1.at("w"), loop.at("v")) is None


@given(seeds, seeds)
def test_bisimilar_matches_naive_fixpoint(s1, s2):
    pm1, pm2 = _pm(s1), _pm(s2, "v")
    Z = naive_bisimulation(pm1.model, pm2.model)
    w = bisimilar(pm1, pm2)
    assert (w is not None) == ((pm1.point, pm2.point) in Z)
    if w is not None:
        assert set(w.relation) == Z
        assert check_bisimulation(pm1.model, pm2.model, w.relation, (pm1.point, pm2.point)) == []


def test_partition_blocks_by_attention_sets():
    p = parse("p")
    m1 = AttentionModel(worlds=("w",), rel={"a": []}, val={}, att={("a", "w"): {p}})
    m2 = AttentionModel(worlds=("v",), rel={"a": []}, val={}, att={("a", "v"): set()})
    part = bisimulation_partition([m1, m2])
    assert part[(0, "w")] != part[(1, "v")]
    with pytest.raises(ValueError):
        bisimilar(m1.at("w"), KripkeModel(worlds=("x",), rel={}, val={}).at("x"))


def test_check_bisimulation_reports_problems():
    m1 = KripkeModel(worlds=("w", "u"), rel={"a": [("w", "u")]}, val={"u": {"p"}})
    m2 = KripkeModel(worlds=("v", "x"), rel={"a": [("v", "x")]}, val={"x": {"p"}})
    assert check_bisimulation(m1, m2, {("w", "v"), ("u", "x")}) == []
    probs = check_bisimulation(m1, m2, {("w", "v")}, points=("w", "v"))
    assert any("[Forth]" in s for s in probs) and any("[Back]" in s for s in probs)
    assert any("[Atom]" in s for s in check_bisimulation(m1, m2, {("w", "x")}))
    assert any("not related" in s for s in check_bisimulation(m1, m2, set(), points=("w", "v")))
    assert any("unknown world" in s for s in check_bisimulation(m1, m2, {("zz", "v")}))


def test_start_model_F_and_H_updates_bisimilar(worked_ws):
    m = worked_ws.model("start")
    r1 = update(m, build_F(parse("p & q"), ["a", "b"]))
    r2 = update(m, build_H(parse("p & q"), ["a", "b"]))
    assert bisimilar(r1.pointed, r2.pointed) is not None
    assert bisimilar(r2.pointed, worked_ws.model("after_pq")) is not None


# --------------------------------------------------------------------------
# isomorphism


def test_isomorphism_on_renamed_model():
    pm = random_model(num_worlds=5, density=0.5, seed=11)
    m = pm.model
    ren = {w: f"z{i}" for i, w in enumerate(reversed(m.worlds))}
    m2 = KripkeModel(worlds=tuple(ren[w] for w in m.worlds),
                     rel={a: [(ren[w], ren[v]) for w, v in pairs] for a, pairs in m.rel.items()},
                     val={ren[w]: m.valuation(w) for w in m.worlds})
    w = isomorphic(m, m2)
    assert w is not None and check_isomorphism(m, m2, w.bijection) == []
    assert isomorphic(m, m2, candidate=ren) is not None


def test_isomorphism_cardinality_and_bound():
    m1 = random_model(num_worlds=3, seed=1).model
    m2 = random_model(num_worlds=4, seed=1).model
    assert isomorphic(m1, m2) is None
    big = random_model(num_worlds=13, seed=1).model
    with pytest.raises(ValueError):
        isomorphic(big, big)
    assert isomorphic(big, big, bound=13) is not None
    assert isomorphic(big, big, candidate={w: w for w in big.worlds}) is not None


def test_candidate_validation():
    m1 = KripkeModel(worlds=("w", "u"), rel={"a": [("w", "u")]}, val={"u": {"p"}})
    m2 = KripkeModel(worlds=("v", "x"), rel={"a": [("v", "x")]}, val={"x": {"p"}})
    assert isomorphic(m1, m2, candidate={"w": "x", "u": "v"}) is None
    assert "not total" in check_isomorphism(m1, m2, {"w": "v"})[0]
    assert "bijection" in check_isomorphism(m1, m2, {"w": "v", "u": "v"})[0]
    probs = check_isomorphism(m1, m2, {"w": "x", "u": "v"})
    assert any("labels differ" in s for s in probs) and any("edge" in s for s in probs)


@given(seeds)
def test_isomorphic_models_are_bisimilar(seed):
    pm = _pm(seed)
    rng = random.Random(seed)
    perm = list(pm.model.worlds)
    rng.shuffle(perm)
    ren = dict(zip(pm.model.worlds, perm))
    m = pm.model
    m2 = KripkeModel(worlds=m.worlds, rel={a: [(ren[w], ren[v]) for w, v in ps] for a, ps in m.rel.items()},
                     val={ren[w]: m.valuation(w) for w in m.worlds})
    iso = isomorphic(m, m2)
    assert iso is not None
    assert bisimilar(Pointed(m, pm.point), Pointed(m2, iso.bijection[pm.point])) is not None


# --------------------------------------------------------------------------
# update-equivalence battery


def test_battery_F_vs_H_no_counterexample():
    params = RandomModelParams(num_worlds=3, agents=("a", "b"), attention_atoms=True)
    v = update_equivalence_battery(build_F(parse("p"), "ab"), build_H(parse("p"), "ab"),
                                   count=50, params=params, seed=3, max_worlds=4)
    assert v.ok and v.checked == 50 and v.counterexample is None


def test_battery_finds_counterexample():
    params = RandomModelParams(num_worlds=3, agents=("a", "b"), attention_atoms=True)
    v = update_equivalence_battery(build_H(parse("p"), "ab"), trivial_ecem("ab"), count=50,
                                   params=params, seed=3)
    assert not v.ok and v.counterexample is not None
    r1 = update(v.counterexample, build_H(parse("p"), "ab"))
    r2 = update(v.counterexample, trivial_ecem("ab"))
    assert r1.applicable != r2.applicable or bisimilar(r1.pointed, r2.pointed) is None
    assert "sample_seed" in v.details


def test_battery_reflexive_and_factory():
    d = build_H(parse("p & q"), "ab")
    assert update_equivalence_battery(d, d, count=20).ok
    v = update_equivalence_battery(d, d, count=5,
                                   model_factory=lambda s: random_model(num_worlds=2, seed=s,
                                                                        attention_atoms=True))
    assert v.ok and v.checked == 5
