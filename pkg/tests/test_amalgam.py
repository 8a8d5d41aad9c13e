import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from lexforge.amalgam import (
    AmalgamStrategy,
    amalgam_dict,
    amalgamate,
    amalgamate_point,
    check_amalgam,
    joint_embed,
)
from lexforge.core import (
    EMPTY,
    EmbeddingError,
    InvalidStructureError,
    LexStructure,
    lex_model,
    random_structure,
    random_superstructure,
    restrict,
)

from helpers import POOL, brute_embeds, brute_valid, random_strategy, random_triple

A1 = LexStructure(((0, 0),), {})


def point(b_order, fab, c_order, fac, **kw):
    b = LexStructure(tuple((i, 0) for i in b_order), {(0, 1): F(fab)})
    c = LexStructure(tuple((i, 0) for i in c_order), {(0, 2): F(fac)})
    return amalgamate_point(A1, b, c, AmalgamStrategy(**kw))


def f_table(s):
    return {(x, y): s.f(x, y) for i, x in enumerate(s.ids) for y in s.ids[i + 1:]}


def test_right_rule_trace():
    am = point([1, 0], 2, [0, 2], 3)
    assert am.result.ids == (1, 0, 2)
    assert f_table(am.result) == {(1, 0): 2, (1, 2): 2, (0, 2): 3}
    (tr,) = am.traces
    assert tr.m0 == 2 and tr.l is None and tr.u == 0
    assert tr.cases[2] == 2


def test_left_rule_trace():
    am = point([0, 1], 2, [2, 0], 1)
    assert am.result.ids == (2, 0, 1)
    assert am.result.f(2, 1) == 1
    assert am.traces[0].cases[2] == 1


def test_middle_block_trace():
    am = point([0, 1], 2, [0, 2], 2)
    assert am.result.ids == (0, 1, 2)
    assert f_table(am.result) == {(0, 1): 2, (0, 2): 2, (1, 2): 3}
    tr = am.traces[0]
    assert tr.c0 == (2,) and tr.split == 0 and tr.m1 == 3 and tr.anchor == 2


def test_middle_block_other_split():
    am = point([0, 1], 2, [0, 2], 2, c0_split=1)
    assert am.result.ids == (0, 2, 1)
    assert am.result.f(2, 1) == 3


def test_same_structure_three_times():
    s = random_structure(5, POOL, 7)
    am = amalgamate(s, s, s)
    assert am.result == s
    assert dict(am.emb_b.map) == dict(am.emb_c.map) == {p: p for p in s.ids}


def test_two_plus_one_points():
    rng = random.Random(3)
    for seed in range(100):
        a = random_structure(2, POOL, seed)
        b = random_superstructure(a, 2, POOL, rng.randrange(10**6))
        c = random_superstructure(a, 1, POOL, rng.randrange(10**6))
        am = amalgamate(a, b, c)
        assert len(am.result) == 5 and brute_valid(am.result)
        assert check_amalgam(am, a)


def test_empty_base_is_joint_embedding():
    b = random_structure(3, POOL, 1)
    c = random_structure(2, POOL, 2)
    assert amalgamate(EMPTY, b, c).result == joint_embed(b, c).result


def test_joint_embed_examples():
    p = LexStructure(((0, 0),), {})
    q = LexStructure(((0, 1),), {})
    am = joint_embed(p, q)
    assert len(am.result) == 2 and am.result.values() == (0,)
    assert am.emb_b(0) == am.result.at(0) and am.emb_c(0) == am.result.at(1)
    c = random_structure(3, POOL, 5)
    assert joint_embed(EMPTY, c).result == c
    five = lex_model(2, 1, [5])
    r = joint_embed(five, five).result
    assert len(r) == 4
    assert r.f(r.at(0), r.at(2)) == 4 and r.f(r.at(1), r.at(3)) == 4


def test_joint_embed_rejects_high_cross_value():
    s = lex_model(2, 1, [5])
    with pytest.raises(ValueError):
        joint_embed(s, s, AmalgamStrategy(fresh_low=lambda vals: F(6)))


def test_point_requires_one_new_point():
    a = random_structure(2, POOL, 1)
    b = random_superstructure(a, 2, POOL, 2)
    with pytest.raises(EmbeddingError):
        amalgamate_point(a, b, a)


def test_base_must_be_common():
    a = random_structure(2, POOL, 1)
    other = LexStructure(tuple((p, 1 - c) for p, c in a.points), a.fvals)
    with pytest.raises(EmbeddingError):
        amalgamate(a, a, other)
    bad = LexStructure.build([0, 0, 0], {(0, 1): 1, (1, 2): 1, (0, 2): 2})
    with pytest.raises(InvalidStructureError):
        amalgamate(EMPTY, bad, a)


def test_m1_below_bound_rejected():
    with pytest.raises(ValueError):
        point([0, 1], 2, [0, 2], 2, m1_rule=lambda bound, both: bound - 1)


def test_split_clamped_or_rejected():
    assert point([0, 1], 2, [0, 2], 2, c0_split=9).traces[0].split == 1
    with pytest.raises(ValueError):
        point([0, 1], 2, [0, 2], 2, c0_split=9, clamp_split=False)


def test_strategy_sweep():
    """Every split and several admissible m1 choices give sound amalgams."""
    rules = [
        lambda bound, both: bound,
        lambda bound, both: bound + F(1, 2),
        lambda bound, both: bound + 3,
    ]
    for seed in range(300):
        a, b, c = random_triple(seed, max_size=5)
        for split in range(5):
            for rule in rules:
                am = amalgamate(a, b, c, AmalgamStrategy(c0_split=split, m1_rule=rule))
                assert brute_valid(am.result)
                assert brute_embeds(b, am.result, dict(am.emb_b.map))
                assert brute_embeds(c, am.result, dict(am.emb_c.map))
                assert am.commutes_over(a)
                assert all(tr.middle_close for tr in am.traces)


def test_overlapping_rules_agree():
    seen = 0
    for seed in range(1000):
        a, b, c = random_triple(seed)
        for tr in amalgamate(a, b, c).traces:
            for _, f1, f2, below1, below2 in tr.overlaps:
                seen += 1
                assert (f1, below1) == (f2, below2)
    assert seen > 100


def test_middle_block_pairs_are_close():
    for seed in range(500):
        a, b, c = random_triple(seed)
        am = amalgamate(a, b, c, random_strategy(seed))
        for tr in am.traces:
            assert tr.middle_close
            assert all(am.result.f(x, y) >= tr.m0 for i, x in enumerate(tr.c0) for y in tr.c0[i + 1:])


@settings(max_examples=150)
@given(st.integers(0, 10**6))
def test_amalgam_sound_property(seed):
    a, b, c = random_triple(seed, max_size=7)
    am = amalgamate(a, b, c, random_strategy(seed))
    assert brute_valid(am.result)
    assert len(am.result) == len(b) + len(c) - len(a)
    assert brute_embeds(b, am.result, dict(am.emb_b.map))
    assert brute_embeds(c, am.result, dict(am.emb_c.map))
    assert len(set(am.emb_b.map.values()) | set(am.emb_c.map.values())) == len(am.result)


def test_c_ids_clashing_with_b_are_moved():
    a = random_structure(1, POOL, 0)
    b = random_superstructure(a, 2, POOL, 1)
    c = random_superstructure(a, 2, POOL, 2)
    assert set(b.ids) == set(c.ids)
    am = amalgamate(a, b, c)
    assert len(am.result) == 5
    assert restrict(am.result, [am.emb_c(x) for x in c.ids]).relabel(
        {am.emb_c(x): x for x in c.ids}) == c


def test_amalgam_dict():
    am = point([1, 0], 2, [0, 2], 3)
    d = amalgam_dict(am)
    assert d["result"] is am.result and d["emb_b"] == {0: 0, 1: 1}
