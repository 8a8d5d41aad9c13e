import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from lexforge.analysis import (
    Cut,
    FiniteTree,
    GapClass,
    GapProfile,
    InconsistentProfileError,
    WitnessSide,
    check_infimum,
    check_supremum,
    classify_gap_profile,
    complete_structure,
    cut_index,
    embed_linear_order,
    enumerate_cuts,
    insert_into_cut,
    tree_to_order,
    witness_density,
)
from lexforge.core import (
    EMPTY,
    InconsistentSpecError,
    LexStructure,
    is_substructure,
    random_structure,
    validate,
)
from lexforge.generic import LEFT, RIGHT, saturate

from helpers import POOL, brute_valid, structures

V01 = (F(0), F(1))


# -- cuts ------------------------------------------------------------------------

def test_cut_counts(lex22):
    assert len(enumerate_cuts(EMPTY)) == 1
    assert len(enumerate_cuts(random_structure(3, POOL, 0))) == 4
    cuts = enumerate_cuts(lex22)
    assert len(cuts) == 5
    for k, c in enumerate(cuts):
        assert c.lower == frozenset(lex22.ids[:k])
        assert c.lower | c.upper == frozenset(lex22.ids) and not c.lower & c.upper
        assert cut_index(lex22, c) == k


def test_cut_index_rejects_non_cut(lex22):
    with pytest.raises(ValueError):
        cut_index(lex22, Cut(frozenset({1}), frozenset({0, 2, 3})))


def test_insert_examples():
    s = LexStructure.build([0, 0], {(0, 1): 2}, ids=[1, 0])  # b < a
    cut = enumerate_cuts(s)[1]
    out = insert_into_cut(s, cut, 1, 2, 3)
    assert validate(out).ok and out.ids == (1, 2, 0)
    assert out.f(1, 2) == 2 and out.f(2, 0) == 3
    assert [p for p, c in out.points if c == 0] == [1, 0]
    left = insert_into_cut(s, enumerate_cuts(s)[0], 0, None, 7)
    assert validate(left).ok
    with pytest.raises(InconsistentSpecError) as exc:
        insert_into_cut(s, cut, 0, 3, 3)
    assert exc.value.forced == 2


@given(structures(), st.integers(0, 2**16))
def test_insert_never_breaks_min_law(s, seed):
    rng = random.Random(seed)
    cuts = enumerate_cuts(s)
    cut = rng.choice(cuts)
    k = cut_index(s, cut)
    lo = s.at(k - 1) if k > 0 else None
    hi = s.at(k) if k < len(s) else None
    pool = list(POOL) + [F(5)]
    if lo is not None and hi is not None:
        e = s.f(lo, hi)
        p, q = rng.choice([(e, rng.choice([v for v in pool if v >= e])),
                           (rng.choice([v for v in pool if v >= e]), e)])
    else:
        p = rng.choice(pool) if lo is not None else None
        q = rng.choice(pool) if hi is not None else None
    out = insert_into_cut(s, cut, rng.randrange(2), p, q)
    assert brute_valid(out) and is_substructure(s, out)


# -- completion ------------------------------------------------------------------

def test_completion_examples(lex22):
    one = random_structure(1, POOL, 0)
    assert complete_structure(one) == one
    assert complete_structure(EMPTY) == EMPTY
    two = LexStructure.build([0, 0], {(0, 1): 1})
    out = complete_structure(two)
    assert len(out) == 3 and out.color(out.at(1)) == 1
    assert out.f(out.at(0), out.at(1)) == out.f(out.at(1), out.at(2)) == 1
    big = complete_structure(lex22)
    assert len(big) == 7 and sum(1 for _, c in big.points if c == 0) == 4


def test_completion_custom_rule():
    s = random_structure(5, POOL, 3)
    out = complete_structure(s, lambda v: (v, v + 1))
    assert validate(out).ok and is_substructure(s, out)


@given(structures())
def test_completion_invariants(s):
    out = complete_structure(s)
    assert brute_valid(out)
    assert is_substructure(s, out)
    assert {p for p, c in out.points if c == 0} == {p for p, c in s.points if c == 0}
    for x, y in zip(s.ids, s.ids[1:]):
        assert out.position(y) - out.position(x) == 2


def test_iterated_completion_stays_valid():
    s = random_structure(4, POOL, 8)
    for _ in range(3):
        s = complete_structure(s)
        assert validate(s).ok
    assert len(s) == 25


# -- linear orders ------------------------------------------------------------------

def test_embed_linear_order():
    assert embed_linear_order(0) == EMPTY
    s = embed_linear_order(3, 7)
    assert validate(s).ok and s.values() == (7,)
    assert all(c == 0 for _, c in s.points)
    with pytest.raises(ValueError):
        embed_linear_order(-1)


# -- suprema -------------------------------------------------------------------------

def test_supremum_examples():
    s = LexStructure.build([0, 0], {(0, 1): 1}, ids=[1, 0])  # b < a
    assert check_supremum(s, 0, {1})
    s = LexStructure.build([0, 0, 0], {(1, 5): 1, (5, 0): 2, (1, 0): 1}, ids=[1, 5, 0])  # b < z < a
    assert s.f(5, 0) == 2 and s.f(1, 0) == 1
    assert not check_supremum(s, 0, {1})
    s = LexStructure.build([0, 0, 0], {(5, 1): 1, (1, 0): 3, (5, 0): 1}, ids=[5, 1, 0])  # z < b < a
    assert s.f(1, 0) == 3 and s.f(5, 0) == 1
    assert check_supremum(s, 0, {1})


def test_supremum_requires_y_below():
    s = random_structure(3, POOL, 1)
    with pytest.raises(ValueError):
        check_supremum(s, s.at(0), {s.at(2)})
    with pytest.raises(ValueError):
        check_infimum(s, s.at(2), {s.at(0)})


def test_supremum_criterion_implication_random():
    rng = random.Random(0)
    fired = 0
    for seed in range(400):
        s = random_structure(rng.randint(2, 8), POOL, seed)
        k = rng.randrange(1, len(s))
        x = s.at(k)
        below = list(s.ids[:k])
        Y = set(rng.sample(below, rng.randint(1, len(below))))
        ans = check_supremum(s, x, Y)
        assert ans == (max(s.position(y) for y in Y) == k - 1)
        others = [z for z in below if z not in Y]
        if all(any(s.f(x, y) > s.f(x, z) for y in Y) for z in others):
            fired += 1
            assert ans
        k2 = rng.randrange(0, len(s) - 1)
        above = list(s.ids[k2 + 1:])
        Y2 = set(rng.sample(above, rng.randint(1, len(above))))
        assert check_infimum(s, s.at(k2), Y2) == (min(s.position(y) for y in Y2) == k2 + 1)
    assert fired > 20


# -- gaps ------------------------------------------------------------------------------

def test_gap_examples():
    D, X = WitnessSide.IN_D, WitnessSide.NONE
    assert classify_gap_profile(GapProfile(D, False, False, True, True)) is GapClass.IRREMOVABLE
    assert classify_gap_profile(GapProfile(X, False, False, False, False)) is GapClass.REMOVABLE
    assert classify_gap_profile(GapProfile(X, True, True, True, True)) in (GapClass.REMOVABLE, GapClass.NOT_GAP)


def test_gap_irremovable_iff():
    for side, sup, cof, coi in itertools.product(WitnessSide, (False, True), (False, True), (False, True)):
        got = classify_gap_profile(GapProfile(side, sup, sup, cof, coi))
        want = side is not WitnessSide.NONE and cof and coi and not sup
        assert (got is GapClass.IRREMOVABLE) == want
        if sup:
            assert got is not GapClass.IRREMOVABLE
        with pytest.raises(InconsistentProfileError):
            classify_gap_profile(GapProfile(side, sup, not sup, cof, coi))


# -- trees ----------------------------------------------------------------------------

def test_tree_examples():
    to = tree_to_order(FiniteTree.from_nested([]))
    assert len(to.structure) == 1 and len(to.branch_cut) == 1
    assert set(to.branch_cut.values()) <= {0, 1}
    to = tree_to_order(FiniteTree.complete(2, 2))
    assert len(to.structure) == 4 and len(to.branch_cut) == 4
    assert len(set(to.branch_cut.values())) == 4
    to = tree_to_order(FiniteTree.path(5))
    assert len(to.branch_cut) == 1 and to.is_injective()


def test_tree_depth_values():
    to = tree_to_order(FiniteTree.from_nested([[[], []], []]))
    s = to.structure
    assert s.f(0, 1) == 1 and s.f(0, 2) == 0 and s.f(1, 2) == 0


def random_tree(rng):
    def grow(depth):
        if depth > 5 or rng.random() < 0.35:
            return []
        return [grow(depth + 1) for _ in range(rng.randint(1, 3))]
    return grow(0)


@pytest.mark.parametrize("seed", range(80))
def test_tree_order_injective_random(seed):
    rng = random.Random(seed)
    t = FiniteTree.from_nested(random_tree(rng))
    to = tree_to_order(t)
    if len(to.leaves) > 64:
        pytest.skip("tree larger than the tested family")
    assert to.is_injective()
    assert len(to.branch_cut) == len(t.branches()) == len(to.leaves)
    assert brute_valid(to.structure)
    # leaves come out in lexicographic order of their child-index paths
    paths = []
    for b in t.branches():
        paths.append(tuple(t.children[u].index(v) for u, v in zip(b, b[1:])))
    assert paths == sorted(paths)


def test_tree_families_up_to_64_leaves():
    for arity in range(1, 5):
        for h in range(0, 7):
            if arity ** h > 64:
                continue
            to = tree_to_order(FiniteTree.complete(arity, h))
            assert len(to.branch_cut) == arity ** h and to.is_injective()


def test_tree_round_trip_and_check():
    nested = [[[], [[]]], [], [[], []]]
    t = FiniteTree.from_nested(nested)
    assert t.to_nested() == nested
    with pytest.raises(ValueError):
        FiniteTree([[1], [0]]).check()
    with pytest.raises(ValueError):
        FiniteTree([[], []]).check()


def test_custom_depth_scale():
    to = tree_to_order(FiniteTree.complete(2, 3), scale=lambda d: F(d, 2) - 1)
    assert validate(to.structure).ok and to.structure.values() == (F(-1), F(-1, 2), F(0))


# -- witness density ---------------------------------------------------------------

def test_density_on_saturated():
    out, log = saturate(random_structure(2, V01, 1), V01, 2, seed_rng=2)
    for a in log.born_before(2):
        rep = witness_density(out, a, V01)
        assert all(v is not None for v in rep.values())


def test_density_singleton():
    rep = witness_density(LexStructure(((0, 0),), {}), 0, V01)
    assert len(rep) == 4 and all(v is None for v in rep.values())


def test_density_mixed(lex22):
    rep = witness_density(lex22, 1, [F(0)])
    assert rep[(LEFT, F(0))] is None
    assert rep[(RIGHT, F(0))] == 2
