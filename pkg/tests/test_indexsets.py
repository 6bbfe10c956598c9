import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triclass.indexsets import (
    ComplementResult,
    EmptySlotError,
    MixedPropernessError,
    complement_of_generated,
    essential_sets,
    in_generated,
    least,
    proper_indices_of_order,
    pure_witness,
    weakly_essential_alg1,
    weakly_essential_alg2,
)
from triclass.multiindex import MultiIndex, generates, proper_index


def mis(*tuples):
    return frozenset(MultiIndex(t) for t in tuples)


def test_least_examples():
    assert least(mis((1, 3), (2, 1)), 2) == MultiIndex((1, 3))
    assert least(mis((0, 2, 1), (1, 0, 1)), 3) == MultiIndex((0, 2, 1))
    assert least(mis((4, 7)), 2) == MultiIndex((4, 7))


def test_least_errors():
    with pytest.raises(EmptySlotError):
        least(frozenset(), 2)
    with pytest.raises(MixedPropernessError):
        least(mis((1, 3), (2, 0)), 2)


def test_in_generated_examples():
    assert in_generated(mis((1, 2, 1)), MultiIndex((3, 1, 1)))
    assert not in_generated(mis((0, 3)), MultiIndex((0, 2)))
    assert not in_generated(frozenset(), MultiIndex((1,)))


def test_weakly_essential_alg1_examples():
    assert weakly_essential_alg1(mis((0, 3), (1, 1), (0, 9)), 2) == mis((0, 3), (1, 1))
    assert weakly_essential_alg1(mis((1, 2, 1), (2, 2, 0)), 3) == mis((1, 2, 1))
    assert weakly_essential_alg1(mis((2, 5)), 2) == mis((2, 5))


def test_weakly_essential_ignores_other_slots():
    # (3,0) is a proper 1-index; the slot-2 computation disregards it
    assert weakly_essential_alg2(mis((0, 3), (1, 1), (3, 0)), 2) == mis((0, 3), (1, 1))


def test_alg2_on_full_order_range():
    I = {a for t in range(1, 5) for a in proper_indices_of_order(2, t)}
    assert weakly_essential_alg2(I, 2) == mis((0, 1))


def test_algorithms_agree_on_examples():
    for I, i in [
        (mis((0, 3), (1, 1), (0, 9)), 2),
        (mis((1, 2, 1), (2, 2, 0)), 3),
        (mis((2, 5)), 2),
    ]:
        assert weakly_essential_alg1(I, i) == weakly_essential_alg2(I, i)


def _random_uniform_set(rng, max_size=40):
    i = rng.randint(1, 4)
    out = set()
    for _ in range(rng.randint(1, max_size)):
        t = rng.randint(1, 7)
        e = [0] * i
        for _ in range(t):
            e[rng.randrange(i)] += 1
        if e[i - 1] == 0:
            e[i - 1] = 1
        out.add(MultiIndex(e))
    return out, i


def test_algorithms_agree_randomized():
    rng = random.Random(7)
    for _ in range(150):
        I, i = _random_uniform_set(rng)
        assert weakly_essential_alg1(I, i) == weakly_essential_alg2(I, i)


def test_weakly_essential_invariants():
    rng = random.Random(3)
    for _ in range(60):
        I, i = _random_uniform_set(rng, max_size=25)
        W = weakly_essential_alg1(I, i)
        assert W <= I
        for a in W:
            for b in W:
                if a != b:
                    assert not generates(a, b)
        for b in I:
            assert in_generated(W, b)


def test_essential_sets_top_slot_passthrough():
    W = [frozenset(), frozenset(), mis((0, 3), (1, 1))]
    E = essential_sets(W)
    assert E[2] == mis((0, 3), (1, 1))


def test_essential_sets_lower_slot_pruning():
    # (1,1) generates (2,0) = (2), so the slot-1 entry dies
    W = [frozenset(), mis((2,)), mis((1, 1))]
    E = essential_sets(W)
    assert E[1] == frozenset()
    assert E[2] == mis((1, 1))
    # but an ungenerated slot-1 entry survives
    W = [frozenset(), mis((1,)), mis((0, 2))]
    E = essential_sets(W)
    assert E[1] == mis((1,))


def test_complement_examples():
    # strict slot-2 complement of {(0,3),(1,1)}: all proper 2-indices of
    # order < 3 that are not generated
    res = complement_of_generated(mis((0, 3), (1, 1)), 2)
    assert res.finite
    assert res.indices == mis((0, 1), (0, 2))
    res = complement_of_generated(mis((0, 1)), 2)
    assert res.finite and res.indices == frozenset()
    res = complement_of_generated(mis((1, 1)), 2)
    assert not res.finite
    with pytest.raises(ValueError):
        list(res)


def test_pure_witness():
    assert pure_witness(mis((0, 3), (1, 1)), 2) == 3
    assert pure_witness(mis((1, 1)), 2) is None
    assert pure_witness(mis((0, 0, 2), (0, 0, 5)), 3) == 2


def test_complement_members_not_generated_and_high_orders_generated():
    E = mis((0, 0, 2), (1, 1, 1))
    res = complement_of_generated(E, 3)
    assert res.finite
    for a in res.indices:
        assert not in_generated(E, a)
    for t in range(2, 6):
        for a in proper_indices_of_order(3, t):
            if a not in res.indices:
                assert in_generated(E, a)


def test_proper_indices_of_order():
    assert set(proper_indices_of_order(2, 2)) == mis((1, 1), (0, 2))
    assert set(proper_indices_of_order(1, 3)) == mis((3,))
    assert set(proper_indices_of_order(0, 0)) == {MultiIndex(())}
    assert list(proper_indices_of_order(2, 0)) == []


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.sets(st.integers(0, 80), min_size=1, max_size=12))
def test_algorithms_agree_hypothesis(i, seeds):
    rng = random.Random(11)
    I = set()
    for s in seeds:
        rng.seed(s)
        t = rng.randint(1, 6)
        e = [0] * i
        for _ in range(t):
            e[rng.randrange(i)] += 1
        if e[i - 1] == 0:
            e[i - 1] = 1
        I.add(MultiIndex(e))
    assert weakly_essential_alg1(I, i) == weakly_essential_alg2(I, i)
