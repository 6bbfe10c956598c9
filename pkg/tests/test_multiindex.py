import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle_subst import substitution_witness
from triclass.multiindex import (
    MultiIndex,
    ZERO,
    LeftOrder,
    componentwise_le,
    generates,
    left_compare,
    lex_less,
    lex_sorted,
    parse_multiindex,
    proper_index,
)

indices = st.lists(st.integers(min_value=0, max_value=6), min_size=0, max_size=4).map(MultiIndex)


def test_proper_index():
    assert proper_index(MultiIndex((1, 2, 0))) == 2
    assert proper_index(MultiIndex((0, 0, 0))) == 0
    assert proper_index(MultiIndex((0, 0, 3))) == 3


def test_properness_aware_equality_and_hash():
    assert MultiIndex((3, 0)) == MultiIndex((3,))
    assert hash(MultiIndex((3, 0))) == hash(MultiIndex((3,)))
    assert MultiIndex(()) == MultiIndex((0, 0))
    assert len({MultiIndex((1, 2, 0)), MultiIndex((1, 2))}) == 1


def test_validation():
    with pytest.raises(ValueError):
        MultiIndex((1, -1))
    with pytest.raises(ValueError):
        MultiIndex((0,) * 33)
    MultiIndex((0,) * 32)  # at the cap


def test_lex_less_examples():
    assert lex_less((2, 3, 9), (2, 5, 1))
    assert lex_less((0, 3), (1, 0, 1))
    assert not lex_less((1, 1), (1, 1))


def test_generates_examples():
    assert generates((1, 2, 1), (2, 2, 0))
    assert generates((1, 2, 1), (6, 0, 0))
    assert not generates((0, 3), (0, 2))
    assert not generates((0, 0, 0), (1,))
    # the six indices from the worked expansion of x^(1,2,1)
    for b in [(1, 2, 1), (2, 2, 0), (3, 1, 1), (4, 1, 0), (5, 0, 1), (6, 0, 0)]:
        assert generates((1, 2, 1), b)


def test_zero_index_rules():
    assert generates(ZERO, ZERO)
    assert not generates(ZERO, (1,))
    assert not generates((1,), ZERO)


def test_pure_index_generates_everything_of_its_slot():
    lam = MultiIndex((0, 0, 1))
    for b in [(0, 0, 5), (1, 1, 1), (4, 0, 2), (0, 6, 1)]:
        assert generates(lam, b)


def test_left_compare_examples():
    assert left_compare((1, 1, 2), (1, 1)) is LeftOrder.LEFT_EQUAL
    assert left_compare((1, 1, 1, 1), (1, 1, 2)) is LeftOrder.LEFT_LESS
    assert left_compare((5, 0), (0, 0)) is LeftOrder.INCOMPARABLE
    assert left_compare(ZERO, ZERO) is LeftOrder.LEFT_EQUAL
    assert left_compare((2, 1), (1, 2)) is LeftOrder.INCOMPARABLE


def test_componentwise_le_examples():
    assert componentwise_le((1, 0, 2), (1, 1, 2))
    assert not componentwise_le((2, 0), (1, 1))
    assert componentwise_le((1, 3), (1, 3))


def test_render_and_parse():
    assert str(MultiIndex((0, 3))) == "(0,3)"
    assert str(ZERO) == "0"
    assert parse_multiindex("(1, 2, 0)") == MultiIndex((1, 2))
    assert parse_multiindex("0") == ZERO
    assert parse_multiindex("(0)") == ZERO
    with pytest.raises(ValueError):
        parse_multiindex("(1, -2)")


@given(indices)
def test_generation_reflexive(a):
    assert generates(a, a)


@given(indices, indices)
def test_generation_antisymmetric(a, b):
    if generates(a, b) and generates(b, a):
        assert a == b


@given(indices, indices, indices)
def test_generation_transitive(a, b, c):
    if generates(a, b) and generates(b, c):
        assert generates(a, c)


@given(indices, indices)
def test_componentwise_le_implies_generation_on_equal_slots(a, b):
    if proper_index(a) == proper_index(b) and componentwise_le(a, b):
        assert generates(a, b)


@given(indices, indices)
def test_lower_properness_never_generates_higher(a, b):
    if proper_index(a) < proper_index(b):
        assert not generates(a, b)


@given(indices, indices)
def test_lex_trichotomy(a, b):
    assert (a == b) + lex_less(a, b) + lex_less(b, a) == 1


@given(indices, indices, indices)
def test_lex_transitive(a, b, c):
    if lex_less(a, b) and lex_less(b, c):
        assert lex_less(a, c)


def test_lex_sorted_pads_correctly():
    out = lex_sorted([(1, 1), (0, 3), (0, 0, 2)])
    assert out == [MultiIndex((0, 0, 2)), MultiIndex((0, 3)), MultiIndex((1, 1))]


@settings(max_examples=40, deadline=None)
@given(indices, indices, st.integers(0, 10**6))
def test_substitution_oracle_soundness(a, b, seed):
    # a witness map is definitive evidence of generation; the criterion may
    # never contradict one
    if substitution_witness(a, b, seed=seed, tries=1):
        assert generates(a, b)


def test_substitution_oracle_confirms_positives():
    pairs = [
        ((1, 2, 1), (2, 2, 0)),
        ((1, 2, 1), (6, 0, 0)),
        ((0, 2), (3, 0)),
        ((0, 1), (4, 2)),
        ((1, 1), (2, 0)),
    ]
    for k, (a, b) in enumerate(pairs):
        assert generates(a, b)
        assert substitution_witness(a, b, seed=k)
