import pytest
from hypothesis import given, strategies as st

from lieflow.multiindex import (
    MultiIndex,
    add,
    degree,
    mi,
    sub_checked,
    sup_dist,
    sup_norm,
    unit,
    zero,
)


def index_strategy(p: int):
    return st.tuples(*([st.integers(0, 9)] * p)).map(MultiIndex)


def test_add_examples():
    assert add(mi(1, 2), mi(0, 3)) == mi(1, 5)
    assert add(mi(0, 0), mi(4, 1)) == mi(4, 1)
    assert add(zero(3), unit(3, 2)) == mi(0, 1, 0)


def test_add_dimension_mismatch():
    with pytest.raises(ValueError):
        add(mi(1), mi(1, 2))


def test_sub_checked_examples():
    assert sub_checked(mi(2, 1), mi(1, 0)) == mi(1, 1)
    assert sub_checked(mi(0, 1), mi(1, 0)) is None
    assert sub_checked(mi(3), mi(3)) == mi(0)


def test_degree_sup_norm_unit():
    assert degree(mi(2, 0, 3)) == 5
    assert sup_norm(mi(2, 0, 3)) == 3
    assert unit(2, 1) == mi(1, 0)
    with pytest.raises(ValueError):
        unit(2, 3)
    with pytest.raises(ValueError):
        unit(2, 0)


def test_invalid_entries():
    with pytest.raises(ValueError):
        MultiIndex((1, -1))
    with pytest.raises(ValueError):
        MultiIndex(())


@given(index_strategy(3), index_strategy(3))
def test_add_commutative(a, b):
    assert add(a, b) == add(b, a)


@given(index_strategy(2), index_strategy(2), index_strategy(2))
def test_add_associative(a, b, c):
    assert add(add(a, b), c) == add(a, add(b, c))


@given(index_strategy(3))
def test_zero_neutral(a):
    assert add(a, zero(3)) == a


@given(index_strategy(3), index_strategy(3))
def test_sub_checked_roundtrip(a, b):
    assert sub_checked(add(a, b), b) == a


@given(index_strategy(3), index_strategy(3))
def test_degree_additive(a, b):
    assert degree(add(a, b)) == degree(a) + degree(b)


@given(index_strategy(2), index_strategy(2))
def test_sup_dist_symmetric(a, b):
    assert sup_dist(a, b) == sup_dist(b, a)


def test_lexicographic_ordering():
    assert mi(0, 2) < mi(1, 0)
    assert mi(1, 0) < mi(1, 1)
    assert sorted([mi(1, 1), mi(0, 2), mi(1, 0)]) == [mi(0, 2), mi(1, 0), mi(1, 1)]


def test_json_form():
    assert mi(2, 0, 3).to_json() == [2, 0, 3]
