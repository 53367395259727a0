import pytest
from hypothesis import given, strategies as st

from hizwkb.partitions import Partition, dominance_compare, dominates, enumerate_partitions


def test_empty_partition():
    assert enumerate_partitions(0) == [Partition()]


def test_weight_four_rows():
    assert enumerate_partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_weight_six_has_eleven():
    parts = enumerate_partitions(6)
    assert len(parts) == 11
    assert parts[0] == (6,) and parts[-1] == (1,) * 6


@pytest.mark.parametrize("a,b,expected", [
    ((3,), (2, 1), "greater"),
    ((2, 1, 1), (2, 2), "less"),
    ((4,), (4,), "equal"),
    ((3, 1, 1, 1), (2, 2, 2), "incomparable"),
])
def test_dominance(a, b, expected):
    assert dominance_compare(a, b) == expected


def test_rejects_bad_partitions():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))
    with pytest.raises(ValueError):
        dominance_compare((2,), (1,))


def test_label_and_json():
    p = Partition((2, 1, 1))
    assert p.label() == "[21^2]"
    assert Partition.from_json(p.to_json()) == p
    assert p.conjugate() == (3, 1)


@given(st.integers(min_value=0, max_value=12))
def test_enumeration_is_complete_and_sorted(n):
    parts = enumerate_partitions(n)
    assert len(set(parts)) == len(parts)
    assert all(p.weight == n for p in parts)
    assert parts == sorted(parts, reverse=True)
    # reverse-lex order is a linear extension of dominance
    for i, a in enumerate(parts):
        for b in parts[i + 1:]:
            assert dominance_compare(a, b) in ("greater", "incomparable")


@given(st.integers(min_value=1, max_value=10), st.data())
def test_dominance_antisymmetric_and_conjugation_reverses(n, data):
    parts = enumerate_partitions(n)
    a = data.draw(st.sampled_from(parts))
    b = data.draw(st.sampled_from(parts))
    flip = {"greater": "less", "less": "greater", "equal": "equal", "incomparable": "incomparable"}
    assert dominance_compare(b, a) == flip[dominance_compare(a, b)]
    assert dominates(a, b) == dominates(b.conjugate(), a.conjugate())
    assert a.conjugate().conjugate() == a
