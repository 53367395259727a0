from fractions import Fraction
from math import factorial, prod

import pytest
from hypothesis import given, strategies as st

from hizwkb.jack import (
    ParameterPole, alpha_pairing, character, dimension, jack_data, jack_power_sum, verify_sum_rule,
)
from hizwkb.partitions import Partition, dominance_compare, enumerate_partitions

alphas = st.fractions(min_value=Fraction(1, 5), max_value=5, max_denominator=6)


@given(alphas)
def test_low_weight_rows(a):
    z2 = jack_power_sum((2,), a)
    assert z2.coeffs == {(1, 1): 1, (2,): a}
    z21 = jack_power_sum((2, 1), a)
    assert z21[(1, 1, 1)] == 1 and z21[(2, 1)] == a - 1 and z21[(3,)] == -a
    z111 = jack_power_sum((1, 1, 1), a)
    assert z111.coeffs == {(1, 1, 1): 1, (2, 1): -3, (3,): 2}


@given(alphas)
def test_characters(a):
    assert character((1, 1), a) == a
    assert character((2, 1), a) == 6 * a * (1 + a) / (2 + a)
    assert character((3,), a) == 1


@given(alphas, st.integers(1, 9))
def test_dimensions(a, k):
    assert dimension((2,), a, k) == k * (k + a)
    assert dimension((2, 2), a, k) == k * (k + a) * (k + a - 1) * (k - 1)
    assert dimension((1,), a, k) == k


def test_dimension_vanishes_below_length():
    assert dimension((1, 1), 2, 1) == 0
    assert dimension((2, 1, 1), Fraction(1, 3), 2) == 0


@pytest.mark.parametrize("q,a,k", [(1, 3, 2), (3, 2, 5), (6, Fraction(1, 3), 4), (5, Fraction(7, 2), 6)])
def test_sum_rule(q, a, k):
    assert verify_sum_rule(q, a, k)


def test_pole_is_reported():
    with pytest.raises(ParameterPole):
        verify_sum_rule(3, Fraction(-1, 2), 4)


@given(st.integers(1, 6), alphas)
def test_normalisation_and_triangularity(n, a):
    for p in enumerate_partitions(n):
        d = jack_data(p, a)
        assert d.poly[(1,) * n] == 1
        assert d.dimension_at(4) == d.poly.evaluate(k=4)


@given(st.integers(2, 5), alphas)
def test_orthogonality(n, a):
    rows = [jack_power_sum(p, a) for p in enumerate_partitions(n)]
    for i, u in enumerate(rows):
        for v in rows[i + 1:]:
            assert alpha_pairing(u, v, a) == 0


def test_alpha_one_is_schur():
    # Schur functions: coefficient of p_mu is chi^lambda(mu) / z_mu, rescaled so p_1^n has coefficient 1
    s21 = jack_power_sum((2, 1), 1)
    assert s21.coeffs == {(1, 1, 1): 1, (3,): -1}
    s3 = jack_power_sum((3,), 1)
    assert s3.coeffs == {(1, 1, 1): 1, (2, 1): 3, (3,): 2}


def test_sum_rule_for_power_of_trace_at_alpha_two():
    # (tr X)^q expansion: the characters times dimensions add up to k^q
    k, a, q = 5, Fraction(2), 4
    norm = prod(1 + m * a for m in range(1, q))
    total = sum(character(p, a) * dimension(p, a, k) for p in enumerate_partitions(q))
    assert total / norm == k ** q
