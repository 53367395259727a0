from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hizwkb.polyring import (
    LAMBDA, X, DiffSpec, MPoly, apply_diff, centered_power_sum, exp_truncated, tau_monomial,
)
from hizwkb.taugraph import GRAPHS, orbit_sum


def test_tau_monomial_expansion():
    x1, x2 = MPoly.var(1, X, 2), MPoly.var(2, X, 2)
    l1, l2 = MPoly.var(1, LAMBDA, 2), MPoly.var(2, LAMBDA, 2)
    assert tau_monomial(1, 2, 2) == x1 * l1 - x1 * l2 - x2 * l1 + x2 * l2
    assert tau_monomial(1, 3, 3).evaluate([1, 0, 0], [0, 0, 1]) == -1
    assert tau_monomial(2, 3, 4) == tau_monomial(3, 2, 4)
    with pytest.raises(IndexError):
        tau_monomial(1, 1, 3)


def test_centered_power_sums():
    assert not centered_power_sum(1, X, 5)
    k, q = 7, 3
    pt = [1] * q + [0] * (k - q)
    lam = [0] * (k - q) + [1] * q
    s2 = centered_power_sum(2, X, k).evaluate(pt, lam)
    assert s2 == Fraction(q * (k - q), k)
    s3 = centered_power_sum(3, X, k).evaluate(pt, lam) * centered_power_sum(3, LAMBDA, k).evaluate(pt, lam)
    assert s3 == Fraction(q * q * (q - k) ** 2 * (2 * q - k) ** 2, k ** 4)


def test_exp_truncated():
    assert exp_truncated(MPoly.zero(2), 4) == MPoly.constant(2, 1)
    p = MPoly.var(1, X, 1) * MPoly.var(1, LAMBDA, 1)
    assert exp_truncated(p, 2) == 1 + p + (p * p).scale(Fraction(1, 2))
    s = sum((tau_monomial(i, j, 3) for i, j in ((1, 2), (1, 3), (2, 3))), MPoly.zero(3))
    e = exp_truncated(s.scale(Fraction(-1, 3)), 3)
    assert e.bihomogeneous(3, 3) == (s * s * s).scale(Fraction(-1, 162))


def test_apply_diff_examples():
    d = DiffSpec((1, 1), (2, 2))
    assert apply_diff(d, orbit_sum(GRAPHS["II"], 4)) == 4
    for k in (3, 4, 6):
        s = centered_power_sum(2, X, k) * centered_power_sum(2, LAMBDA, k)
        assert apply_diff(d, s) == Fraction(4 * (k - 1) ** 2, k * k)
    assert apply_diff(d, MPoly.constant(3, 1)) == 0


def test_json_round_trip():
    p = tau_monomial(1, 2, 3) * tau_monomial(2, 3, 3) + Fraction(1, 7)
    assert MPoly.from_json(3, p.to_json()) == p


coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def polys(draw, k=2):
    out = MPoly.zero(k)
    for _ in range(draw(st.integers(0, 4))):
        e = tuple(draw(st.integers(0, 2)) for _ in range(2 * k))
        out = out + MPoly(k, {e: draw(coeffs)})
    return out


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert not (a - a)
    assert all(v for v in a.terms.values())


@given(polys(), polys(), st.lists(coeffs, min_size=2, max_size=2), st.lists(coeffs, min_size=2, max_size=2))
def test_evaluation_is_a_homomorphism(a, b, x, lam):
    assert (a * b).evaluate(x, lam) == a.evaluate(x, lam) * b.evaluate(x, lam)
    assert (a + b).evaluate(x, lam) == a.evaluate(x, lam) + b.evaluate(x, lam)


@given(polys(), polys())
def test_leibniz_rule(a, b):
    lhs = (a * b).dx(1)
    assert lhs == a.dx(1) * b + a * b.dx(1)
