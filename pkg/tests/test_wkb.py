from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hizwkb import reference
from hizwkb.oracles import calogero_residual
from hizwkb.polyring import MPoly
from hizwkb.taugraph import GRAPHS, orbit_sum
from hizwkb.wkb import (
    GAUGES, CoeffTable, InconsistentSystem, SingularDuality, asymptotic_f, degeneracy_factor, duality_map,
    interpolate_in_k, largek_leading, residual_coefficients, tau_coefficients_from_series,
    verify_residual_equations, zonal_series,
)

F = Fraction


def test_duality_map():
    assert duality_map(4) == -1
    assert duality_map(1) == 2
    assert duality_map(0) == 1
    with pytest.raises(SingularDuality, match="singular duality point; use oracle beta2"):
        duality_map(2)


def test_zonal_low_orders():
    assert zonal_series(4, 2, 0) == MPoly.constant(4, 1)
    assert zonal_series(5, F(1, 3), 1) == 1 + orbit_sum(GRAPHS["I"], 5).scale(F(-1, 5))
    k = 4
    t = tau_coefficients_from_series(k, 2, 2)
    assert t["II"] == F(3, 2 * k * (k + 2))
    assert t.polynomial() == zonal_series(k, 2, 2)


@pytest.mark.parametrize("k,alpha", [(5, F(2)), (6, F(1, 2)), (7, F(-1))])
def test_jack_route_examples(k, alpha):
    t = tau_coefficients_from_series(k, alpha, 3)
    a = alpha
    assert t["I"] == F(-1, k)
    assert t["Λ"] == 1 / (k * (k + a))
    assert t["N"] == -(1 + a / (k - 1)) / (k * (k + a) * (k + 2 * a))


def test_iiii_at_beta_one():
    for k in (5, 6):
        t = tau_coefficients_from_series(k, 2, 4)
        assert t["IIII"] == F(35, 8 * k * (k + 2) * (k + 4) * (k + 6))


def test_residual_route_examples():
    for k in (5, 6):
        t = residual_coefficients(k, 4, 3)
        assert t["I,I"] == F(k - 2, k * (k - 1) ** 2)
        assert t["Y"] == F(-1, k * (k - 1) * (k - 2))
    t = residual_coefficients(6, 4, 3)
    assert t["I,I,I"] == -F(36 - 36 + 10, 6 * 25 * 16)


def test_absent_graphs_are_dropped():
    t = tau_coefficients_from_series(4, 2, 4)
    assert all(g.v <= 4 for g in t.entries)
    row = {r["graph_name"]: r for r in t.rows()}
    assert row["I,I,I"]["coefficient"] is None


def test_k3_closed_form():
    t = tau_coefficients_from_series(3, -1, 3)
    assert {g.name: c for g, c in t.entries.items() if c} == reference.K3_BETA4
    assert not calogero_residual(3, 4, t)


def test_gauges_differ_only_by_identities():
    k = 6
    a = tau_coefficients_from_series(k, 2, 4, gauge="paper-default")
    b = tau_coefficients_from_series(k, 2, 4, gauge="zero-pin")
    assert a.polynomial() == b.polynomial()
    assert a.diff(b)


def test_pins_only_gauge_leaves_residual_route_underdetermined():
    from hizwkb.wkb import Underdetermined
    with pytest.raises(Underdetermined):
        residual_coefficients(6, 4, 3, gauge="pins-only")


def test_residual_equations_examples():
    k = 5
    t = CoeffTable({GRAPHS[n]: v for n, v in reference.alpha_table(k, 2).items()}, k, F(2), F(1), 4, "printed", "paper-default")
    rep = verify_residual_equations(t)
    assert "order2-a" not in rep.violated()
    a6 = CoeffTable({GRAPHS[n]: f(6) for n, f in reference.BETA4_TABLE.items()}, 6, F(-1), F(4), 4, "printed", "paper-default")
    check = {c.label: c for c in verify_residual_equations(a6).checks}
    assert check["order4-a"].satisfied
    assert a6["I,I,I"] + 3 * a6["I,I,I,I"] + 3 * a6["Λ,I,I"] == 0
    bad = tau_coefficients_from_series(5, 2, 4)
    bad.entries[GRAPHS["Λ"]] += 1
    assert "order2-a" in verify_residual_equations(bad).violated()


def test_gauge_dependent_relation_is_flagged():
    t = tau_coefficients_from_series(6, 2, 4)
    rep = verify_residual_equations(t)
    flagged = [c.label for c in rep.checks if not c.gauge_invariant]
    assert flagged == ["order4-g"]
    assert rep.ok


def test_largek_and_degeneracy():
    a = F(1, 2)
    assert degeneracy_factor(GRAPHS["II,II"], a) == (1 + a) ** 2 / 4
    assert largek_leading(GRAPHS["I"], 7, a) == F(-1, 7)
    k = 9
    assert largek_leading(GRAPHS["X"], k, a) == 1 / (k * (k + a) * (k + 2 * a) * (k + 3 * a))
    assert tau_coefficients_from_series(k, a, 4)["X"] == largek_leading(GRAPHS["X"], k, a)


def test_asymptotic_f():
    x, lam = [0.3, -0.1, 0.2, 0.0], [0.1, 0.4, -0.2, 0.3]
    assert asymptotic_f(4, 4, [0] * 4, [0] * 4) == 1
    tau = [(x[i] - x[j]) * (lam[i] - lam[j]) for i in range(4) for j in range(i + 1, 4)]
    import math
    assert asymptotic_f(4, 4, x, lam) == pytest.approx(math.prod(1 - t / 4 for t in tau))
    assert asymptotic_f(4, 7, x, lam, large_beta=True) == pytest.approx(math.exp(-sum(tau) / 4))


def test_interpolation_recovers_table_a():
    from sympy import Symbol, simplify
    k = Symbol("k")
    vals = {kk: tau_coefficients_from_series(kk, -1, 3)["Y"] for kk in range(5, 11)}
    expr = interpolate_in_k(vals, lambda kk: kk * (kk - 1) * (kk - 2))
    assert simplify(expr + 1 / (k * (k - 1) * (k - 2))) == 0


def test_csv_and_json_formats():
    t = tau_coefficients_from_series(5, -1, 3)
    lines = t.to_csv().splitlines()
    assert lines[0] == "graph_name,edge_list,coefficient,leading_largek"
    assert len([r for r in t.rows() if r["order"] == 3]) == 8
    doc = t.to_json()
    assert doc["entries"][0] == {"graph_name": "I", "edge_list": [[1, 2, 1]], "order": 1,
                                 "coefficient": "-1/5", "leading_largek": "-1/5"}


@given(st.sampled_from([F(2), F(1, 2), F(3), F(-1), F(2, 3)]), st.integers(5, 7))
def test_order_one_and_two_closed_forms(a, k):
    t = tau_coefficients_from_series(k, a, 2)
    b = reference.alpha_table(k, a)
    for name in ("I", "Λ", "II", "I,I"):
        assert t[name] == b[name]


def test_sorted_gauges():
    assert {"paper-default", "zero-pin", "pins-only"} <= set(GAUGES)
