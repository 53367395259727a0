"""The eleven acceptance criteria, each at its stated tolerance and time budget."""
import random
import time
from fractions import Fraction

import pytest
from sympy import Rational, Symbol, cancel, factor, sympify

from conftest import ACCEPTANCE
from hizwkb import oracles, reference
from hizwkb.jack import character, dimension_factored, jack_power_sum
from hizwkb.partitions import Partition
from hizwkb.taugraph import GRAPHS, enumerate_graphs, identity_basis, orbit_sum
from hizwkb.wkb import (
    duality_map, interpolate_in_k, residual_coefficients, tau_coefficients_from_series,
)

F = Fraction
a_sym, k_sym = Symbol("a"), Symbol("k")

# test manifest: every random choice below is pinned here
SEEDS = {"alpha": 20240611, "mc_u": 12345, "mc_o": 12345, "mc_sp": 12345}
MC_SAMPLES = 200_000
X3, L3 = (0.3, 0.1, -0.2), (0.25, 0.0, -0.15)


def report(n, ok, elapsed, budget, detail):
    within = elapsed <= budget
    status = "PASS" if ok and within else "FAIL"
    ACCEPTANCE[n] = f"criterion {n:2d}: {status}  ({elapsed:.1f}s / {budget}s)  {detail}"
    print(ACCEPTANCE[n])
    assert ok, detail
    assert within, f"over time budget: {elapsed:.1f}s > {budget}s"


def _q(x):
    return Rational(x.numerator, x.denominator)


def test_1_jack_goldens():
    t0 = time.perf_counter()
    rng = random.Random(SEEDS["alpha"])
    alphas = set()
    while len(alphas) < 5:
        alphas.add(F(rng.randint(-9, 9), rng.randint(1, 7)))
    alphas.discard(F(0))
    while len(alphas) < 5:
        alphas.add(F(rng.randint(1, 9), rng.randint(1, 7)))
    bad = []
    cells = skipped = 0
    for n, rows in reference.JACK_ROWS.items():
        cols = [Partition(c) for c in reference.JACK_COLUMNS[n]]
        for part, coeffs, chi, dim in rows:
            p = Partition(part)
            dim_ours = dimension_factored(p)
            dim_printed = sympify(dim)
            for al in sorted(alphas):
                av = _q(al)
                try:
                    poly = jack_power_sum(p, al)
                    chi_ours = character(p, al)
                except ZeroDivisionError:
                    skipped += 1  # a pole of this row at this alpha
                    continue
                for c, v in zip(cols, coeffs):
                    cells += 1
                    if poly[c] != F(str(sympify(v).subs(a_sym, av))):
                        bad.append((p.label(), "coeff", c.label(), str(al)))
                cells += 2
                try:
                    chi_printed = F(str(sympify(chi).subs(a_sym, av)))
                except (ZeroDivisionError, TypeError):
                    chi_printed = None
                if chi_printed != chi_ours:
                    bad.append((p.label(), "chi", str(al)))
                if cancel(dim_ours.subs(a_sym, av) - dim_printed.subs(a_sym, av)) != 0:
                    bad.append((p.label(), "dimension", str(al)))
    rows = sorted({b[:2] for b in bad})
    detail = (f"{cells} cells at alpha={sorted(map(str, alphas))}, {skipped} row evaluations at poles; "
              f"mismatched rows: {rows or 'none'}")
    report(1, not bad, time.perf_counter() - t0, 10, detail)


def test_2_beta4_table_both_pipelines():
    t0 = time.perf_counter()
    bad = []
    for k in (5, 6, 7, 8):
        jack = tau_coefficients_from_series(k, -1, 4)
        resid = residual_coefficients(k, 4, 4)
        for t in (jack, resid):
            for order in range(1, 5):
                for g in enumerate_graphs(order):
                    if g.v > k:
                        continue
                    want = reference.BETA4_TABLE[g.name](k) if g.name in reference.BETA4_TABLE else 0
                    if t[g] != want:
                        bad.append((t.pipeline, k, g.name))
    detail = f"k=5..8, orders 1-4, jack and residual; mismatches: {bad or 'none'}"
    report(2, not bad, time.perf_counter() - t0, 120, detail)


def test_3_alpha_table_jack_pipeline():
    t0 = time.perf_counter()
    bad, outside = [], []
    for k in (5, 6, 7, 8):
        for al in (F(2), F(1, 2), F(3), F(-1)):
            t = tau_coefficients_from_series(k, al, 4)
            printed = reference.alpha_table(k, al)
            diff = {n: v - t[n] for n, v in printed.items() if GRAPHS[n].v <= k and v != t[n]}
            if not diff:
                continue
            bad.append((k, str(al), sorted(diff)))
            delta = sum((orbit_sum(GRAPHS[n], k).scale(d) for n, d in diff.items()), orbit_sum(GRAPHS["I"], k).scale(0))
            if delta:
                outside.append((k, str(al)))
    detail = (f"mismatches {bad or 'none'}; not an identity-coset direction at {outside}"
              if outside else f"mismatches confined to identity cosets: {bad or 'none'}")
    report(3, not outside, time.perf_counter() - t0, 300, detail)


def test_4_duality():
    t0 = time.perf_counter()
    bad = []
    for beta in (F(1), F(4), F(6)):
        for k in (5, 6, 7, 8):
            d = residual_coefficients(k, beta, 4).diff(tau_coefficients_from_series(k, duality_map(beta), 4))
            if d:
                bad.append((str(beta), k, sorted(g.name for g in d)))
    report(4, not bad, time.perf_counter() - t0, 300, f"beta in 1,4,6, k=5..8; differences: {bad or 'none'}")


def test_5_identities():
    t0 = time.perf_counter()
    bad = [(k, order, i) for k in range(4, 9) for order in (3, 4)
           for i, ident in enumerate(identity_basis(order, k)) if ident.expand(k)]
    report(5, not bad, time.perf_counter() - t0, 60, f"I_3 and 4 quartic identities at k=4..8; nonzero: {bad or 'none'}")


def test_6_k3_closed_form():
    t0 = time.perf_counter()
    t = tau_coefficients_from_series(3, -1, 3)
    got = {g.name: c for g, c in t.entries.items() if c}
    residual = oracles.calogero_residual(3, 4, t)
    ok = got == reference.K3_BETA4 and not residual
    report(6, ok, time.perf_counter() - t0, 10, f"coefficients {got}; calogero residual terms {len(residual)}")


def test_7_finiteness():
    t0 = time.perf_counter()
    bad = []
    for k in (5, 6, 7, 8):
        t4 = tau_coefficients_from_series(k, -1, 4)
        bad += [("beta=4", k, g.name) for g, c in t4.entries.items() if g.max_multiplicity >= 2 and c]
        t6 = tau_coefficients_from_series(k, F(-1, 2), 4)
        bad += [("beta=6", k, g.name) for g, c in t6.entries.items() if g.max_multiplicity >= 3 and c]
    report(7, not bad, time.perf_counter() - t0, 60, f"k=5..8; nonzero forbidden coefficients: {bad or 'none'}")


def test_8_beta2_consistency():
    t0 = time.perf_counter()
    rng = random.Random(7)
    bad = []
    for k in (2, 3):
        for _ in range(3):
            x = [F(rng.randint(-9, 9), rng.randint(1, 9)) + i for i in range(k)]
            lam = [F(rng.randint(-9, 9), rng.randint(1, 9)) - 2 * i for i in range(k)]
            s = oracles.hciz_beta2_series(x, lam, order=12)
            if s["permutation"] != s["determinant"]:
                bad.append(("series", k))
    want = {1: {}, 2: {}, 3: {(): 81}, 4: {}, 5: {(2,): F(3645, 4)}, 6: {(3,): 81 ** 2}}
    for p, w in want.items():
        got = {tuple(mu): c for (mu, nu), c in oracles.perm_sum_power(3, p).items() if mu == nu}
        full = oracles.perm_sum_power(3, p)
        if got != w or len(full) != len(w):
            bad.append(("perm", p, full))
    report(8, not bad, time.perf_counter() - t0, 30, f"order-12 series k=2,3 and perm sums p=1..6; failures: {bad or 'none'}")


def _phi_denominator(order):
    dens = {2: lambda k: 2 * (k - 1) ** 2,
            3: lambda k: 3 * (k - 1) ** 2 * (k - 2) ** 2,
            4: lambda k: 8 * k * (k - 1) ** 2 * (k - 2) ** 3 * (k - 3) ** 2}
    return dens[order]


def test_9_phi_series():
    t0 = time.perf_counter()
    bad = []
    samples = {k: oracles.phi_series_beta4(k, 4) for k in range(5, 17)}
    for key in samples[5]:
        order = sum(key[0])
        expr = interpolate_in_k({k: s[key] for k, s in samples.items()}, _phi_denominator(order))
        # the interpolant and the printed formula are rational of bounded degree; agreement on
        # 30 further integers identifies them
        for kk in range(17, 47):
            if Rational(expr.subs(k_sym, kk)) != _q(reference.phi_beta4(kk, 4)[tuple(map(tuple, key))]):
                bad.append(("symbolic", tuple(map(tuple, key))))
                break
    for k in (6, 7):
        ours, ref = oracles.phi_series_beta4(k, 6), reference.phi_beta4(k, 6)
        bad += [(f"k={k}", tuple(map(tuple, key))) for key in sorted(set(ours) | set(ref))
                if ours.get(key, 0) != ref.get(key, 0)]
    report(9, not bad, time.perf_counter() - t0, 600,
           f"orders 2-4 symbolic in k, order <= 6 at k=6,7; mismatched cells: {bad or 'none'}")


def test_10_monte_carlo():
    t0 = time.perf_counter()
    u = oracles.mc_haar_integral(X3, "u", MC_SAMPLES, SEEDS["mc_u"], lam=L3)
    exact_u = oracles.hciz_beta2_exact(X3, L3)
    o = oracles.mc_haar_integral(X3, "o", MC_SAMPLES, SEEDS["mc_o"], lam=L3)
    series_o, bound_o = oracles.beta1_series_value(X3, L3, order=4)
    sp = oracles.mc_haar_integral(X3, "sp", MC_SAMPLES, SEEDS["mc_sp"], lam=L3)
    exact_sp = oracles.beta4_k3_value(X3, L3)
    checks = {
        "u": abs(u.mean - exact_u) <= 3 * u.stderr,
        "o": abs(o.mean - series_o) <= max(3 * o.stderr, bound_o),
        "sp": abs(sp.mean - exact_sp) <= 3 * sp.stderr,
    }
    detail = (f"u {u.mean:.7f}+-{u.stderr:.1e} vs {exact_u:.7f}; "
              f"o {o.mean:.7f}+-{o.stderr:.1e} vs {series_o:.7f} (bound {bound_o:.1e}); "
              f"sp {sp.mean:.7f}+-{sp.stderr:.1e} vs {exact_sp:.7f}")
    report(10, all(checks.values()), time.perf_counter() - t0, 180, detail)


def test_11_calogero_frontier():
    t0 = time.perf_counter()
    lows = {}
    for beta in (4, 6):
        t = tau_coefficients_from_series(4, duality_map(beta), 4)
        lows[beta] = oracles.lowest_lambda_degree(oracles.calogero_residual(4, beta, t))
    ok = all(v is None or v > 4 for v in lows.values())
    report(11, ok, time.perf_counter() - t0, 120, f"k=4 lowest lambda-degree of the residual numerator: {lows}")
