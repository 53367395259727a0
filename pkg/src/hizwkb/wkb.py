"""Tau-expansion coefficients of the correction factor f by two independent routes.

* Jack route: expand the character series at Jack parameter alpha, multiply by
  exp(-(1/k) sum tau), and fit the result to orbit sums of tau-graphs.
* Residual route: require the Calogero-Moser operator to annihilate
  e^{x.lambda} Delta(x)^{1-beta/2} f order by order, never touching Jack data.

Both fits are exact linear solves on values at random integer points; the
gauge policy removes the freedom left by the cubic and quartic identities.
"""
from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Callable, Mapping, Sequence

import numpy as np

from .jack import ALPHA_FIELD, ParameterPole, substitute, symbolic_tables, to_fraction
from .jack import _basis as partition_basis
from .partitions import Partition
from .polyring import LAMBDA, X, MPoly, centered_power_sum, exp_truncated, tau_monomial
from ._linalg import solve_affine
from ._kernels import jet_bound, orbit_jets
from .taugraph import GRAPHS, TauGraph, embeddings, enumerate_graphs, orbit_sum, orbit_value, tau_matrix

DEFAULT_ORDER = 4
MAX_SERIES_ORDER = 6


class SingularDuality(ValueError):
    """beta = 2 has no dual Jack parameter."""


class InconsistentSystem(RuntimeError):
    """The fitted series is not a combination of orbit sums (an expansion bug)."""


class Underdetermined(RuntimeError):
    """Freedom remains after the gauge constraints."""


def duality_map(beta) -> Fraction:
    """alpha = 2/(2 - beta)."""
    beta = to_fraction(beta)
    if beta == 2:
        raise SingularDuality("singular duality point; use oracle beta2")
    return Fraction(2) / (2 - beta)


def beta_from_alpha(alpha) -> Fraction:
    alpha = to_fraction(alpha)
    return 2 - Fraction(2) / alpha


# ---------------------------------------------------------------- character series

def _rising(alpha, m: int):
    return prod((1 + q * alpha for q in range(m)), start=ALPHA_FIELD.one)


@lru_cache(maxsize=None)
def paired_kernel_symbolic(m: int, k: int) -> dict[tuple[Partition, Partition], object]:
    """Order-m term of the character series as sum K[mu,nu] s_mu(x~) s_nu(lambda~).

    Values are elements of QQ(a); pairs whose partitions contain a 1 are dropped
    since s_1 of a traceless spectrum vanishes.
    """
    from .jack import ALPHA

    rows, chars = symbolic_tables(m)
    basis = partition_basis(m)
    keep = [i for i, mu in enumerate(basis) if 1 not in mu]
    pref = ALPHA_FIELD.one / (factorial(m) * _rising(ALPHA, m))
    out: dict = {}
    for p in basis:
        if len(p) > k:
            continue  # Z_p vanishes identically in k variables
        row = rows[p]
        dim = sum((c * k ** len(mu) for c, mu in zip(row, basis)), ALPHA_FIELD.zero)
        w = chars[p] / dim
        for i in keep:
            if not row[i]:
                continue
            for j in keep:
                if row[j]:
                    key = (basis[i], basis[j])
                    out[key] = out.get(key, ALPHA_FIELD.zero) + w * row[i] * row[j]
    return {key: v * pref for key, v in out.items() if v}


def paired_series(k: int, alpha, order: int) -> dict[int, dict[tuple[Partition, Partition], Fraction]]:
    """{m: {(mu, nu): coefficient}} for m = 2..order at a rational alpha."""
    if order > MAX_SERIES_ORDER:
        raise ValueError(f"series order limited to {MAX_SERIES_ORDER}")
    alpha = to_fraction(alpha)
    out = {}
    for m in range(2, order + 1):
        block = {}
        for key, v in paired_kernel_symbolic(m, k).items():
            try:
                c = substitute(v, alpha)
            except ParameterPole as exc:
                raise ParameterPole(f"order {m} block {key[0].label()}x{key[1].label()}: {exc}") from None
            if c:
                block[key] = c
        out[m] = block
    return out


def _centered_sums(vals: Sequence, top: int) -> dict[int, Fraction]:
    k = len(vals)
    mean = sum((Fraction(v) for v in vals), Fraction(0)) / k
    cen = [Fraction(v) - mean for v in vals]
    return {n: sum((c ** n for c in cen), Fraction(0)) for n in range(1, top + 1)}


def series_orders_at(k: int, alpha, order: int, x: Sequence, lam: Sequence,
                     paired: Mapping | None = None) -> list[Fraction]:
    """[f_0, ..., f_order] of the character series evaluated at one point."""
    if paired is None:
        paired = paired_series(k, alpha, order)
    sx = _centered_sums(x, order)
    sl = _centered_sums(lam, order)
    F = [Fraction(1), Fraction(0)]
    for m in range(2, order + 1):
        tot = Fraction(0)
        for (mu, nu), c in paired[m].items():
            tot += c * prod((sx[p] for p in mu), start=Fraction(1)) * prod((sl[p] for p in nu), start=Fraction(1))
        F.append(tot)
    tau = tau_matrix(x, lam)
    s_tau = sum((tau[i][j] for i in range(k) for j in range(i + 1, k)), Fraction(0))
    E = [Fraction(1)]
    for j in range(1, order + 1):
        E.append(E[-1] * (-s_tau / k) / j)
    return [sum((E[j] * F[l - j] for j in range(l + 1)), Fraction(0)) for l in range(order + 1)]


def zonal_series(k: int, alpha, order: int) -> MPoly:
    """f = exp(-(1/k) sum tau) * character series, as an exact polynomial."""
    if order < 0:
        raise ValueError("order must be non-negative")
    paired = paired_series(k, alpha, order) if order >= 2 else {}
    cx = {n: centered_power_sum(n, X, k) for n in range(2, order + 1)}
    cl = {n: centered_power_sum(n, LAMBDA, k) for n in range(2, order + 1)}
    body = MPoly.constant(k, 1)
    for m in range(2, order + 1):
        xs: dict[Partition, MPoly] = {}
        ls: dict[Partition, MPoly] = {}
        for (mu, nu), c in paired[m].items():
            if mu not in xs:
                xs[mu] = prod((cx[p] for p in mu), start=MPoly.constant(k, 1))
            if nu not in ls:
                ls[nu] = prod((cl[p] for p in nu), start=MPoly.constant(k, 1))
            body = body + xs[mu].mul(ls[nu]).scale(c)
    if order == 0 or k == 1:
        return body.truncate(order)
    s_tau = MPoly.zero(k)
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            s_tau = s_tau + tau_monomial(i, j, k)
    pre = exp_truncated(s_tau.scale(Fraction(-1, k)), order)
    return pre.mul(body, max_order=order)


# ---------------------------------------------------------------- gauge

def _P(k, a, n):
    return prod((k + m * a for m in range(n)), start=Fraction(1))


def _pin_triangle(k, a):
    return -(1 - a * a / (k - 1)) / _P(k, a, 3)


def _bracket_lambda_i_i(k, a):
    return (1 - 2 * a / (k + a - 1) + 7 * a / (k - 1) + 6 * a * a / ((k - 1) * (k - 2))
            - 2 * a * a / ((k - 2) * (k + a - 1)))


def _pin_ii_i_i(k, a):
    return (1 + a) / 2 * _bracket_lambda_i_i(k, a) / _P(k, a, 4)


def _pin_lambda_ii(k, a):
    return (1 + a) / 2 * (1 + a / (k + a - 1)) * (1 + 3 * a / (k - 1)) / _P(k, a, 4)


def _pin_angle_i(k, a):
    return (1 + a) / 2 * (1 + 3 * a / (k - 1)) / _P(k, a, 4)


def _pin_iii_i(k, a):
    return (1 + a) * (1 + 2 * a) / 6 * (1 + 3 * a / (k - 1)) / _P(k, a, 4)


# Exact relations between a multiple-line graph and the graph obtained by
# splitting every multiple edge into a fan at its shared endpoint: the
# coefficient picks up prod_{m<q} (1 + m alpha)/q! per multiplicity-q edge.
SPLIT_RELATIONS = [
    ("II", "Λ"),
    ("III", "Y"),
    ("∠̲", "Y"),
    ("II,I", "Λ,I"),
    ("≪", "X"),
    ("⊨", "X"),
    ("∠̲̲", "X"),
    ("IIII", "X"),
]


def split_factor(name: str, alpha) -> Fraction:
    return degeneracy_factor(GRAPHS[name], alpha)


Constraint = tuple[dict, Fraction]


@dataclass(frozen=True)
class GaugePolicy:
    identifier: str
    description: str
    pins: Mapping[str, Callable[[int, Fraction], Fraction]]
    split_relations: bool = True

    def constraints(self, k: int, alpha: Fraction, order: int) -> list[Constraint]:
        """Linear constraints {graph: coefficient} = value acting on one order."""
        out = []
        for name, pin in self.pins.items():
            g = GRAPHS[name]
            if g.total_order == order and g.v <= k:
                out.append(({g: Fraction(1)}, pin(k, alpha)))
        if self.split_relations:
            for name, partner in SPLIT_RELATIONS:
                g, h = GRAPHS[name], GRAPHS[partner]
                if g.total_order == order and h.v <= k:
                    out.append(({g: Fraction(1), h: -split_factor(name, alpha)}, Fraction(0)))
        return out


_PAPER_PINS = {
    "△": _pin_triangle,
    "II,I,I": _pin_ii_i_i,
    "III,I": _pin_iii_i,
    "Λ,II": _pin_lambda_ii,
    "∠̲,I": _pin_angle_i,
}
_ZERO_PINS = {name: (lambda k, a: Fraction(0)) for name in _PAPER_PINS}


GAUGES = {
    "paper-default": GaugePolicy(
        "paper-default",
        "pins C[△] to its closed form and each quartic identity direction to the multiple-line "
        "graph that carries the (1+α)-type degeneracy factor times its single-line partner",
        _PAPER_PINS),
    "zero-pin": GaugePolicy(
        "zero-pin", "pins the same five representatives to zero; the split relations are not "
        "compatible with these pins, so only the Jack route can use this gauge", _ZERO_PINS, split_relations=False),
    "pins-only": GaugePolicy(
        "pins-only", "paper-default pins without the split relations", _PAPER_PINS, split_relations=False),
}


def get_gauge(gauge) -> GaugePolicy:
    if isinstance(gauge, GaugePolicy):
        return gauge
    try:
        return GAUGES[gauge]
    except KeyError:
        raise ValueError(f"unknown gauge {gauge!r}; choose from {sorted(GAUGES)}") from None


# ---------------------------------------------------------------- tables

@dataclass
class CoeffTable:
    entries: dict[TauGraph, Fraction]
    k: int
    alpha: Fraction | None
    beta: Fraction | None
    order: int
    pipeline: str
    gauge: str

    def __getitem__(self, name) -> Fraction:
        g = GRAPHS[name] if isinstance(name, str) else name
        return self.entries[g]

    def get(self, name, default=None):
        g = GRAPHS.get(name) if isinstance(name, str) else name
        return self.entries.get(g, default)

    def graphs(self, order: int | None = None) -> list[TauGraph]:
        return [g for g in self.entries if order is None or g.total_order == order]

    def value(self, x: Sequence, lam: Sequence) -> Fraction:
        """f at a point: 1 + sum C[g] [g](x, lambda)."""
        tau = tau_matrix(x, lam)
        return 1 + sum((c * orbit_value(g, x, lam, tau) for g, c in self.entries.items()), Fraction(0))

    def polynomial(self) -> MPoly:
        total = MPoly.constant(self.k, 1)
        for g, c in self.entries.items():
            if c:
                total = total + orbit_sum(g, self.k).scale(c)
        return total

    def diff(self, other: CoeffTable) -> dict[TauGraph, Fraction]:
        keys = set(self.entries) | set(other.entries)
        out = {}
        for g in keys:
            d = self.entries.get(g, Fraction(0)) - other.entries.get(g, Fraction(0))
            if d:
                out[g] = d
        return out

    def rows(self) -> list[dict]:
        """One row per catalogue graph up to the table order.

        A graph with more vertices than k has a vanishing orbit sum, so its
        coefficient is undetermined and reported as None.
        """
        a = self.alpha
        out = []
        for order in range(1, self.order + 1):
            for g in enumerate_graphs(order):
                c = self.entries.get(g)
                if c is None and g.v <= self.k:
                    continue
                lead = largek_leading(g, self.k, a) if a is not None and order <= 4 else None
                out.append({"graph_name": g.name, "edge_list": g.edge_list(), "order": order,
                            "coefficient": c, "leading_largek": lead})
        return out

    def to_json(self) -> dict:
        fmt = lambda v: None if v is None else str(v)
        return {
            "k": self.k, "alpha": fmt(self.alpha), "beta": fmt(self.beta), "order": self.order,
            "pipeline": self.pipeline, "gauge": self.gauge,
            "entries": [{**r, "coefficient": fmt(r["coefficient"]), "leading_largek": fmt(r["leading_largek"])}
                        for r in self.rows()],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["graph_name", "edge_list", "coefficient", "leading_largek"])
        for r in self.rows():
            edges = ";".join(f"{a}-{b}x{m}" for a, b, m in r["edge_list"])
            lead = "" if r["leading_largek"] is None else str(r["leading_largek"])
            coeff = "" if r["coefficient"] is None else str(r["coefficient"])
            w.writerow([r["graph_name"], edges, coeff, lead])
        return buf.getvalue()


def _graphs_for(order: int, k: int) -> list[TauGraph]:
    return [g for g in enumerate_graphs(order) if g.v <= k]


def _points(k: int, n: int, seed: int, distinct_x: bool) -> list[tuple[list[int], list[int]]]:
    # small entries keep the int64 jet kernel exact
    rng = random.Random(seed)
    pts = []
    while len(pts) < n:
        x = rng.sample(range(-k, k + 1), k) if distinct_x else [rng.randint(-3, 3) for _ in range(k)]
        lam = [rng.randint(-3, 3) for _ in range(k)]
        pts.append((x, lam))
    return pts


def _solve_order(graphs: list[TauGraph], rows: list[list], rhs: list, constraints: Sequence[Constraint],
                 label: str) -> dict[TauGraph, Fraction]:
    idx = {g: i for i, g in enumerate(graphs)}
    rows = [list(r) for r in rows]
    rhs = list(rhs)
    for combo, val in constraints:
        r = [0] * len(graphs)
        for g, c in combo.items():
            r[idx[g]] = c
        rows.append(r)
        rhs.append(val)
    sol = solve_affine(rows, rhs)
    if not sol.consistent:
        raise InconsistentSystem(f"{label}: series is not a combination of orbit sums")
    if sol.nullspace:
        free = []
        for vec in sol.nullspace:
            free.append(" + ".join(f"({c}){graphs[i].bracket}" for i, c in enumerate(vec) if c))
        raise Underdetermined(f"{label}: freedom left after gauge: " + "; ".join(free))
    return {g: sol.particular[i] for i, g in enumerate(graphs)}


def tau_coefficients_from_series(k: int, alpha, order: int = DEFAULT_ORDER, gauge="paper-default",
                                 seed: int = 20061) -> CoeffTable:
    """Fit the character series at Jack parameter alpha to tau-graph orbit sums."""
    alpha = to_fraction(alpha)
    pol = get_gauge(gauge)
    paired = paired_series(k, alpha, order) if order >= 2 else {}
    entries: dict[TauGraph, Fraction] = {}
    values_cache: dict = {}
    for l in range(1, order + 1):
        graphs = _graphs_for(l, k)
        if not graphs:
            continue
        pts = _points(k, 2 * len(graphs) + 8, seed + l, distinct_x=False)
        rows, rhs = [], []
        for x, lam in pts:
            key = (tuple(x), tuple(lam))
            if key not in values_cache:
                values_cache[key] = series_orders_at(k, alpha, order, x, lam, paired)
            rows.append([orbit_point_value(g, x, lam) for g in graphs])
            rhs.append(values_cache[key][l])
        entries.update(_solve_order(graphs, rows, rhs, pol.constraints(k, alpha, l), f"order {l}, k={k}"))
    beta = beta_from_alpha(alpha) if alpha else None
    return CoeffTable(entries, k, alpha, beta, order, "jack-duality", pol.identifier)


# ---------------------------------------------------------------- residual route

_INT64_SAFE = 2 ** 62


@lru_cache(maxsize=None)
def orbit_arrays(g: TauGraph, k: int):
    """Embeddings of g in k indices as (a, b, m) int64 arrays with 0-based endpoints."""
    monos = embeddings(g, k)
    e = len(g.edges)
    a = np.zeros((len(monos), e), dtype=np.int64)
    b = np.zeros_like(a)
    m = np.zeros_like(a)
    for r, mono in enumerate(monos):
        for s, (i, j, q) in enumerate(mono):
            a[r, s], b[r, s], m[r, s] = i - 1, j - 1, q
    return a, b, m


def orbit_jet(g: TauGraph, x: Sequence[int], lam: Sequence[int]):
    """Value, x-gradient and x-Laplacian of [g] at an integer point."""
    a, b, m = orbit_arrays(g, len(x))
    xa = np.asarray(x, dtype=np.int64)
    la = np.asarray(lam, dtype=np.int64)
    if jet_bound(len(a), g.total_order, x, lam) >= _INT64_SAFE:
        xa, la = np.asarray(list(x), dtype=object), np.asarray(list(lam), dtype=object)
        m = m.astype(object)
    value, grad, lap = orbit_jets(a, b, m, xa, la)
    return int(value), [int(v) for v in grad], int(lap)


def orbit_point_value(g: TauGraph, x: Sequence[int], lam: Sequence[int]) -> int:
    return orbit_jet(g, x, lam)[0]


def _op_A(jet, x, gamma):
    """Laplacian + 2 gamma sum_{i<j} (d_i - d_j)/(x_i - x_j)."""
    _, grad, lap = jet
    k = len(x)
    tot = Fraction(lap)
    for i in range(k):
        for j in range(i + 1, k):
            tot += 2 * gamma * Fraction(grad[i] - grad[j], x[i] - x[j])
    return tot


def _op_B(jet, x, lam, gamma):
    """2 lambda . grad + 2 gamma sum_{i<j} (lambda_i - lambda_j) f/(x_i - x_j)."""
    value, grad, _ = jet
    k = len(x)
    tot = Fraction(2 * sum(l * g for l, g in zip(lam, grad)))
    for i in range(k):
        for j in range(i + 1, k):
            tot += 2 * gamma * Fraction((lam[i] - lam[j]) * value, x[i] - x[j])
    return tot


def residual_coefficients(k: int, beta, order: int = DEFAULT_ORDER, gauge="paper-default",
                          seed: int = 40213) -> CoeffTable:
    """Solve P psi = 0 for psi = e^{x.lambda} Delta(x)^{1-beta/2} f, order by order.

    Writing gamma = 1 - beta/2, the bi-degree (l-2, l) part of the equation is
    A f_l = -B f_{l-1}; the pole part of A and B carries the common factor gamma,
    the regular part fixes what the pole cancellation alone leaves open.
    """
    beta = to_fraction(beta)
    alpha = duality_map(beta)
    gamma = 1 - beta / 2
    if order > 4:
        raise ValueError("residual route supports order <= 4")
    pol = get_gauge(gauge)
    entries: dict[TauGraph, Fraction] = {}
    prev: dict[TauGraph, Fraction] = {}
    for l in range(1, order + 1):
        graphs = _graphs_for(l, k)
        if not graphs:
            continue
        pts = _points(k, 2 * len(graphs) + 8, seed + 7 * l, distinct_x=True)
        rows, rhs = [], []
        for x, lam in pts:
            rows.append([_op_A(orbit_jet(g, x, lam), x, gamma) for g in graphs])
            if l == 1:
                b = _op_B((1, [0] * k, 0), x, lam, gamma)
            else:
                b = Fraction(0)
                for g, c in prev.items():
                    if c:
                        b += c * _op_B(orbit_jet(g, x, lam), x, lam, gamma)
            rhs.append(-b)
        sol = _solve_order(graphs, rows, rhs, pol.constraints(k, alpha, l), f"residual order {l}, k={k}")
        entries.update(sol)
        prev = sol
    return CoeffTable(entries, k, alpha, beta, order, "residual", pol.identifier)


def residual_system_matrix(k: int, beta, order: int, seed: int = 40213) -> list[list[Fraction]]:
    """Pole-residue rows of the order-``order`` system, sampled at x_1 = x_2.

    The residue of A f_l at x_1 = x_2 is 2 gamma (d_1 - d_2) f_l; dividing by
    2 gamma leaves a matrix that depends on k only.
    """
    graphs = _graphs_for(order, k)
    pts = _points(k, len(graphs) + 4, seed + 11 * order, distinct_x=True)
    out = []
    for x, lam in pts:
        x = [x[0], x[0]] + x[2:]
        row = []
        for g in graphs:
            _, grad, _ = orbit_jet(g, x, lam)
            row.append(Fraction(grad[0] - grad[1]))
        out.append(row)
    return out


# ---------------------------------------------------------------- printed residual relations

def _eq(*terms):
    return list(terms)


# (label, [(graph name, coefficient as function of k)]) ; each sums to zero
RESIDUAL_EQUATIONS: list[tuple[str, list[tuple[str, Callable[[int], int]]]]] = [
    ("order2-a", [("I", lambda k: 1), ("I,I", lambda k: k - 1), ("Λ", lambda k: 1)]),
    ("order2-b", [("I", lambda k: 1), ("Λ", lambda k: k - 1), ("II", lambda k: 2)]),
    ("order3-a", [("I,I", lambda k: 1), ("I,I,I", lambda k: k - 2), ("Λ,I", lambda k: 2)]),
    ("order3-b", [("II", lambda k: 1), ("III", lambda k: 3), ("∠̲", lambda k: k - 1)]),
    ("order3-c", [("Λ", lambda k: 1), ("Λ,I", lambda k: k - 1), ("Y", lambda k: 1)]),
    ("order3-d", [("Λ", lambda k: 1), ("Y", lambda k: k - 2), ("∠̲", lambda k: 4)]),
    ("order3-e", [("Λ", lambda k: 1), ("N", lambda k: k - 2), ("△", lambda k: 1), ("II,I", lambda k: 1),
                  ("∠̲", lambda k: 1)]),
    ("order3-f", [("Λ", lambda k: 1), ("II", lambda k: -1), ("△", lambda k: 2), ("∠̲", lambda k: -1),
                  ("N", lambda k: k - 3), ("II,I", lambda k: -(k - 3))]),
    ("order4-a", [("I,I,I", lambda k: 1), ("I,I,I,I", lambda k: k - 3), ("Λ,I,I", lambda k: 3)]),
    ("order4-b", [("Λ,I", lambda k: 1), ("Λ,I,I", lambda k: k - 2), ("Y,I", lambda k: 1), ("Λ,Λ", lambda k: 1)]),
    ("order4-c", [("Λ,I", lambda k: 1), ("Λ,Λ", lambda k: k - 3), ("M", lambda k: 2), ("Λ,II", lambda k: 2)]),
    ("order4-d", [("I,I,I", lambda k: 2), ("N,I", lambda k: 8), ("Λ,I", lambda k: -1), ("II,I,I", lambda k: 4),
                  ("Λ,Λ", lambda k: -1), ("Y,I", lambda k: -3), ("Λ,I,I", lambda k: k - 6)]),
    ("order4-e", [("II,I", lambda k: 1), ("N", lambda k: 1), ("⊒", lambda k: 3), ("II,II", lambda k: 2),
                  ("□", lambda k: 1), ("Λ,II", lambda k: k - 2), ("M", lambda k: k - 2)]),
    ("order4-f", [("Y", lambda k: 1), ("⊵", lambda k: 2), ("∐̲", lambda k: -2), ("∠̲,I", lambda k: 2),
                  ("⊨", lambda k: 2), ("∠∠", lambda k: k - 3)]),
    ("order4-g", [("∠̲,I", lambda k: 1), ("∐̲", lambda k: -1)]),
    ("order4-h", [("III", lambda k: 1), ("∠̲̲", lambda k: 2), ("△̲", lambda k: -1), ("∐̲", lambda k: 1),
                  ("III,I", lambda k: k - 2)]),
    ("order4-i", [("∠̲", lambda k: 1), ("III", lambda k: -1), ("∐̲", lambda k: k - 3), ("III,I", lambda k: -(k - 3)),
                  ("△̲", lambda k: 2)]),
]


@dataclass
class EquationCheck:
    label: str
    residual: Fraction
    satisfied: bool
    skipped: bool = False
    gauge_invariant: bool = True


@dataclass
class ResidualReport:
    checks: list[EquationCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """All applicable gauge-invariant relations hold."""
        return all(c.satisfied or c.skipped or not c.gauge_invariant for c in self.checks)

    def violated(self, include_gauge_dependent: bool = True) -> list[str]:
        return [c.label for c in self.checks if not c.satisfied and not c.skipped
                and (include_gauge_dependent or c.gauge_invariant)]


def relation_is_gauge_invariant(terms, k: int) -> bool:
    """True when shifting the coefficients along any identity leaves the relation unchanged."""
    from .taugraph import identity_basis

    weights = {GRAPHS[n]: coef(k) for n, coef in terms}
    for order in (3, 4):
        for ident in identity_basis(order, k):
            if sum((w * ident.terms.get(g, 0) for g, w in weights.items()), Fraction(0)):
                return False
    return True


def verify_residual_equations(t: CoeffTable) -> ResidualReport:
    """Evaluate each catalogued cancellation relation on a table.

    Relations are stated for generic k, so one that mentions a graph absent
    from the table (v > k) is skipped.  Relations that are not invariant
    under the identity shifts are flagged; their truth depends on the gauge.
    """
    rep = ResidualReport()
    for label, terms in RESIDUAL_EQUATIONS:
        gs = [GRAPHS[n] for n, _ in terms]
        inv = relation_is_gauge_invariant(terms, t.k)
        if max(g.total_order for g in gs) > t.order or any(g not in t.entries for g in gs):
            rep.checks.append(EquationCheck(label, Fraction(0), False, skipped=True, gauge_invariant=inv))
            continue
        total = Fraction(0)
        for (n, coef), g in zip(terms, gs):
            total += coef(t.k) * t.entries[g]
        rep.checks.append(EquationCheck(label, total, total == 0, gauge_invariant=inv))
    return rep


# ---------------------------------------------------------------- asymptotics

def degeneracy_factor(g: TauGraph, alpha) -> Fraction:
    alpha = to_fraction(alpha)
    out = Fraction(1)
    for _, _, q in g.edges:
        out *= prod((1 + m * alpha for m in range(1, q)), start=Fraction(1)) / factorial(q)
    return out


def largek_leading(g: TauGraph, k: int, alpha) -> Fraction:
    """(-1)^l g / prod_{m<l} (k + m alpha)."""
    alpha = to_fraction(alpha)
    l = g.total_order
    den = prod((k + m * alpha for m in range(l)), start=Fraction(1))
    return (-1) ** l * degeneracy_factor(g, alpha) / den


def asymptotic_f(k: int, beta, x: Sequence, lam: Sequence, large_beta: bool = False):
    """prod_{i<j} [1 - tau_ij/((beta/2 - 1) k)]^{beta/2 - 1}, or exp(-(1/k) sum tau)."""
    import math

    tau = tau_matrix(list(x), list(lam))
    pairs = [tau[i][j] for i in range(k) for j in range(i + 1, k)]
    if large_beta:
        return math.exp(-float(sum(pairs)) / k)
    beta = to_fraction(beta)
    if beta == 2:
        raise SingularDuality("singular duality point; use oracle beta2")
    e = beta / 2 - 1
    exact = e.denominator == 1 and all(isinstance(t, (int, Fraction)) for t in pairs)
    out = Fraction(1) if exact else 1.0
    for t in pairs:
        base = 1 - Fraction(t) / (e * k) if exact else 1 - float(t) / (float(e) * k)
        if base <= 0 and e.denominator != 1:
            raise ValueError("non-positive base with non-integer exponent")
        if exact:
            out *= base ** int(e)
        else:
            out *= float(base) ** float(e)
    return out


# ---------------------------------------------------------------- rational reconstruction in k

def interpolate_in_k(values: Mapping[int, Fraction], denominator: Callable[[int], Fraction],
                     check: int = 2):
    """Rebuild a rational function of k from exact samples given its denominator.

    The numerator is interpolated on all but ``check`` samples; the remaining
    samples must agree or ValueError is raised.  Returns a sympy expression.
    """
    from sympy import Rational, Symbol, cancel, interpolate

    ks = sorted(values)
    if len(ks) <= check:
        raise ValueError("not enough samples")
    fit, hold = ks[: len(ks) - check], ks[len(ks) - check:]
    kk = Symbol("k")
    pts = [(kv, Rational(str(values[kv] * denominator(kv)))) for kv in fit]
    num = interpolate(pts, kk)
    for kv in hold:
        got = Rational(str(values[kv] * denominator(kv)))
        if num.subs(kk, kv) != got:
            raise ValueError(f"reconstruction fails at k={kv}")
    den = Rational(1)
    den_expr = denominator(kk)
    return cancel(num / den_expr * den)


# ---------------------------------------------------------------- beta = 4 phi series

def phi_series_beta4(k: int, order: int) -> dict[tuple[Partition, Partition], Fraction]:
    """alpha -> -1 limit of the character series: {(mu, nu): coefficient of s_mu(x~) s_nu(lambda~)}."""
    if order > MAX_SERIES_ORDER:
        raise ValueError(f"order limited to {MAX_SERIES_ORDER}")
    out = {}
    for m, block in paired_series(k, -1, order).items():
        out.update(block)
    return out
