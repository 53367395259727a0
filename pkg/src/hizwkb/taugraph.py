"""Symmetry classes of tau-monomials as canonical multigraphs.

A monomial prod tau_{ab}^{m_ab} is a multigraph on the indices it touches; its
bracket [g] is the sum of all distinct monomials obtained by relabelling the
vertices injectively into 1..k.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import Iterable, Mapping, Sequence

from .polyring import DiffSpec, MPoly, apply_diff, tau_monomial

Edge = tuple[int, int, int]


@dataclass(frozen=True, order=True)
class TauGraph:
    """Canonical multigraph: sorted (a, b, multiplicity) with a < b on vertices 1..v."""

    edges: tuple[Edge, ...]

    @property
    def v(self) -> int:
        return max((b for _, b, _ in self.edges), default=0)

    @property
    def total_order(self) -> int:
        return sum(m for _, _, m in self.edges)

    @property
    def max_multiplicity(self) -> int:
        return max((m for _, _, m in self.edges), default=0)

    @property
    def name(self) -> str:
        return GRAPH_NAMES.get(self, "{" + ",".join(f"{a}{b}" + (f"^{m}" if m > 1 else "") for a, b, m in self.edges) + "}")

    @property
    def bracket(self) -> str:
        return f"[{self.name}]"

    def edge_list(self) -> list[list[int]]:
        return [list(e) for e in self.edges]

    def __repr__(self) -> str:
        return f"TauGraph({self.bracket})"


def _components(edges: Sequence[Edge]) -> list[list[Edge]]:
    parent: dict[int, int] = {}

    def find(a):
        while parent.setdefault(a, a) != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b, _ in edges:
        parent[find(a)] = find(b)
    groups: dict[int, list[Edge]] = {}
    for e in edges:
        groups.setdefault(find(e[0]), []).append(e)
    return list(groups.values())


def _canon_component(edges: Sequence[Edge]) -> tuple[Edge, ...]:
    verts = sorted({a for a, _, _ in edges} | {b for _, b, _ in edges})
    best = None
    for perm in permutations(range(1, len(verts) + 1)):
        relabel = dict(zip(verts, perm))
        form = tuple(sorted((min(relabel[a], relabel[b]), max(relabel[a], relabel[b]), m) for a, b, m in edges))
        if best is None or form < best:
            best = form
    return best


def canonicalize(edges: Iterable[Sequence[int]]) -> TauGraph:
    """Canonical representative of the isomorphism class of a labelled multigraph.

    Accepts (a, b) or (a, b, multiplicity); repeated pairs add their multiplicities.
    """
    merged: dict[tuple[int, int], int] = {}
    for e in edges:
        a, b = int(e[0]), int(e[1])
        m = int(e[2]) if len(e) > 2 else 1
        if a == b:
            raise ValueError(f"self-loop at vertex {a}: tau_ii is undefined")
        if m < 1:
            raise ValueError("multiplicities must be positive")
        key = (min(a, b), max(a, b))
        merged[key] = merged.get(key, 0) + m
    if not merged:
        return TauGraph(())
    return _canonical_from_merged(tuple(sorted((a, b, m) for (a, b), m in merged.items())))


@lru_cache(maxsize=None)
def _canonical_from_merged(edges: tuple[Edge, ...]) -> TauGraph:
    comps = [_canon_component(c) for c in _components(edges)]
    comps.sort(key=lambda c: (-max(b for _, b, _ in c), c))
    out: list[Edge] = []
    offset = 0
    for c in comps:
        out.extend((a + offset, b + offset, m) for a, b, m in c)
        offset += max(b for _, b, _ in c)
    return TauGraph(tuple(sorted(out)))


# ---------------------------------------------------------------- catalogue

_CATALOGUE_SPEC: list[tuple[str, list[Edge]]] = [
    ("I", [(1, 2, 1)]),
    ("Λ", [(1, 2, 1), (1, 3, 1)]),
    ("II", [(1, 2, 2)]),
    ("I,I", [(1, 2, 1), (3, 4, 1)]),
    ("III", [(1, 2, 3)]),
    ("∠̲", [(1, 2, 2), (1, 3, 1)]),
    ("△", [(1, 2, 1), (1, 3, 1), (2, 3, 1)]),
    ("Y", [(1, 2, 1), (1, 3, 1), (1, 4, 1)]),
    ("N", [(1, 2, 1), (1, 3, 1), (3, 4, 1)]),
    ("II,I", [(1, 2, 2), (3, 4, 1)]),
    ("Λ,I", [(1, 2, 1), (1, 3, 1), (4, 5, 1)]),
    ("I,I,I", [(1, 2, 1), (3, 4, 1), (5, 6, 1)]),
    ("X", [(1, 2, 1), (1, 3, 1), (1, 4, 1), (1, 5, 1)]),
    ("Y,I", [(1, 2, 1), (1, 3, 1), (1, 4, 1), (5, 6, 1)]),
    ("Λ,Λ", [(1, 2, 1), (1, 3, 1), (4, 5, 1), (4, 6, 1)]),
    ("Λ,I,I", [(1, 2, 1), (1, 3, 1), (4, 5, 1), (6, 7, 1)]),
    ("I,I,I,I", [(1, 2, 1), (3, 4, 1), (5, 6, 1), (7, 8, 1)]),
    ("⊒", [(1, 2, 2), (1, 3, 1), (3, 4, 1)]),
    ("≪", [(1, 2, 2), (1, 3, 2)]),
    ("⊨", [(1, 2, 2), (1, 3, 1), (1, 4, 1)]),
    ("∠̲̲", [(1, 2, 3), (1, 3, 1)]),
    ("IIII", [(1, 2, 4)]),
    ("∐̲", [(1, 2, 2), (1, 3, 1), (2, 4, 1)]),
    ("△̲", [(1, 2, 2), (1, 3, 1), (2, 3, 1)]),
    ("∠∠", [(1, 2, 1), (1, 3, 1), (3, 4, 1), (3, 5, 1)]),
    ("⊵", [(1, 2, 1), (1, 3, 1), (1, 4, 1), (2, 3, 1)]),
    ("∠̲,I", [(1, 2, 2), (1, 3, 1), (4, 5, 1)]),
    ("Λ,II", [(1, 2, 1), (1, 3, 1), (4, 5, 2)]),
    ("II,I,I", [(1, 2, 2), (3, 4, 1), (5, 6, 1)]),
    ("II,II", [(1, 2, 2), (3, 4, 2)]),
    ("III,I", [(1, 2, 3), (3, 4, 1)]),
    ("□", [(1, 2, 1), (1, 3, 1), (2, 4, 1), (3, 4, 1)]),
    ("M", [(1, 2, 1), (1, 3, 1), (3, 4, 1), (4, 5, 1)]),
    ("N,I", [(1, 2, 1), (1, 3, 1), (3, 4, 1), (5, 6, 1)]),
    ("△,I", [(1, 2, 1), (1, 3, 1), (2, 3, 1), (4, 5, 1)]),
]

GRAPHS: dict[str, TauGraph] = {name: canonicalize(edges) for name, edges in _CATALOGUE_SPEC}
GRAPH_NAMES: dict[TauGraph, str] = {g: name for name, g in GRAPHS.items()}

# plain-ASCII spellings accepted wherever a graph name is parsed
ASCII_ALIASES = {
    "L": "Λ", "Lambda": "Λ", "T": "△", "Tri": "△", "V2": "∠̲", "D3": "∠̲", "Lam,I": "Λ,I", "L,I": "Λ,I",
    "L,L": "Λ,Λ", "L,I,I": "Λ,I,I", "L,II": "Λ,II", "V2,I": "∠̲,I", "T,I": "△,I",
    "Sq": "□", "Box": "□", "Paw": "⊵", "VV": "∠∠", "P2": "⊒", "W2": "≪", "F2": "⊨",
    "V3": "∠̲̲", "U2": "∐̲", "T2": "△̲",
}


def graph(name: str) -> TauGraph:
    """Look up a catalogued graph by its bracket name (with or without brackets)."""
    key = name.strip()
    if key.startswith("[") and key.endswith("]"):
        key = key[1:-1]
    key = ASCII_ALIASES.get(key, key)
    if key not in GRAPHS:
        raise KeyError(f"unknown graph name {name!r}")
    return GRAPHS[key]


def _grow(g: TauGraph) -> set[TauGraph]:
    v = g.v
    out = set()
    base = list(g.edges)
    for a in range(1, v + 2):
        for b in range(a + 1, v + 3):
            if b > v + 1 and a <= v:
                continue
            out.add(canonicalize(base + [(a, b, 1)]))
    return out


@lru_cache(maxsize=None)
def _all_graphs(order: int) -> tuple[TauGraph, ...]:
    if order == 0:
        return (TauGraph(()),)
    found: set[TauGraph] = set()
    for g in _all_graphs(order - 1):
        found |= _grow(g)
    return tuple(found)


def _catalogue_rank(g: TauGraph) -> tuple:
    names = list(GRAPHS)
    if g in GRAPH_NAMES:
        return (0, names.index(GRAPH_NAMES[g]), ())
    return (1, 0, g.edges)


def enumerate_graphs(order: int, max_multiplicity: int | None = None) -> list[TauGraph]:
    """All classes with the given total order, catalogue order first."""
    if order < 1:
        raise ValueError("order must be >= 1")
    gs = [g for g in _all_graphs(order) if max_multiplicity is None or g.max_multiplicity <= max_multiplicity]
    return sorted(gs, key=_catalogue_rank)


# ---------------------------------------------------------------- orbit sums

@lru_cache(maxsize=None)
def _labellings(g: TauGraph) -> tuple[tuple[Edge, ...], ...]:
    """Distinct edge sets of g on exactly the vertices 1..v."""
    v = g.v
    seen = set()
    for image in permutations(range(1, v + 1)):
        seen.add(tuple(sorted((min(image[a - 1], image[b - 1]), max(image[a - 1], image[b - 1]), m)
                              for a, b, m in g.edges)))
    return tuple(sorted(seen))


@lru_cache(maxsize=None)
def embeddings(g: TauGraph, k: int) -> tuple[tuple[Edge, ...], ...]:
    """Distinct monomials of [g] in k indices, each as sorted (a, b, m) with a < b."""
    v = g.v
    if v > k:
        return ()
    labels = _labellings(g)
    out = []
    # an increasing vertex map preserves a < b within each edge
    for subset in combinations(range(1, k + 1), v):
        for mono in labels:
            out.append(tuple((subset[a - 1], subset[b - 1], m) for a, b, m in mono))
    return tuple(out)


_BASE = 16  # packed exponent digit; a vertex degree never reaches it below order 16


def _packed_edge(a: int, b: int, m: int, k: int) -> list[tuple[int, int]]:
    """(x_a - x_b)^m (l_a - l_b)^m as [(packed exponent, integer coefficient)]."""
    out: dict[int, int] = {}
    for i in range(m + 1):
        cx = comb(m, i) * (-1) ** (m - i)
        ex = i * _BASE ** (a - 1) + (m - i) * _BASE ** (b - 1)
        for j in range(m + 1):
            cl = comb(m, j) * (-1) ** (m - j)
            el = j * _BASE ** (k + a - 1) + (m - j) * _BASE ** (k + b - 1)
            out[ex + el] = out.get(ex + el, 0) + cx * cl
    return list(out.items())


@lru_cache(maxsize=256)
def orbit_sum(g: TauGraph, k: int) -> MPoly:
    """[g] as an exact polynomial; zero when g needs more than k vertices."""
    if g.total_order >= _BASE:
        raise ValueError("orbit_sum supports total order below 16")
    factors: dict[Edge, list[tuple[int, int]]] = {}
    acc: dict[int, int] = {}
    for mono in embeddings(g, k):
        term = {0: 1}
        for edge in mono:
            if edge not in factors:
                factors[edge] = _packed_edge(*edge, k)
            nxt: dict[int, int] = {}
            for e1, c1 in term.items():
                for e2, c2 in factors[edge]:
                    nxt[e1 + e2] = nxt.get(e1 + e2, 0) + c1 * c2
            term = nxt
        for e, c in term.items():
            acc[e] = acc.get(e, 0) + c
    terms = {}
    for packed, c in acc.items():
        if c:
            exps = []
            for _ in range(2 * k):
                packed, d = divmod(packed, _BASE)
                exps.append(d)
            terms[tuple(exps)] = Fraction(c)
    return MPoly._raw(k, terms)


def tau_matrix(x: Sequence, lam: Sequence) -> list[list]:
    k = len(x)
    return [[(x[i] - x[j]) * (lam[i] - lam[j]) for j in range(k)] for i in range(k)]


def orbit_value(g: TauGraph, x: Sequence, lam: Sequence, tau=None):
    """[g] evaluated at a point (exact for int/Fraction input)."""
    k = len(x)
    if tau is None:
        tau = tau_matrix(x, lam)
    total = 0
    for mono in embeddings(g, k):
        term = 1
        for a, b, m in mono:
            term *= tau[a - 1][b - 1] ** m
        total += term
    return total


def degenerate_point(k: int, q: int, overlap: bool = False) -> tuple[list[int], list[int]]:
    if not 0 <= q <= k:
        raise ValueError("need 0 <= q <= k")
    x = [1] * q + [0] * (k - q)
    lam = list(x) if overlap else [0] * (k - q) + [1] * q
    return x, lam


def eval_q_degenerate(g: TauGraph, k: int, q: int, overlap: bool = False) -> int:
    """[g] at x = (1^q, 0^{k-q}) and lambda = (0^{k-q}, 1^q) (or lambda = x with ``overlap``)."""
    x, lam = degenerate_point(k, q, overlap)
    return orbit_value(g, x, lam)


@lru_cache(maxsize=None)
def automorphism_count(g: TauGraph) -> int:
    v = g.v
    target = set(g.edges)
    count = 0
    for perm in permutations(range(1, v + 1)):
        image = {(min(perm[a - 1], perm[b - 1]), max(perm[a - 1], perm[b - 1]), m) for a, b, m in g.edges}
        count += image == target
    return count


def q_polynomial(g: TauGraph):
    """[g] at the disjoint degenerate point as a polynomial in q (sympy expression).

    Only edges joining an x-one to a lambda-one survive, each equal to -1, so the
    value is (-1)^order times the number of distinct 2-coloured embeddings.
    """
    from sympy import Integer, Symbol, expand, ff

    q = Symbol("q")
    v = g.v
    total = Integer(0)
    for mask in range(1 << v):
        side = [(mask >> i) & 1 for i in range(v)]
        if all(side[a - 1] != side[b - 1] for a, b, _ in g.edges):
            n_a = sum(side)
            total += ff(q, n_a) * ff(q, v - n_a)
    return expand((-1) ** g.total_order * total / automorphism_count(g))


# ---------------------------------------------------------------- tau polynomials

@dataclass
class TauPoly:
    terms: dict[TauGraph, Fraction]

    def __post_init__(self):
        self.terms = {g: Fraction(c) for g, c in self.terms.items() if c}

    def expand(self, k: int) -> MPoly:
        total = MPoly.zero(k)
        for g, c in self.terms.items():
            total = total + orbit_sum(g, k).scale(c)
        return total

    def value(self, x: Sequence, lam: Sequence):
        tau = tau_matrix(x, lam)
        return sum((c * orbit_value(g, x, lam, tau) for g, c in self.terms.items()), Fraction(0))

    def __repr__(self) -> str:
        return " + ".join(f"({c}){g.bracket}" for g, c in self.terms.items()) or "0"


def identity_basis(order: int, k: int) -> list[TauPoly]:
    """Linear relations among brackets: one cubic, four quartic."""
    G = GRAPHS
    if order == 3:
        return [TauPoly({G["II,I"]: 1, G["N"]: -1, G["△"]: k - 3})]
    if order == 4:
        return [
            TauPoly({G["II,I,I"]: 2, G["N,I"]: -1, G["△,I"]: k - 5}),
            TauPoly({G["III,I"]: 1, G["II,II"]: 2, G["⊵"]: -1, G["△̲"]: k - 3, G["□"]: -4, G["∐̲"]: -1}),
            TauPoly({G["Λ,II"]: 2, G["M"]: -2, G["△,I"]: 4, G["□"]: 2 * (k - 4), G["II,II"]: -(k - 4)}),
            TauPoly({G["∠̲,I"]: 1, G["∠∠"]: -2, G["△,I"]: -2, G["⊵"]: k - 4, G["□"]: -2 * (k - 4),
                     G["II,II"]: k - 4}),
        ]
    raise ValueError(f"no identity catalogue for order {order}")


# ---------------------------------------------------------------- characteristic differentials

@dataclass(frozen=True)
class CharacteristicDiff:
    spec: DiffSpec
    value: Fraction
    coupled: tuple[str, ...] = ()


def _d(lower: str, upper: str) -> DiffSpec:
    return DiffSpec(tuple(int(c) for c in upper), tuple(int(c) for c in lower))


# graph -> (D, D applied to the bracket of the graph itself, graphs sharing the differential)
_DIFFS = {
    "I": (_d("2", "1"), -1, ()),
    "Λ": (_d("23", "11"), 2, ()),
    "II": (_d("22", "11"), 4, ()),
    "I,I": (_d("34", "12"), 2, ()),
    "I,I,I": (_d("456", "123"), -6, ()),
    "Λ,I": (_d("345", "112"), -6, ()),
    "Y": (_d("234", "111"), -6, ()),
    "III": (_d("222", "111"), -36, ()),
    "∠̲": (_d("223", "111"), -12, ()),
    "N": (_d("224", "113"), None, ("II,I",)),
    "△": (_d("233", "112"), None, ("II,I", "∠̲")),
    "X": (_d("2345", "1111"), 24, ()),
    "Y,I": (_d("3456", "1112"), 24, ()),
    "Λ,Λ": (_d("3456", "1122"), 24, ()),
    "Λ,I,I": (_d("4567", "1123"), 24, ()),
    "I,I,I,I": (_d("5678", "1234"), 24, ()),
    "⊒": (_d("2244", "1113"), 48, ()),
    "≪": (_d("2233", "1111"), 96, ()),
    "⊨": (_d("2234", "1111"), 48, ()),
    "∠̲̲": (_d("2223", "1111"), 144, ()),
    "IIII": (_d("2222", "1111"), 576, ()),
}


def characteristic_diff(g: TauGraph) -> CharacteristicDiff:
    """The differential that isolates g (possibly together with a small coupled set)."""
    name = GRAPH_NAMES.get(g)
    if name is None or name not in _DIFFS:
        raise KeyError(f"no catalogued differential for {g.bracket}")
    spec, value, coupled = _DIFFS[name]
    if value is None:
        k = max(g.v + 2, max(spec.upper + spec.lower))
        value = apply_diff(spec, orbit_sum(g, k))
    return CharacteristicDiff(spec, Fraction(value), coupled)


def catalogued_differentials() -> list[str]:
    return list(_DIFFS)
