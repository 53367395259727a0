"""Jack symmetric functions Z_p in the power-sum basis.

Z_p is built in the monomial basis as the eigenvector of the alpha-deformed
Laplace-Beltrami operator that is triangular under dominance, then converted to
power sums and scaled so the coefficient of s_1^n is one.  Up to weight 6 the
work is done with alpha as an indeterminate, so removable singularities such as
the alpha -> -1 limit cancel before substitution.
"""
from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Mapping

from sympy import QQ, Symbol, factor, sympify
from sympy.polys.fields import field as frac_field

from .partitions import Partition, dominance_compare, enumerate_partitions

MAX_WEIGHT = 8
SYMBOLIC_MAX_WEIGHT = 6

ALPHA_FIELD, ALPHA = frac_field("a", QQ)
ALPHA_SYMBOL = Symbol("a")


class ParameterPole(ZeroDivisionError):
    """Raised when alpha hits a pole of the construction."""


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return Fraction(int(x.numerator), int(x.denominator))
    return Fraction(str(x))


def _qq(x) -> "QQ.dtype":
    x = to_fraction(x)
    return QQ(x.numerator, x.denominator)


@dataclass(frozen=True)
class SymFunPoly:
    """Homogeneous symmetric function in the power-sum basis."""

    coeffs: Mapping[Partition, Fraction]
    degree: int

    def __post_init__(self):
        clean = {}
        for lam, c in self.coeffs.items():
            lam = Partition(lam)
            if lam.weight != self.degree:
                raise ValueError(f"{lam} has weight {lam.weight}, expected {self.degree}")
            if c:
                clean[lam] = to_fraction(c)
        object.__setattr__(self, "coeffs", clean)

    def __getitem__(self, lam) -> Fraction:
        return self.coeffs.get(Partition(lam), Fraction(0))

    def evaluate(self, power_sums: Mapping[int, Fraction] | None = None, k=None):
        """Substitute s_n <- power_sums[n] (or s_n <- k for every n)."""
        total = Fraction(0)
        for lam, c in self.coeffs.items():
            if k is not None:
                total += c * Fraction(k) ** len(lam)
            else:
                total += c * prod((power_sums[p] for p in lam), start=Fraction(1))
        return total

    def to_json(self) -> list[dict]:
        return [{"partition": list(lam), "coeff": str(c)} for lam, c in sorted(self.coeffs.items(), reverse=True)]


@dataclass(frozen=True)
class JackData:
    partition: Partition
    alpha: Fraction
    poly: SymFunPoly
    character: Fraction

    def dimension_at(self, k: int) -> Fraction:
        return self.poly.evaluate(k=k)


# ---------------------------------------------------------------- bases

@lru_cache(maxsize=None)
def _basis(n: int) -> tuple[Partition, ...]:
    return tuple(enumerate_partitions(n))


def _count_fillings(parts: tuple[int, ...], capacity: tuple[int, ...]) -> int:
    if not parts:
        return int(all(c == 0 for c in capacity))
    first, rest = parts[0], parts[1:]
    total = 0
    for j, cap in enumerate(capacity):
        if cap >= first:
            nxt = capacity[:j] + (cap - first,) + capacity[j + 1:]
            total += _count_fillings(rest, nxt)
    return total


@lru_cache(maxsize=None)
def power_to_monomial(n: int) -> tuple[tuple[int, ...], ...]:
    """R[mu][lam] = coefficient of m_lam in p_mu."""
    basis = _basis(n)
    return tuple(tuple(_count_fillings(tuple(mu), tuple(lam)) for lam in basis) for mu in basis)


@lru_cache(maxsize=None)
def monomial_to_power(n: int) -> tuple[tuple, ...]:
    """Inverse of ``power_to_monomial`` over QQ; rows give m_lam in power sums."""
    R = power_to_monomial(n)
    N = len(R)
    # R is lower triangular in the reverse-lex order (p_mu only reaches m_lam with lam >= mu)
    inv = [[QQ(0)] * N for _ in range(N)]
    for i in range(N):
        inv[i][i] = QQ(1, R[i][i])
        for j in range(i - 1, -1, -1):
            s = QQ(0)
            for t in range(j + 1, i + 1):
                if R[t][j]:
                    s += inv[i][t] * R[t][j]
            inv[i][j] = -s / R[j][j]
    return tuple(tuple(row) for row in inv)


def _strip(lam: Partition, *parts: int) -> Partition:
    rest = list(lam)
    for p in parts:
        rest.remove(p)
    return Partition(rest)


def _laplace_beltrami(n: int, dom, al):
    """Matrix of the alpha-deformed Laplace-Beltrami operator on power sums.

    Dp[i][j] = coefficient of p_basis[j] in D p_basis[i].
    """
    basis = _basis(n)
    index = {lam: i for i, lam in enumerate(basis)}
    half = _conv(dom, QQ(1, 2))
    N = len(basis)
    Dp = [[dom.zero] * N for _ in range(N)]
    for row, mu in enumerate(basis):
        mult = mu.multiplicities()
        # (alpha/2) sum_{i,j} i j p_{i+j} d_i d_j
        for i in mult:
            for j in mult:
                if i == j:
                    c = mult[i] * (mult[i] - 1)
                else:
                    c = mult[i] * mult[j]
                if c == 0:
                    continue
                target = Partition(sorted(list(_strip(mu, i, j)) + [i + j], reverse=True))
                Dp[row][index[target]] += al * half * (i * j * c)
        # (1/2) sum_{i,j} (i+j) p_i p_j d_{i+j}
        for r, m in mult.items():
            base = list(_strip(mu, r))
            for i in range(1, r):
                target = Partition(sorted(base + [i, r - i], reverse=True))
                Dp[row][index[target]] += half * (r * m)
        # ((alpha-1)/2) sum_i i(i-1) p_i d_i
        diag = sum(i * (i - 1) * m for i, m in mult.items())
        if diag:
            Dp[row][row] += (al - 1) * half * diag
    return Dp


def _is_zero(x) -> bool:
    return not x


def _conv(dom, x):
    return dom.convert(x) if hasattr(dom, "convert") else dom(x)


def _jack_rows(n: int, dom, al) -> dict[Partition, list]:
    """All Jack polynomials of weight n as power-sum coordinate rows over ``dom``."""
    basis = _basis(n)
    N = len(basis)
    R = power_to_monomial(n)
    Rinv = monomial_to_power(n)
    Dp = _laplace_beltrami(n, dom, al)
    Rinv_d = [[_conv(dom, x) for x in row] for row in Rinv]
    # Dm = Rinv Dp R
    tmp = [[sum((Rinv_d[i][t] * Dp[t][j] for t in range(N) if Rinv_d[i][t] and Dp[t][j]), dom.zero)
            for j in range(N)] for i in range(N)]
    Dm = [[sum((tmp[i][t] * R[t][j] for t in range(N) if R[t][j] and tmp[i][t]), dom.zero)
           for j in range(N)] for i in range(N)]
    out = {}
    ones = N - 1  # index of [1^n]
    for li, lam in enumerate(basis):
        w = [dom.zero] * N
        w[li] = dom.one
        e_lam = Dm[li][li]
        for mi in range(li + 1, N):
            mu = basis[mi]
            if dominance_compare(mu, lam) != "less":
                continue
            s = dom.zero
            for vi in range(li, mi):
                if w[vi] and Dm[vi][mi]:
                    s += w[vi] * Dm[vi][mi]
            gap = e_lam - Dm[mi][mi]
            if _is_zero(gap):
                if _is_zero(s):
                    continue
                raise ParameterPole(f"eigenvalue gap between {lam.label()} and {mu.label()} vanishes")
            w[mi] = s / gap
        v = [sum((w[t] * Rinv_d[t][j] for t in range(N) if w[t] and Rinv_d[t][j]), dom.zero) for j in range(N)]
        lead = v[ones]
        if _is_zero(lead):
            raise ParameterPole(f"s_1^{n} coefficient of {lam.label()} vanishes")
        out[lam] = [x / lead for x in v]
    return out


def _characters(n: int, rows: dict[Partition, list], dom, al) -> dict[Partition, object]:
    """chi_p from expanding s_1^n in the Jack basis."""
    basis = _basis(n)
    N = len(basis)
    # Solve c^T J = e_{1^n}; J rows are Jack coordinates. Gaussian elimination on J^T.
    A = [[rows[basis[r]][c] for r in range(N)] + [dom.one if c == N - 1 else dom.zero] for c in range(N)]
    for col in range(N):
        piv = next((r for r in range(col, N) if not _is_zero(A[r][col])), None)
        if piv is None:
            raise ParameterPole(f"Jack basis of weight {n} degenerates")
        A[col], A[piv] = A[piv], A[col]
        inv = dom.one / A[col][col]
        A[col] = [x * inv for x in A[col]]
        for r in range(N):
            if r != col and not _is_zero(A[r][col]):
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    scale = dom.one
    for m in range(1, n):
        scale *= dom.one + al * m
    return {basis[r]: A[r][N] * scale for r in range(N)}


# ---------------------------------------------------------------- caches

_lock = threading.Lock()
_symbolic: dict[int, tuple[dict, dict]] = {}
_numeric: dict[tuple[int, Fraction], tuple[dict, dict]] = {}


def _cache_path(n: int) -> str | None:
    root = os.environ.get("HIZ_WKB_CACHE_DIR")
    if not root:
        return None
    return os.path.join(root, f"jack_weight{n}.json")


def _load_disk(n: int):
    path = _cache_path(n)
    if not path or not os.path.exists(path):
        return None
    with open(path) as fh:
        raw = json.load(fh)
    conv = lambda s: ALPHA_FIELD.from_expr(sympify(s))
    rows = {Partition(r["partition"]): [conv(c) for c in r["coeffs"]] for r in raw}
    chars = {Partition(r["partition"]): conv(r["character"]) for r in raw}
    return rows, chars


def _store_disk(n: int, rows, chars) -> None:
    path = _cache_path(n)
    if not path:
        return
    os.makedirs(os.path.dirname(path), exist_ok=True)
    raw = [{"partition": list(lam), "coeffs": [str(c.as_expr()) for c in rows[lam]],
            "character": str(chars[lam].as_expr())} for lam in _basis(n)]
    tmp = path + f".{os.getpid()}.tmp"
    with open(tmp, "w") as fh:
        json.dump(raw, fh)
    os.replace(tmp, path)


def symbolic_tables(n: int) -> tuple[dict, dict]:
    """Weight-n Jack rows and characters with alpha as an indeterminate."""
    if n > SYMBOLIC_MAX_WEIGHT:
        raise ValueError(f"symbolic construction limited to weight {SYMBOLIC_MAX_WEIGHT}")
    with _lock:
        hit = _symbolic.get(n)
    if hit is not None:
        return hit
    data = _load_disk(n)
    if data is None:
        rows = _jack_rows(n, ALPHA_FIELD, ALPHA)
        chars = _characters(n, rows, ALPHA_FIELD, ALPHA)
        data = (rows, chars)
        _store_disk(n, rows, chars)
    with _lock:
        _symbolic.setdefault(n, data)
    return data


def substitute(expr, alpha) -> Fraction:
    """Evaluate an element of QQ(a) at a rational alpha, raising on a hard pole."""
    a = _qq(alpha)
    den = expr.denom(a)
    if den == 0:
        raise ParameterPole(f"alpha = {to_fraction(alpha)} is a pole of {expr.as_expr()}")
    return to_fraction(expr.numer(a) / den)


def _numeric_tables(n: int, alpha: Fraction) -> tuple[dict, dict]:
    key = (n, alpha)
    with _lock:
        hit = _numeric.get(key)
    if hit is not None:
        return hit
    if n <= SYMBOLIC_MAX_WEIGHT:
        rows_s, chars_s = symbolic_tables(n)
        rows = {lam: [substitute(c, alpha) for c in row] for lam, row in rows_s.items()}
        chars = {lam: substitute(c, alpha) for lam, c in chars_s.items()}
    else:
        al = _qq(alpha)
        rows_q = _jack_rows(n, QQ, al)
        chars_q = _characters(n, rows_q, QQ, al)
        rows = {lam: [to_fraction(c) for c in row] for lam, row in rows_q.items()}
        chars = {lam: to_fraction(c) for lam, c in chars_q.items()}
    with _lock:
        _numeric.setdefault(key, (rows, chars))
    return rows, chars


def _check(p, alpha) -> tuple[Partition, Fraction]:
    p = Partition(p)
    if p.weight > MAX_WEIGHT:
        raise ValueError(f"weight {p.weight} exceeds configured maximum {MAX_WEIGHT}")
    return p, to_fraction(alpha)


def jack_power_sum(p, alpha) -> SymFunPoly:
    """Z_p at a rational alpha in the power-sum basis, s_1^n coefficient one."""
    p, alpha = _check(p, alpha)
    if p.weight == 0:
        return SymFunPoly({Partition(): Fraction(1)}, 0)
    rows, _ = _numeric_tables(p.weight, alpha)
    return SymFunPoly(dict(zip(_basis(p.weight), rows[p])), p.weight)


def jack_power_sum_symbolic(p) -> dict[Partition, object]:
    """Z_p with alpha left symbolic; values are elements of QQ(a)."""
    p = Partition(p)
    rows, _ = symbolic_tables(p.weight)
    return {lam: c for lam, c in zip(_basis(p.weight), rows[p]) if c}


def character(p, alpha) -> Fraction:
    """chi_p(1): (prod_{m<q}(1+m alpha)) times the coefficient of Z_p in s_1^q."""
    p, alpha = _check(p, alpha)
    if p.weight == 0:
        return Fraction(1)
    _, chars = _numeric_tables(p.weight, alpha)
    return chars[p]


def character_symbolic(p):
    p = Partition(p)
    _, chars = symbolic_tables(p.weight)
    return chars[p]


def dimension(p, alpha, k: int) -> Fraction:
    """Z_p(I_k): every s_n replaced by k."""
    return jack_power_sum(p, alpha).evaluate(k=k)


def dimension_factored(p):
    """Z_p(I) as a factored sympy expression in k and a."""
    k = Symbol("k")
    expr = sum(c.as_expr() * k ** len(lam) for lam, c in jack_power_sum_symbolic(p).items())
    return factor(expr)


def jack_data(p, alpha) -> JackData:
    p, alpha = _check(p, alpha)
    return JackData(p, alpha, jack_power_sum(p, alpha), character(p, alpha))


def power_sum_product(n: int, power: int = 1) -> SymFunPoly:
    """s_1^n written in power sums (trivially the single key [1^n])."""
    return SymFunPoly({Partition((1,) * n): Fraction(power)}, n)


@dataclass
class SumRuleReport:
    q: int
    alpha: Fraction
    k: int
    symbolic_ok: bool
    numeric_ok: bool
    residual: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.symbolic_ok and self.numeric_ok


def verify_sum_rule(q: int, alpha, k: int) -> SumRuleReport:
    """Check s_1^q == (1/prod_{m=1}^{q-1}(1+m alpha)) sum_p chi_p Z_p."""
    alpha = to_fraction(alpha)
    norm = prod((1 + m * alpha for m in range(1, q)), start=Fraction(1))
    if norm == 0:
        raise ParameterPole(f"prod (1 + m alpha) vanishes at alpha = {alpha}")
    total: dict[Partition, Fraction] = {}
    for p in enumerate_partitions(q):
        chi = character(p, alpha)
        for lam, c in jack_power_sum(p, alpha).coeffs.items():
            total[lam] = total.get(lam, Fraction(0)) + chi * c / norm
    residual = {lam: c for lam, c in total.items() if c != (1 if lam == Partition((1,) * q) else 0)}
    if Partition((1,) * q) not in total:
        residual[Partition((1,) * q)] = Fraction(-1)
    lhs = Fraction(k) ** q
    rhs = sum((chi * dimension(p, alpha, k) for p in enumerate_partitions(q)
               for chi in [character(p, alpha)]), Fraction(0)) / norm
    return SumRuleReport(q, alpha, k, not residual, lhs == rhs, residual)


def alpha_pairing(a: SymFunPoly, b: SymFunPoly, alpha) -> Fraction:
    """<s_lam, s_mu> = delta z_lam alpha^len(lam)."""
    alpha = to_fraction(alpha)
    total = Fraction(0)
    for lam, c in a.coeffs.items():
        d = b.coeffs.get(lam)
        if d:
            z = prod((i ** m) * _factorial(m) for i, m in lam.multiplicities().items())
            total += c * d * z * alpha ** len(lam)
    return total


def _factorial(m: int) -> int:
    return prod(range(1, m + 1))
