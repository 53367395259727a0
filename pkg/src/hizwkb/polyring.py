"""Sparse exact polynomials in x_1..x_k, lambda_1..lambda_k over the rationals."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence

X, LAMBDA = "x", "lambda"


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    if hasattr(c, "numerator"):
        return Fraction(int(c.numerator), int(c.denominator))
    return Fraction(c)


class MPoly:
    """Immutable sparse polynomial; exponent vectors have length 2k (x block, then lambda block)."""

    __slots__ = ("k", "terms")

    def __init__(self, k: int, terms: Mapping[tuple, object] | None = None):
        self.k = k
        clean: dict[tuple, Fraction] = {}
        for e, c in (terms or {}).items():
            if len(e) != 2 * k:
                raise ValueError(f"exponent vector {e} does not have length {2 * k}")
            c = _frac(c)
            if c:
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, k: int, terms: dict) -> MPoly:
        obj = cls.__new__(cls)
        obj.k = k
        obj.terms = terms
        return obj

    # construction helpers
    @classmethod
    def constant(cls, k: int, c=1) -> MPoly:
        return cls(k, {(0,) * (2 * k): c})

    @classmethod
    def zero(cls, k: int) -> MPoly:
        return cls._raw(k, {})

    @classmethod
    def var(cls, i: int, block: str, k: int) -> MPoly:
        """The variable x_i or lambda_i (1-based)."""
        if not 1 <= i <= k:
            raise IndexError(f"index {i} out of range 1..{k}")
        e = [0] * (2 * k)
        e[(i - 1) + (k if block == LAMBDA else 0)] = 1
        return cls._raw(k, {tuple(e): Fraction(1)})

    # arithmetic
    def _coerce(self, other) -> MPoly:
        if isinstance(other, MPoly):
            if other.k != self.k:
                raise ValueError("mismatched variable counts")
            return other
        return MPoly.constant(self.k, other)

    def __add__(self, other) -> MPoly:
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MPoly._raw(self.k, out)

    __radd__ = __add__

    def __neg__(self) -> MPoly:
        return MPoly._raw(self.k, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> MPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> MPoly:
        return self._coerce(other) - self

    def scale(self, c) -> MPoly:
        c = _frac(c)
        if not c:
            return MPoly.zero(self.k)
        return MPoly._raw(self.k, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other) -> MPoly:
        if not isinstance(other, MPoly):
            return self.scale(other)
        return self.mul(other)

    __rmul__ = __mul__

    def mul(self, other: MPoly, max_order: int | None = None) -> MPoly:
        """Product, optionally dropping terms with x-block degree above ``max_order``."""
        other = self._coerce(other)
        k = self.k
        out: dict[tuple, Fraction] = {}
        b_items = list(other.terms.items())
        if max_order is not None:
            b_deg = [sum(e[:k]) for e, _ in b_items]
        for ea, ca in self.terms.items():
            da = sum(ea[:k]) if max_order is not None else 0
            for idx, (eb, cb) in enumerate(b_items):
                if max_order is not None and da + b_deg[idx] > max_order:
                    continue
                e = tuple(x + y for x, y in zip(ea, eb))
                v = out.get(e, 0) + ca * cb
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return MPoly._raw(k, out)

    def __pow__(self, n: int) -> MPoly:
        result = MPoly.constant(self.k, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, MPoly):
            other = MPoly.constant(self.k, other) if isinstance(other, (int, Fraction)) else None
            if other is None:
                return NotImplemented
        return self.k == other.k and self.terms == other.terms

    def __hash__(self):
        return hash((self.k, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    # degrees and truncation
    def x_degree(self, e: tuple) -> int:
        return sum(e[: self.k])

    def lambda_degree(self, e: tuple) -> int:
        return sum(e[self.k:])

    def truncate(self, order: int) -> MPoly:
        """Drop terms whose x-block degree exceeds ``order``."""
        k = self.k
        return MPoly._raw(k, {e: c for e, c in self.terms.items() if sum(e[:k]) <= order})

    def bihomogeneous(self, dx: int, dl: int) -> MPoly:
        k = self.k
        return MPoly._raw(k, {e: c for e, c in self.terms.items()
                              if sum(e[:k]) == dx and sum(e[k:]) == dl})

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * (2 * self.k), Fraction(0))

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        """Terms in graded-lex order (total degree, then lexicographic, descending)."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    # calculus and evaluation
    def derivative(self, var: int, times: int = 1) -> MPoly:
        """Partial derivative w.r.t. the variable at flat position ``var`` (0-based)."""
        out: dict[tuple, Fraction] = {}
        for e, c in self.terms.items():
            p = e[var]
            if p < times:
                continue
            f = factorial(p) // factorial(p - times)
            ne = e[:var] + (p - times,) + e[var + 1:]
            out[ne] = out.get(ne, 0) + c * f
        return MPoly._raw(self.k, {e: c for e, c in out.items() if c})

    def dx(self, i: int, times: int = 1) -> MPoly:
        return self.derivative(i - 1, times)

    def dlam(self, i: int, times: int = 1) -> MPoly:
        return self.derivative(self.k + i - 1, times)

    def evaluate(self, x: Sequence, lam: Sequence):
        pt = list(x) + list(lam)
        if len(pt) != 2 * self.k:
            raise ValueError("point has the wrong length")
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, p in zip(pt, e):
                if p:
                    term = term * v ** p
            total = total + term
        return total

    def substitute(self, values: Mapping[int, object]) -> MPoly:
        """Replace flat-position variables by constants."""
        out: dict[tuple, Fraction] = {}
        for e, c in self.terms.items():
            coeff = c
            ne = list(e)
            for pos, val in values.items():
                if e[pos]:
                    coeff = coeff * _frac(val) ** e[pos]
                    ne[pos] = 0
            if coeff:
                key = tuple(ne)
                out[key] = out.get(key, 0) + coeff
        return MPoly._raw(self.k, {e: c for e, c in out.items() if c})

    # serialization
    def to_json(self) -> list[dict]:
        return [{"exponents": list(e), "coeff": f"{c.numerator}/{c.denominator}"} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, k: int, data: Iterable[Mapping]) -> MPoly:
        return cls(k, {tuple(d["exponents"]): Fraction(d["coeff"]) for d in data})

    def __repr__(self) -> str:
        if not self.terms:
            return "MPoly(0)"
        names = [f"x{i}" for i in range(1, self.k + 1)] + [f"l{i}" for i in range(1, self.k + 1)]
        parts = []
        for e, c in self.sorted_terms()[:12]:
            mono = "*".join(n if p == 1 else f"{n}^{p}" for n, p in zip(names, e) if p)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        more = " + ..." if len(self.terms) > 12 else ""
        return "MPoly(" + " + ".join(parts) + more + ")"


@dataclass(frozen=True)
class DiffSpec:
    """Mixed partial derivative: x-indices in ``upper``, lambda-indices in ``lower``."""

    upper: tuple[int, ...]
    lower: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(sorted(self.upper)))
        object.__setattr__(self, "lower", tuple(sorted(self.lower)))
        if not self.upper or not self.lower:
            raise ValueError("both index multisets must be non-empty")
        if min(self.upper + self.lower) < 1:
            raise ValueError("indices are 1-based")

    def label(self) -> str:
        return "D_{" + "".join(map(str, self.lower)) + "}^{" + "".join(map(str, self.upper)) + "}"


def tau_monomial(i: int, j: int, k: int) -> MPoly:
    """(x_i - x_j)(lambda_i - lambda_j)."""
    if i == j or not (1 <= i <= k and 1 <= j <= k):
        raise IndexError(f"invalid pair ({i}, {j}) for k={k}")
    dx = MPoly.var(i, X, k) - MPoly.var(j, X, k)
    dl = MPoly.var(i, LAMBDA, k) - MPoly.var(j, LAMBDA, k)
    return dx * dl


def centered_power_sum(n: int, block: str, k: int) -> MPoly:
    """s_n of the traceless part: sum_i (v_i - mean(v))^n."""
    if n < 1:
        raise ValueError("n must be positive")
    vs = [MPoly.var(i, block, k) for i in range(1, k + 1)]
    mean = sum(vs[1:], vs[0]).scale(Fraction(1, k))
    total = MPoly.zero(k)
    for v in vs:
        total = total + (v - mean) ** n
    return total


def power_sum(n: int, block: str, k: int) -> MPoly:
    total = MPoly.zero(k)
    for i in range(1, k + 1):
        total = total + MPoly.var(i, block, k) ** n
    return total


def exp_truncated(p: MPoly, order: int) -> MPoly:
    """sum_{m<=order} p^m/m!, dropping terms above ``order`` in the x block."""
    if p.constant_term():
        raise ValueError("exp_truncated needs a polynomial without constant term")
    result = MPoly.constant(p.k, 1)
    term = MPoly.constant(p.k, 1)
    for m in range(1, order + 1):
        term = term.mul(p, max_order=order).scale(Fraction(1, m))
        if not term:
            break
        result = result + term
    return result.truncate(order)


def apply_diff(d: DiffSpec, p: MPoly, at_zero: bool = True):
    """Apply the mixed partial ``d``; with ``at_zero`` return the value at x = lambda = 0."""
    k = p.k
    if max(d.upper + d.lower) > k:
        raise IndexError("derivative index exceeds k")
    if at_zero:
        # coefficient extraction is cheaper than differentiating
        e = [0] * (2 * k)
        for i in d.upper:
            e[i - 1] += 1
        for j in d.lower:
            e[k + j - 1] += 1
        c = p.terms.get(tuple(e), Fraction(0))
        mult = 1
        for v in e:
            mult *= factorial(v)
        return c * mult
    out = p
    for i in d.upper:
        out = out.dx(i)
    for j in d.lower:
        out = out.dlam(j)
    return out


def vandermonde(block: str, k: int) -> MPoly:
    """prod_{i<j} (v_i - v_j)."""
    out = MPoly.constant(k, 1)
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            out = out * (MPoly.var(i, block, k) - MPoly.var(j, block, k))
    return out
