"""Independent ground truths for the tau-expansion.

* the unitary integral in closed form (permutation sum and determinant),
* Monte-Carlo integration over Haar-random O(k), U(k) and Sp(k),
* the Calogero-Moser operator applied to a coefficient table,
* permutation sums of powers of tau at k = 3,
* the alpha -> -1 limit of the character series in paired power sums.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Sequence

import numpy as np

from . import _kernels
from .jack import to_fraction
from .partitions import Partition
from .polyring import LAMBDA, X, MPoly, centered_power_sum, vandermonde
from .wkb import CoeffTable, paired_series, series_orders_at

DEGENERACY_EPS = 1e-8
MC_BLOCK = 4096


class DegenerateSpectrum(ValueError):
    pass


@dataclass(frozen=True)
class SpectrumPair:
    x: tuple
    lam: tuple

    def __post_init__(self):
        if len(self.x) != len(self.lam):
            raise ValueError("x and lambda must have the same length")
        object.__setattr__(self, "x", tuple(self.x))
        object.__setattr__(self, "lam", tuple(self.lam))

    @property
    def k(self) -> int:
        return len(self.x)


def _as_pair(s, lam=None) -> SpectrumPair:
    if isinstance(s, SpectrumPair):
        return s
    return SpectrumPair(tuple(s), tuple(lam))


def _sign(perm: Sequence[int]) -> int:
    sgn, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sgn = -sgn
    return sgn


def haar_constant_u(k: int) -> int:
    """prod_{p<k} p!, fixing I(0, Lambda) = 1 for the normalised unitary integral."""
    return math.prod(math.factorial(p) for p in range(1, k))


def _vdm(v) -> float:
    return math.prod(v[i] - v[j] for i in range(len(v)) for j in range(i + 1, len(v)))


def _check_gaps(v, name):
    scale = max(1.0, max(abs(float(t)) for t in v))
    for i in range(len(v)):
        for j in range(i + 1, len(v)):
            if abs(float(v[i]) - float(v[j])) < DEGENERACY_EPS * scale:
                raise DegenerateSpectrum(f"degenerate spectrum: {name}[{i}] ~ {name}[{j}]")


def hciz_beta2_exact(s, lam=None, form: str = "both", normalized: bool = True) -> float:
    """Closed-form unitary integral.

    Permutation form: sum_sigma e^{x . sigma(lambda)} / prod_{i<j} tau_ij(sigma);
    determinant form: det[e^{x_i lambda_j}] / (Delta(x) Delta(lambda)).  With
    ``normalized`` both carry prod_{p<k} p! so that the Haar average is returned.
    ``form="both"`` computes the two and raises if they disagree beyond rounding.
    """
    s = _as_pair(s, lam)
    x = [float(t) for t in s.x]
    lm = [float(t) for t in s.lam]
    k = s.k
    if k == 0:
        return 1.0
    _check_gaps(x, "x")
    _check_gaps(lm, "lambda")
    c = haar_constant_u(k) if normalized else 1

    def perm_form():
        tot = 0.0
        for sig in permutations(range(k)):
            lp = [lm[i] for i in sig]
            den = math.prod((x[i] - x[j]) * (lp[i] - lp[j]) for i in range(k) for j in range(i + 1, k))
            tot += math.exp(sum(a * b for a, b in zip(x, lp))) / den
        return c * tot

    def det_form():
        M = np.exp(np.outer(x, lm))
        return c * float(np.linalg.det(M)) / (_vdm(x) * _vdm(lm))

    if form == "permutation":
        return perm_form()
    if form == "determinant":
        return det_form()
    if form != "both":
        raise ValueError("form must be permutation, determinant or both")
    a, b = perm_form(), det_form()
    if not math.isclose(a, b, rel_tol=1e-6, abs_tol=1e-12):
        raise ArithmeticError(f"permutation form {a!r} and determinant form {b!r} disagree")
    return a


def _series_exp(z: Fraction, order: int) -> list[Fraction]:
    """Coefficients of t^n in e^{t z}, n <= order."""
    out, term = [], Fraction(1)
    for n in range(order + 1):
        out.append(term)
        term = term * z / (n + 1)
    return out


def _poly_mul(a, b, order):
    out = [Fraction(0)] * (order + 1)
    for i, u in enumerate(a):
        if u:
            for j in range(min(len(b), order + 1 - i)):
                out[i + j] += u * b[j]
    return out


def hciz_beta2_series(s, lam=None, order: int = 12, normalized: bool = True) -> dict[str, list[Fraction]]:
    """Exact t-expansions of I(t x, lambda) from both closed forms.

    Returns {"permutation": [...], "determinant": [...]}: coefficients of t^n,
    n = 0..order - d with d = k(k-1)/2, obtained after dividing the truncated
    numerators by t^d Delta(x) Delta(lambda).
    """
    s = _as_pair(s, lam)
    x = [to_fraction(t) for t in s.x]
    lm = [to_fraction(t) for t in s.lam]
    k = s.k
    d = k * (k - 1) // 2
    den = Fraction(_vdm(x)) * Fraction(_vdm(lm)) if k > 1 else Fraction(1)
    if den == 0:
        raise DegenerateSpectrum("degenerate spectrum")
    c = haar_constant_u(k) if normalized else 1
    perm = [Fraction(0)] * (order + 1)
    for sig in permutations(range(k)):
        sg = _sign(sig)
        z = sum((x[i] * lm[sig[i]] for i in range(k)), Fraction(0))
        for n, v in enumerate(_series_exp(z, order)):
            perm[n] += sg * v
    det = [Fraction(0)] * (order + 1)
    entries = [[_series_exp(x[i] * lm[j], order) for j in range(k)] for i in range(k)]
    for sig in permutations(range(k)):
        term = [Fraction(1)] + [Fraction(0)] * order
        for i in range(k):
            term = _poly_mul(term, entries[i][sig[i]], order)
        sg = _sign(sig)
        for n in range(order + 1):
            det[n] += sg * term[n]
    for name, num in (("permutation", perm), ("determinant", det)):
        if any(num[n] for n in range(d)):
            raise ArithmeticError(f"{name} numerator has terms below t^{d}")
    return {name: [c * v / den for v in num[d:]] for name, num in (("permutation", perm), ("determinant", det))}


# ----------------------------------------------------------------- Monte Carlo

@dataclass(frozen=True)
class McEstimate:
    mean: float
    stderr: float
    samples: int
    seed: int

    def to_json(self) -> dict:
        return {"mean": self.mean, "stderr": self.stderr, "samples": self.samples, "seed": self.seed}


GROUPS = {"orthogonal": "o", "o": "o", "unitary": "u", "u": "u", "symplectic": "sp", "sp": "sp"}


def block_generator(seed: int, block: int) -> np.random.Generator:
    """Philox4x64 keyed by (seed, block index): a fixed stream per block."""
    key = np.array([seed & (2 ** 64 - 1), block], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _block_weights(group: str, k: int, x, lam, n: int, seed: int, block: int) -> np.ndarray:
    rng = block_generator(seed, block)
    if group == "o":
        G = rng.standard_normal((n, k, k))
        return _kernels.haar_exp_real(G, x, lam)
    if group == "u":
        G = rng.standard_normal((n, k, k)) + 1j * rng.standard_normal((n, k, k))
        return _kernels.haar_exp_complex(G, x, lam)
    A = rng.standard_normal((n, k, k)) + 1j * rng.standard_normal((n, k, k))
    B = rng.standard_normal((n, k, k)) + 1j * rng.standard_normal((n, k, k))
    return _kernels.haar_exp_quaternion(A, B, x, lam)


def mc_haar_integral(s, group: str, samples: int, seed: int, lam=None, workers: int = 1) -> McEstimate:
    """Haar average of exp(tr g X g^-1 Lambda) for diagonal X, Lambda.

    Samples are drawn in fixed blocks of MC_BLOCK, each from its own
    (seed, block) Philox stream, and reduced in block order, so the estimate
    does not depend on ``workers``.  For Sp(k) the trace is the quaternionic
    one (half the trace of the 2k x 2k complex representation).
    """
    s = _as_pair(s, lam)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    try:
        g = GROUPS[group]
    except KeyError:
        raise ValueError(f"unknown group {group!r}") from None
    k = s.k
    x = np.array([float(t) for t in s.x])
    lm = np.array([float(t) for t in s.lam])
    nblocks = -(-samples // MC_BLOCK)
    sizes = [min(MC_BLOCK, samples - b * MC_BLOCK) for b in range(nblocks)]

    def run(b):
        w = _block_weights(g, k, x, lm, sizes[b], seed, b)
        m = float(w.mean())
        return len(w), m, float(((w - m) ** 2).sum())

    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            parts = list(ex.map(run, range(nblocks)))
    else:
        parts = [run(b) for b in range(nblocks)]
    # pairwise (Chan et al.) merge in block order
    n, mean, m2 = 0, 0.0, 0.0
    for nb, mb, m2b in parts:
        tot = n + nb
        delta = mb - mean
        mean += delta * nb / tot
        m2 += m2b + delta * delta * n * nb / tot
        n = tot
    var = m2 / (n - 1) if n > 1 else 0.0
    return McEstimate(mean, math.sqrt(var / n), n, seed)


# ----------------------------------------------------------------- Calogero operator

def calogero_residual(k: int, beta, table: CoeffTable | None, order: int | None = None) -> MPoly:
    """Numerator of P psi / (e^{x.lambda} Delta(x)^{gamma-1} [Delta(lambda)]^gamma), gamma = 1 - beta/2.

    psi = e^{x.lambda} [Delta(x) Delta(lambda)]^gamma f with f the table's
    polynomial truncated at ``order``.  The common factor Delta(x)^gamma is
    differentiated by logarithmic-derivative rules, so any rational beta works;
    the result is the polynomial
        Delta (Lap f + 2 lambda.grad f)
          + 2 gamma sum_{i<j} (Delta/(x_i - x_j)) [(lambda_i - lambda_j) f + (d_i - d_j) f].
    A correct table leaves only terms of lambda-degree > order.
    """
    beta = to_fraction(beta)
    gamma = 1 - beta / 2
    if table is None:
        f = MPoly.constant(k, 1)
    else:
        if order is None:
            order = table.order
        if order > table.order:
            raise ValueError("order exceeds the table's order")
        if table.k != k:
            raise ValueError("table built for a different k")
        f = MPoly.constant(k, 1)
        from .taugraph import orbit_sum

        for g, c in table.entries.items():
            if c and g.total_order <= order:
                f = f + orbit_sum(g, k).scale(c)
    grads = [f.dx(i) for i in range(1, k + 1)]
    lap = MPoly.zero(k)
    drift = MPoly.zero(k)
    for i in range(1, k + 1):
        lap = lap + grads[i - 1].dx(i)
        drift = drift + MPoly.var(i, LAMBDA, k) * grads[i - 1]
    delta = vandermonde(X, k)
    out = delta * (lap + drift.scale(2))
    if gamma and k > 1:
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                cof = MPoly.constant(k, 1)
                for a in range(1, k + 1):
                    for b in range(a + 1, k + 1):
                        if (a, b) != (i, j):
                            cof = cof * (MPoly.var(a, X, k) - MPoly.var(b, X, k))
                lam_ij = MPoly.var(i, LAMBDA, k) - MPoly.var(j, LAMBDA, k)
                out = out + (cof * (lam_ij * f + grads[i - 1] - grads[j - 1])).scale(2 * gamma)
    return out


def lowest_lambda_degree(p: MPoly) -> int | None:
    if not p:
        return None
    return min(p.lambda_degree(e) for e in p.terms)


# ----------------------------------------------------------------- permutation sums at k = 3

def _paired_basis(n: int, k: int) -> list[Partition]:
    from .partitions import enumerate_partitions

    if n == 0:
        return [Partition(())]
    if n < 0:
        return []
    out = []
    for p in enumerate_partitions(n):
        if 1 in p:
            continue
        # for k = 3 centred spectra, s_n with n > 3 is not independent of s_2, s_3
        if k == 3 and max(p) > 3:
            continue
        out.append(p)
    return out


def _centered(vals):
    m = sum(vals, Fraction(0)) / len(vals)
    return [v - m for v in vals]


def _s(p: Partition, cen) -> Fraction:
    return math.prod((sum((c ** n for c in cen), Fraction(0)) for n in p), start=Fraction(1))


def perm_sum_power(k: int, p: int, seed: int = 7) -> dict[tuple[Partition, Partition], Fraction]:
    """sum_sigma (tau_12 + tau_23 + tau_13)^p / (tau_12 tau_23 tau_13) in paired power sums.

    Returns {(mu, nu): c} meaning sum c s_mu(x~) s_nu(lambda~); the scalar case
    is the key (Partition(()), Partition(())).  An empty dict is zero.
    """
    if k != 3 or not 1 <= p <= 8:
        raise ValueError("perm_sum_power supports k = 3 and 1 <= p <= 8")
    import random

    rng = random.Random(seed)
    deg = p - 3
    basis = [(mu, nu) for mu in _paired_basis(deg, 3) for nu in _paired_basis(deg, 3)]

    def value(x, lm):
        tot = Fraction(0)
        for sig in permutations(range(3)):
            l2 = [lm[i] for i in sig]
            t = [(x[i] - x[j]) * (l2[i] - l2[j]) for i, j in ((0, 1), (1, 2), (0, 2))]
            tot += Fraction(sum(t)) ** p / (t[0] * t[1] * t[2])
        return tot

    pts = []
    while len(pts) < len(basis) + 4:
        x = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(3)]
        lm = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(3)]
        if len(set(x)) == 3 and len(set(lm)) == 3:
            pts.append((x, lm))
    from ._linalg import solve_affine

    rows = [[_s(mu, _centered(x)) * _s(nu, _centered(lm)) for mu, nu in basis] for x, lm in pts]
    rhs = [value(x, lm) for x, lm in pts]
    if not basis:
        if any(rhs):
            raise ArithmeticError("permutation sum is not zero although no invariant of its degree exists")
        return {}
    sol = solve_affine(rows, rhs)
    if not sol.consistent or sol.nullspace:
        raise ArithmeticError("permutation sum is not a unique combination of paired power sums")
    return {key: c for key, c in zip(basis, sol.particular) if c}


# ----------------------------------------------------------------- phi series at beta = 4

def phi_series_beta4(k: int, order: int) -> dict[tuple[Partition, Partition], Fraction]:
    """alpha -> -1 limit of the character series, {(mu, nu): coefficient of s_mu(x~) s_nu(lambda~)}.

    Each block is summed in the field of rational functions of alpha before
    substituting, so the removable poles at alpha = -1 cancel.
    """
    if order > 6:
        raise ValueError("order limited to 6")
    out = {}
    for m, block in (paired_series(k, -1, order) if order >= 2 else {}).items():
        out.update(block)
    return out


def beta1_series_value(x: Sequence[float], lam: Sequence[float], order: int = 4) -> tuple[float, float]:
    """Orthogonal integral from the alpha = 2 series truncated at ``order``.

    For beta = 1 the dual and direct expansions coincide and there is no
    permutation sum: I = e^{(sum x)(sum lambda)/k} * phi, phi being the
    character series in centred spectra.  Returns (value, bound) where bound is
    the size of the next two orders, used as the truncation error estimate.
    """
    k = len(x)
    xf = [to_fraction(v) for v in x]
    lf = [to_fraction(v) for v in lam]
    top = min(order + 2, 6)
    paired = paired_series(k, 2, top)
    cx, cl = _centered(xf), _centered(lf)
    sx = {n: sum((c ** n for c in cx), Fraction(0)) for n in range(1, top + 1)}
    sl = {n: sum((c ** n for c in cl), Fraction(0)) for n in range(1, top + 1)}
    terms = [Fraction(1), Fraction(0)]
    for m in range(2, top + 1):
        terms.append(sum((c * math.prod((sx[p] for p in mu), start=Fraction(1))
                          * math.prod((sl[p] for p in nu), start=Fraction(1))
                          for (mu, nu), c in paired[m].items()), Fraction(0)))
    pref = math.exp(float(sum(xf) * sum(lf)) / k)
    val = pref * float(sum(terms[: order + 1]))
    bound = pref * float(sum(abs(t) for t in terms[order + 1:]))
    return val, bound


def beta4_k3_value(x: Sequence[float], lam: Sequence[float], table: CoeffTable | None = None) -> float:
    """Sp(3) integral from the terminating beta = 4 polynomial.

    I = c sum_sigma e^{x . sigma(lambda)} f(tau(sigma)) / prod tau_ij(sigma)^3;
    c is fixed by I -> 1 at x -> 0, computed exactly from the t-expansion.
    """
    if len(x) != 3:
        raise ValueError("k = 3 only")
    if table is None:
        from .wkb import tau_coefficients_from_series

        table = tau_coefficients_from_series(3, -1, 3)
    import mpmath

    c = _beta4_k3_constant(table)
    # the nine-fold pole cancels between permutations; work at high precision
    with mpmath.workdps(80):
        xs = [mpmath.mpf(float(v)) for v in x]
        ls = [mpmath.mpf(float(v)) for v in lam]
        tot = mpmath.mpf(0)
        for sig in permutations(range(3)):
            l2 = [ls[i] for i in sig]
            tau = [[(xs[i] - xs[j]) * (l2[i] - l2[j]) for j in range(3)] for i in range(3)]
            f = 1 + sum(mpmath.mpf(cg.numerator) / cg.denominator * _orbit_float(g, tau)
                        for g, cg in table.entries.items())
            den = (tau[0][1] * tau[1][2] * tau[0][2]) ** 3
            tot += mpmath.exp(sum(a * b for a, b in zip(xs, l2))) * f / den
        return float(c * tot)


def _orbit_float(g, tau) -> float:
    from .taugraph import embeddings

    total = 0
    for mono in embeddings(g, len(tau)):
        term = 1
        for a, b, m in mono:
            term = term * tau[a - 1][b - 1] ** m
        total = total + term
    return total


_K3_CONST: dict = {}


def _beta4_k3_constant(table: CoeffTable) -> Fraction:
    key = tuple(sorted((g.name, c) for g, c in table.entries.items()))
    if key in _K3_CONST:
        return _K3_CONST[key]
    # t-expansion of sum_sigma e^{t x.sigma(lambda)} f / prod tau^3 at a rational point;
    # prod tau(sigma) = sgn(sigma) Delta(x) Delta(lambda) t^3, so the t^{-9}..t^{-1}
    # coefficients cancel and the t^0 coefficient is 1/c.
    from .taugraph import embeddings

    x = [Fraction(0), Fraction(1), Fraction(3)]
    lm = [Fraction(0), Fraction(2), Fraction(7)]
    total = [Fraction(0)] * 10  # coefficients of t^{-9} .. t^0
    for sig in permutations(range(3)):
        l2 = [lm[i] for i in sig]
        tau = [[(x[i] - x[j]) * (l2[i] - l2[j]) for j in range(3)] for i in range(3)]
        fpoly = [Fraction(0)] * 10  # f(t tau) has t^order
        fpoly[0] = Fraction(1)
        for g, cg in table.entries.items():
            val = sum((math.prod((Fraction(tau[a - 1][b - 1]) ** m for a, b, m in mono), start=Fraction(1))
                       for mono in embeddings(g, 3)), Fraction(0))
            fpoly[g.total_order] += cg * val
        z = sum((x[i] * l2[i] for i in range(3)), Fraction(0))
        ex = _series_exp(z, 9)
        num = _poly_mul(ex, fpoly, 9)
        den = (tau[0][1] * tau[1][2] * tau[0][2]) ** 3
        for n in range(10):
            total[n] += num[n] / den
    if any(total[:9]):
        raise ArithmeticError("singular terms do not cancel; the table is not the beta = 4, k = 3 solution")
    c = 1 / total[9]
    _K3_CONST[key] = c
    return c
