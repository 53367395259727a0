"""Hot loops: orbit-sum jets at integer points and Haar Monte-Carlo weights.

Each kernel exists twice, as a numba ``@njit`` function and as a vectorised
numpy function with the same signature.  ``HIZ_WKB_NO_NUMBA=1`` (or a missing
numba) selects the numpy versions; ``BACKEND`` records the choice.
"""
from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("HIZ_WKB_NO_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


# ----------------------------------------------------------------- orbit jets

@njit(cache=True)
def _jets_numba(a, b, m, x, lam):
    E, e = a.shape
    k = x.shape[0]
    value = np.int64(0)
    grad = np.zeros(k, dtype=np.int64)
    lap = np.int64(0)
    t = np.empty(e, dtype=np.int64)
    d = np.empty(e, dtype=np.int64)
    for r in range(E):
        for s in range(e):
            d[s] = lam[a[r, s]] - lam[b[r, s]]
            t[s] = (x[a[r, s]] - x[b[r, s]]) * d[s]
        v = np.int64(1)
        for s in range(e):
            for _ in range(m[r, s]):
                v *= t[s]
        value += v
        for s in range(e):
            w = np.int64(m[r, s]) * d[s]
            for u in range(e):
                p = m[r, u] - (1 if u == s else 0)
                for _ in range(p):
                    w *= t[u]
            grad[a[r, s]] += w
            grad[b[r, s]] -= w
            for s2 in range(e):
                if s2 == s:
                    c = np.int64(m[r, s]) * (m[r, s] - 1)
                    shared = 2
                    sign = 2
                else:
                    c = np.int64(m[r, s]) * m[r, s2]
                    shared = 0
                    sign = 0
                    # shared endpoints: slope of t_s at i is +d_s at a, -d_s at b
                    if a[r, s] == a[r, s2]:
                        shared += 1
                        sign += 1
                    if b[r, s] == b[r, s2]:
                        shared += 1
                        sign += 1
                    if a[r, s] == b[r, s2]:
                        shared += 1
                        sign -= 1
                    if b[r, s] == a[r, s2]:
                        shared += 1
                        sign -= 1
                if c == 0 or shared == 0:
                    continue
                w2 = c * sign * d[s] * d[s2]
                for u in range(e):
                    p = m[r, u] - (1 if u == s else 0) - (1 if u == s2 else 0)
                    if p < 0:
                        w2 = 0
                        break
                    for _ in range(p):
                        w2 *= t[u]
                lap += w2
    return value, grad, lap


def _jets_numpy(a, b, m, x, lam):
    k = x.shape[0]
    E, e = a.shape
    d = lam[a] - lam[b]
    t = (x[a] - x[b]) * d

    def powprod(exps):
        out = np.ones(E, dtype=t.dtype)
        for s in range(e):
            out = out * t[:, s] ** exps[:, s]
        return out

    value = int(powprod(m).sum())
    grad = np.zeros(k, dtype=t.dtype)
    lap = 0
    for s in range(e):
        ex = m.copy()
        ex[:, s] -= 1
        w = m[:, s] * d[:, s] * powprod(ex)
        np.add.at(grad, a[:, s], w)
        np.add.at(grad, b[:, s], -w)
        for s2 in range(e):
            if s2 == s:
                c = m[:, s] * (m[:, s] - 1)
                sign = np.full(E, 2)
            else:
                c = m[:, s] * m[:, s2]
                sign = ((a[:, s] == a[:, s2]).astype(np.int64) + (b[:, s] == b[:, s2])
                        - (a[:, s] == b[:, s2]) - (b[:, s] == a[:, s2]))
            ex2 = m.copy()
            ex2[:, s] -= 1
            ex2[:, s2] -= 1
            ok = (ex2 >= 0).all(axis=1) & (c != 0) & (sign != 0)
            if not ok.any():
                continue
            ex2[~ok] = 0
            w2 = c * sign * d[:, s] * d[:, s2] * powprod(ex2)
            lap += int(w2[ok].sum())
    return value, grad, lap


def orbit_jets(a, b, m, x, lam):
    """Value, x-gradient and x-Laplacian of a sum of tau monomials at an integer point.

    ``a``, ``b``, ``m`` are (monomials, edges) int64 arrays of 0-based endpoints
    and multiplicities.  Arithmetic is int64; callers keep points small enough
    that nothing overflows (see ``jet_bound``) or pass object arrays for
    arbitrary-precision arithmetic.
    """
    if a.shape[0] == 0:
        return 0, np.zeros(x.shape[0], dtype=np.int64), 0
    if x.dtype == object:
        return _jets_numpy(a, b, m, x, lam)
    if HAVE_NUMBA:
        v, g, l = _jets_numba(a, b, m, x, lam)
        return int(v), g, int(l)
    return _jets_numpy(a, b, m, x, lam)


def jet_bound(n_monomials: int, order: int, x, lam) -> int:
    """Crude upper bound on any partial sum formed by ``orbit_jets``."""
    dx = int(max(x) - min(x)) or 1
    dl = int(max(lam) - min(lam)) or 1
    return n_monomials * (dx * dl) ** order * order * order * dl * dl * 4


# ----------------------------------------------------------------- Haar sampling

@njit(cache=True)
def _haar_exp_real_numba(G, x, lam):
    n_samp, k, _ = G.shape
    out = np.empty(n_samp)
    Q = np.empty((k, k))
    for s in range(n_samp):
        for j in range(k):
            for i in range(k):
                Q[i, j] = G[s, i, j]
            for p in range(j):
                dot = 0.0
                for i in range(k):
                    dot += Q[i, p] * Q[i, j]
                for i in range(k):
                    Q[i, j] -= dot * Q[i, p]
            nrm = 0.0
            for i in range(k):
                nrm += Q[i, j] * Q[i, j]
            nrm = np.sqrt(nrm)
            for i in range(k):
                Q[i, j] /= nrm
        acc = 0.0
        for i in range(k):
            for j in range(k):
                acc += lam[i] * Q[i, j] * Q[i, j] * x[j]
        out[s] = np.exp(acc)
    return out


@njit(cache=True)
def _haar_exp_complex_numba(G, x, lam):
    n_samp, k, _ = G.shape
    out = np.empty(n_samp)
    Q = np.empty((k, k), dtype=np.complex128)
    for s in range(n_samp):
        for j in range(k):
            for i in range(k):
                Q[i, j] = G[s, i, j]
            for p in range(j):
                dot = 0.0 + 0.0j
                for i in range(k):
                    dot += np.conj(Q[i, p]) * Q[i, j]
                for i in range(k):
                    Q[i, j] -= dot * Q[i, p]
            nrm = 0.0
            for i in range(k):
                nrm += Q[i, j].real ** 2 + Q[i, j].imag ** 2
            nrm = np.sqrt(nrm)
            for i in range(k):
                Q[i, j] /= nrm
        acc = 0.0
        for i in range(k):
            for j in range(k):
                acc += lam[i] * (Q[i, j].real ** 2 + Q[i, j].imag ** 2) * x[j]
        out[s] = np.exp(acc)
    return out


@njit(cache=True)
def _haar_exp_quaternion_numba(A, B, x, lam):
    # columns j and j+k of [[A, -conj B], [B, conj A]] form a quaternionic pair
    n_samp, k, _ = A.shape
    n = 2 * k
    out = np.empty(n_samp)
    Q = np.empty((n, n), dtype=np.complex128)
    v = np.empty(n, dtype=np.complex128)
    for s in range(n_samp):
        for j in range(k):
            for i in range(k):
                v[i] = A[s, i, j]
                v[i + k] = B[s, i, j]
            for p in range(j):
                for col in (p, p + k):
                    dot = 0.0 + 0.0j
                    for i in range(n):
                        dot += np.conj(Q[i, col]) * v[i]
                    for i in range(n):
                        v[i] -= dot * Q[i, col]
            nrm = 0.0
            for i in range(n):
                nrm += v[i].real ** 2 + v[i].imag ** 2
            nrm = np.sqrt(nrm)
            for i in range(k):
                Q[i, j] = v[i] / nrm
                Q[i + k, j] = v[i + k] / nrm
                Q[i, j + k] = -np.conj(v[i + k]) / nrm
                Q[i + k, j + k] = np.conj(v[i]) / nrm
        acc = 0.0
        for i in range(n):
            for j in range(n):
                acc += lam[i % k] * (Q[i, j].real ** 2 + Q[i, j].imag ** 2) * x[j % k]
        out[s] = np.exp(0.5 * acc)
    return out


def _sign_fixed_qr(G):
    Q, R = np.linalg.qr(G)
    diag = np.diagonal(R, axis1=-2, axis2=-1)
    phase = diag / np.abs(diag)
    return Q * phase[..., None, :]


def _haar_exp_real_numpy(G, x, lam):
    Q = _sign_fixed_qr(G)
    return np.exp(np.einsum("i,sij,j->s", lam, Q * Q, x))


def _haar_exp_complex_numpy(G, x, lam):
    Q = _sign_fixed_qr(G)
    return np.exp(np.einsum("i,sij,j->s", lam, np.abs(Q) ** 2, x))


def _haar_exp_quaternion_numpy(A, B, x, lam):
    n_samp, k, _ = A.shape
    n = 2 * k
    Q = np.zeros((n_samp, n, n), dtype=np.complex128)
    for j in range(k):
        v = np.concatenate([A[:, :, j], B[:, :, j]], axis=1)
        for p in range(j):
            for col in (p, p + k):
                q = Q[:, :, col]
                v = v - np.sum(np.conj(q) * v, axis=1)[:, None] * q
        v = v / np.linalg.norm(v, axis=1)[:, None]
        Q[:, :, j] = v
        Q[:, :k, j + k] = -np.conj(v[:, k:])
        Q[:, k:, j + k] = np.conj(v[:, :k])
    xx = np.concatenate([x, x])
    ll = np.concatenate([lam, lam])
    return np.exp(0.5 * np.einsum("i,sij,j->s", ll, np.abs(Q) ** 2, xx))


def haar_exp_real(G, x, lam):
    """exp(sum_ij lam_i Q_ij^2 x_j) with Q the sign-fixed QR factor of each G."""
    return (_haar_exp_real_numba if HAVE_NUMBA else _haar_exp_real_numpy)(G, x, lam)


def haar_exp_complex(G, x, lam):
    return (_haar_exp_complex_numba if HAVE_NUMBA else _haar_exp_complex_numpy)(G, x, lam)


def haar_exp_quaternion(A, B, x, lam):
    return (_haar_exp_quaternion_numba if HAVE_NUMBA else _haar_exp_quaternion_numpy)(A, B, x, lam)


BACKEND = "numba" if HAVE_NUMBA else "numpy"
