"""Time the numba kernels against their numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat N]

Both variants are imported from the same module, so the numba side is skipped
when numba is missing or HIZ_WKB_NO_NUMBA is set.
"""
import argparse
import time

import numpy as np

from hizwkb import _kernels as K
from hizwkb.taugraph import GRAPHS
from hizwkb.wkb import orbit_arrays


def best_of(fn, repeat):
    fn()  # warm-up, includes jit compilation
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def jet_cases(k):
    rng = np.random.default_rng(1)
    x = rng.permutation(np.arange(-k, k + 1))[:k].astype(np.int64)
    lam = rng.integers(-3, 4, size=k).astype(np.int64)
    for name in ("⊒", "□", "II,II", "Λ,I,I"):
        a, b, m = orbit_arrays(GRAPHS[name], k)
        yield f"jets {name} k={k} ({a.shape[0]} terms)", (a, b, m, x, lam)


def haar_cases(k, n):
    rng = np.random.default_rng(2)
    x = np.linspace(-0.3, 0.3, k)
    lam = np.linspace(0.2, -0.2, k)
    G = rng.standard_normal((n, k, k))
    H = G + 1j * rng.standard_normal((n, k, k))
    B = rng.standard_normal((n, k, k)) + 1j * rng.standard_normal((n, k, k))
    yield f"haar O({k}) n={n}", "real", (G, x, lam)
    yield f"haar U({k}) n={n}", "complex", (H, x, lam)
    yield f"haar Sp({k}) n={n}", "quaternion", (H, B, x, lam)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--k", type=int, default=8)
    ap.add_argument("--samples", type=int, default=4096)
    args = ap.parse_args()

    print(f"backend selected at import: {K.BACKEND}")
    print(f"{'case':42s} {'numpy [ms]':>11s} {'numba [ms]':>11s} {'speedup':>8s}")
    rows = [(label, K._jets_numpy, K._jets_numba, a) for label, a in jet_cases(args.k)]
    for label, kind, a in haar_cases(min(args.k, 5), args.samples):
        rows.append((label, getattr(K, f"_haar_exp_{kind}_numpy"), getattr(K, f"_haar_exp_{kind}_numba"), a))
    for label, slow, fast, a in rows:
        t_np = best_of(lambda: slow(*a), args.repeat)
        if K.HAVE_NUMBA:
            ref, got = slow(*a), fast(*a)
            for r, g in zip(ref if isinstance(ref, tuple) else (ref,), got if isinstance(got, tuple) else (got,)):
                assert np.allclose(np.asarray(r, dtype=float), np.asarray(g, dtype=float)), label
            t_nb = best_of(lambda: fast(*a), args.repeat)
            print(f"{label:42s} {t_np * 1e3:11.3f} {t_nb * 1e3:11.3f} {t_np / t_nb:7.1f}x")
        else:
            print(f"{label:42s} {t_np * 1e3:11.3f} {'-':>11s} {'-':>8s}")


if __name__ == "__main__":
    main()
