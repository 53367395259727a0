import os
import subprocess
import sys

import numpy as np
import pytest

from hizwkb import _kernels as K
from hizwkb.taugraph import GRAPHS, orbit_sum
from hizwkb.wkb import orbit_arrays, orbit_jet

needs_numba = pytest.mark.skipif(not K.HAVE_NUMBA, reason="numba backend not active")


@pytest.mark.parametrize("name", ["⊒", "□", "II,II", "Λ,I"])
def test_jets_match_exact_derivatives(name):
    k = 6
    x, lam = [3, -1, 0, 2, -2, 1], [1, 0, -2, 1, 3, -1]
    p = orbit_sum(GRAPHS[name], k)
    val, grad, lap = orbit_jet(GRAPHS[name], x, lam)
    assert val == p.evaluate(x, lam)
    for i in range(k):
        assert grad[i] == p.dx(i + 1).evaluate(x, lam)
    assert lap == sum(p.dx(i + 1, 2).evaluate(x, lam) for i in range(k))


@needs_numba
@pytest.mark.parametrize("name", ["⊒", "M", "II,I,I"])
def test_jet_backends_agree(name):
    a, b, m = orbit_arrays(GRAPHS[name], 7)
    x = np.array([3, -1, 0, 2, -2, 1, -3], dtype=np.int64)
    lam = np.array([1, 0, -2, 1, 3, -1, 2], dtype=np.int64)
    for u, v in zip(K._jets_numba(a, b, m, x, lam), K._jets_numpy(a, b, m, x, lam)):
        assert np.array_equal(np.asarray(u), np.asarray(v))


@needs_numba
def test_haar_backends_agree():
    rng = np.random.default_rng(0)
    k, n = 4, 64
    x, lam = np.linspace(-0.3, 0.3, k), np.linspace(0.2, -0.1, k)
    G = rng.standard_normal((n, k, k))
    H = G + 1j * rng.standard_normal((n, k, k))
    B = rng.standard_normal((n, k, k)) + 1j * rng.standard_normal((n, k, k))
    np.testing.assert_allclose(K._haar_exp_real_numba(G, x, lam), K._haar_exp_real_numpy(G, x, lam), rtol=1e-12)
    np.testing.assert_allclose(K._haar_exp_complex_numba(H, x, lam), K._haar_exp_complex_numpy(H, x, lam), rtol=1e-12)
    np.testing.assert_allclose(K._haar_exp_quaternion_numba(H, B, x, lam),
                               K._haar_exp_quaternion_numpy(H, B, x, lam), rtol=1e-12)


def test_overflow_guard_uses_exact_integers():
    g = GRAPHS["Λ,I,I"]
    x = [10 ** 5, -(10 ** 5), 3, 7, -9, 11, 2]
    lam = [10 ** 5, 1, -(10 ** 5), 4, 5, -6, 8]
    val, _, _ = orbit_jet(g, x, lam)
    assert val == orbit_sum(g, 7).evaluate(x, lam)


def test_env_flag_selects_numpy():
    code = "from hizwkb import _kernels as K; print(K.BACKEND)"
    env = dict(os.environ, HIZ_WKB_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
