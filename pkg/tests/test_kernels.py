import os
import subprocess
import sys

import numpy as np
import pytest

from entpow import _kernels
from entpow.core import monte_carlo_ep
from entpow.linalg import BipartiteOperator, random_unitary
from entpow.models import ising_evolution

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba backend inactive")


def gaussian_batches(ns, d1, d2, seed=0):
    rng = np.random.default_rng(seed)
    z1 = rng.standard_normal((ns, d1)) + 1j * rng.standard_normal((ns, d1))
    z2 = rng.standard_normal((ns, d2)) + 1j * rng.standard_normal((ns, d2))
    return z1, z2


def test_backend_name():
    assert _kernels.backend() in ("numba", "numpy")
    assert (_kernels.backend() == "numba") == _kernels.HAVE_NUMBA


@needs_numba
@pytest.mark.parametrize("d1,d2", [(2, 2), (2, 3), (3, 4)])
def test_backends_agree(d1, d2):
    u = random_unitary(d1 * d2, rng=d1 * d2)
    z1, z2 = gaussian_batches(400, d1, d2, seed=d1 + d2)
    a = _kernels.product_entropies_numpy(u, z1, z2)
    b = _kernels.product_entropies_numba(u, z1, z2)
    np.testing.assert_allclose(a, b, atol=1e-13, rtol=0)


def test_numpy_kernel_matches_per_state_entropy():
    from entpow.core import linear_entropy

    d1, d2 = 2, 3
    u = random_unitary(6, rng=99)
    z1, z2 = gaussian_batches(50, d1, d2, seed=4)
    out = _kernels.product_entropies_numpy(u, z1, z2)
    for k in range(50):
        psi1 = z1[k] / np.linalg.norm(z1[k])
        psi2 = z2[k] / np.linalg.norm(z2[k])
        want = linear_entropy(u @ np.kron(psi1, psi2), d1, d2)
        assert abs(out[k] - want) < 1e-13


def test_identity_entropies_clamped_nonnegative():
    z1, z2 = gaussian_batches(200, 2, 3, seed=1)
    out = _kernels.product_entropies(np.eye(6, dtype=complex), z1, z2)
    assert np.all(out >= 0)
    assert np.all(out < 1e-12)


@needs_numba
def test_thread_count_does_not_change_results():
    import numba

    op = ising_evolution(0.5, 1.0, 0.77)
    before = numba.get_num_threads()
    try:
        numba.set_num_threads(1)
        one = monte_carlo_ep(op, 20_000, seed=5)
        numba.set_num_threads(max(before, 2) if numba.config.NUMBA_NUM_THREADS >= 2 else 1)
        many = monte_carlo_ep(op, 20_000, seed=5)
    finally:
        numba.set_num_threads(before)
    assert one == many  # bitwise


def test_env_flag_selects_numpy_backend():
    env = dict(os.environ, ENTPOW_NO_NUMBA="1")
    code = (
        "import entpow, numpy as np\n"
        "from entpow import _kernels\n"
        "assert _kernels.backend() == 'numpy'\n"
        "assert _kernels.product_entropies_numba is None\n"
        "u = entpow.ising_evolution(0.5, 0.5, np.pi)\n"
        "est = entpow.monte_carlo_ep(u, 20000, seed=2)\n"
        "assert abs(est.mean - 2/9) < 5 * est.std_error\n"
        "print('ok')\n"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True)
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip() == "ok"


def test_monte_carlo_unaffected_by_operator_memory_layout():
    mat = np.asfortranarray(ising_evolution(0.5, 1.0, 1.3).mat)
    op = BipartiteOperator(mat, 2, 3)
    est = monte_carlo_ep(op, 2000, seed=0)
    ref = monte_carlo_ep(ising_evolution(0.5, 1.0, 1.3), 2000, seed=0)
    assert est == ref
