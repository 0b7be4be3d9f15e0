"""Hot numeric kernels for the Monte Carlo estimator.

The per-sample loop (normalize two Gaussian factor vectors, apply the
unitary to their product, take the reduced-state purity) dominates the
runtime of a Monte Carlo run.  It is compiled with numba by default; set
ENTPOW_NO_NUMBA=1 to select the vectorized pure-numpy path instead (also
used automatically when numba is not importable).

Both paths consume the same pre-drawn Gaussian batches, so results for a
fixed seed differ only by float rounding between backends.  Each sample
writes its own output slot, which keeps results bit-identical regardless
of how many threads numba uses.
"""

import os

import numpy as np

_flag = os.environ.get("ENTPOW_NO_NUMBA", "").strip().lower()
NUMBA_DISABLED = _flag in {"1", "true", "yes", "on"}

if NUMBA_DISABLED:
    HAVE_NUMBA = False
else:
    try:
        from numba import njit, prange

        HAVE_NUMBA = True
    except ImportError:
        HAVE_NUMBA = False


def backend() -> str:
    """Name of the active Monte Carlo backend, 'numba' or 'numpy'."""
    return "numba" if HAVE_NUMBA else "numpy"


def product_entropies_numpy(u, z1, z2):
    """Linear entropies of u applied to normalized product states.

    z1, z2 are (samples, d1) and (samples, d2) complex Gaussian batches;
    returns a (samples,) float array, each entry clamped at 0 against
    purity roundoff slightly above 1.
    """
    ns, d1 = z1.shape
    d2 = z2.shape[1]
    psi1 = z1 / np.linalg.norm(z1, axis=1, keepdims=True)
    psi2 = z2 / np.linalg.norm(z2, axis=1, keepdims=True)
    psi = (psi1[:, :, None] * psi2[:, None, :]).reshape(ns, d1 * d2)
    phi = (psi @ u.T).reshape(ns, d1, d2)
    gram = phi @ phi.conj().transpose(0, 2, 1)
    purity = np.einsum("sij,sij->s", gram.real, gram.real)
    purity += np.einsum("sij,sij->s", gram.imag, gram.imag)
    return np.maximum(1.0 - purity, 0.0)


if HAVE_NUMBA:

    @njit(parallel=True, cache=True)
    def _product_entropies_jit(u, z1, z2):  # pragma: no cover - exercised via wrapper
        ns, d1 = z1.shape
        d2 = z2.shape[1]
        n = d1 * d2
        out = np.empty(ns, dtype=np.float64)
        for s in prange(ns):
            a = z1[s]
            b = z2[s]
            na = 0.0
            for i in range(d1):
                na += a[i].real * a[i].real + a[i].imag * a[i].imag
            nb = 0.0
            for i in range(d2):
                nb += b[i].real * b[i].real + b[i].imag * b[i].imag
            scale = 1.0 / np.sqrt(na * nb)
            psi = np.empty(n, dtype=np.complex128)
            for i in range(d1):
                for k in range(d2):
                    psi[i * d2 + k] = a[i] * b[k] * scale
            phi = np.zeros(n, dtype=np.complex128)
            for i in range(n):
                acc = 0.0 + 0.0j
                for j in range(n):
                    acc += u[i, j] * psi[j]
                phi[i] = acc
            purity = 0.0
            for i in range(d1):
                for k in range(d1):
                    g = 0.0 + 0.0j
                    for m in range(d2):
                        g += phi[i * d2 + m] * np.conj(phi[k * d2 + m])
                    purity += g.real * g.real + g.imag * g.imag
            ent = 1.0 - purity
            out[s] = ent if ent > 0.0 else 0.0
        return out

    def product_entropies_numba(u, z1, z2):
        return _product_entropies_jit(
            np.ascontiguousarray(u, dtype=np.complex128),
            np.ascontiguousarray(z1, dtype=np.complex128),
            np.ascontiguousarray(z2, dtype=np.complex128),
        )

else:
    product_entropies_numba = None


def product_entropies(u, z1, z2):
    """Dispatch to the active backend."""
    if HAVE_NUMBA:
        return product_entropies_numba(u, z1, z2)
    return product_entropies_numpy(u, z1, z2)
