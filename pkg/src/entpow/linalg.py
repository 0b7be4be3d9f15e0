"""Dense complex linear algebra for bipartite operators.

A bipartite operator acts on C^{d1} (x) C^{d2}.  The composite basis index
is row-major, (i, a) -> i * d2 + a with i < d1 and a < d2, which is exactly
the ordering produced by numpy's Kronecker product.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

UNITARY_TOL = 1e-10


@dataclass(frozen=True)
class BipartiteOperator:
    """A (d1*d2) x (d1*d2) complex matrix tagged with its factor dimensions."""

    mat: np.ndarray
    d1: int
    d2: int

    def __post_init__(self):
        if self.d1 < 1 or self.d2 < 1:
            raise ValueError(f"factor dimensions must be positive, got {self.d1}x{self.d2}")
        mat = np.ascontiguousarray(self.mat, dtype=complex)
        n = self.d1 * self.d2
        if mat.shape != (n, n):
            raise ValueError(f"expected a {n}x{n} matrix for a {self.d1}x{self.d2} system, "
                             f"got shape {mat.shape}")
        if not np.all(np.isfinite(mat)):
            raise ArithmeticError("operator has non-finite entries")
        object.__setattr__(self, "mat", mat)

    @classmethod
    def unitary(cls, mat, d1: int, d2: int, tol: float = UNITARY_TOL) -> "BipartiteOperator":
        """Construct and verify U†U = I to within tol in max-entry norm."""
        op = cls(mat, d1, d2)
        res = op.unitarity_residual()
        if res > tol:
            raise ValueError(f"matrix is not unitary: max |U†U - I| = {res:.3e} > {tol:.0e}")
        return op

    @property
    def dim(self) -> int:
        return self.d1 * self.d2

    def unitarity_residual(self) -> float:
        n = self.dim
        return float(np.max(np.abs(self.mat.conj().T @ self.mat - np.eye(n))))


def kron(a, b) -> np.ndarray:
    """Kronecker product of the two factor matrices, composite row-major order."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != 2 or b.ndim != 2:
        raise ValueError("kron expects two matrices")
    return np.kron(a, b)


def realign(op: BipartiteOperator) -> np.ndarray:
    """Realignment of a bipartite operator, returned as a d1^2 x d2^2 matrix.

    Row (i, j) and column (a, b) of the result hold the operator entry at
    composite row (i, a), column (j, b).  For a product kron(A, B) this is
    the rank-one matrix vec(A) vec(B)^T with row-major vec.
    """
    d1, d2 = op.d1, op.d2
    u4 = op.mat.reshape(d1, d2, d1, d2)
    return np.ascontiguousarray(u4.transpose(0, 2, 1, 3).reshape(d1 * d1, d2 * d2))


def partial_transpose(op: BipartiteOperator) -> BipartiteOperator:
    """Transpose only the first factor's indices; an involution."""
    d1, d2 = op.d1, op.d2
    u4 = op.mat.reshape(d1, d2, d1, d2)
    pt = u4.transpose(2, 1, 0, 3).reshape(op.dim, op.dim)
    return BipartiteOperator(pt, d1, d2)


def partial_time_reversal(op: BipartiteOperator, s1) -> BipartiteOperator:
    """Time reversal applied to the first factor only.

    Conjugates the partial transpose with the pi rotation about the first
    factor's y axis; the rotation is built from the exact spectral
    decomposition of Sy (eigenvalues -s ... s), so no general matrix
    exponential is needed.
    """
    from .spin import as_spin, spin_operators

    sys1 = as_spin(s1)
    if sys1.d != op.d1:
        raise ValueError(f"spin dimension {sys1.d} does not match first factor d1={op.d1}")
    _, sy, _ = spin_operators(sys1)
    _, vecs = np.linalg.eigh(sy)
    m_asc = -sys1.s + np.arange(sys1.d)  # eigh sorts eigenvalues ascending
    rot = (vecs * np.exp(-1j * np.pi * m_asc)) @ vecs.conj().T
    pt = partial_transpose(op).mat
    full_rot = np.kron(rot, np.eye(op.d2))
    return BipartiteOperator(full_rot @ pt @ full_rot.conj().T, op.d1, op.d2)


def trace_power4(m) -> float:
    """Tr[(M M†)^2] of a rectangular complex matrix, as a nonnegative real.

    Computed as the squared Frobenius norm of the smaller Gram matrix of M,
    which avoids forming the fourth power.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise ValueError("trace_power4 expects a matrix")
    if not np.all(np.isfinite(m)):
        raise ArithmeticError("trace_power4 got non-finite entries")
    if m.shape[0] <= m.shape[1]:
        g = m @ m.conj().T
    else:
        g = m.conj().T @ m
    return float(np.sum(g.real**2 + g.imag**2))


def random_unitary(dim: int, rng=None) -> np.ndarray:
    """Haar-distributed unitary: QR of a complex Gaussian matrix with the
    phases of the R diagonal absorbed into Q."""
    rng = np.random.default_rng(rng)
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))
