"""Entangling power of bipartite unitaries.

The production path expresses the Haar average of the output linear
entropy through two trace invariants of the operator, one of its
realignment and one of its partial transposition.  Two independent
verification routes are provided: an explicit permutation-operator
construction on the doubled space, and seeded Monte Carlo sampling of
Haar product states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

import numpy as np

from ._kernels import product_entropies
from .linalg import UNITARY_TOL, BipartiteOperator, partial_transpose, realign, trace_power4

ORACLE_DIM_LIMIT = 16


def ep_constants(d1: int, d2: int) -> tuple[float, float]:
    """(offset, scale) of the entangling-power formula ep = offset - scale * traces.

    offset = (d1 d2 + 1) / ((d1+1)(d2+1)) and scale = 1 / (d1 d2 (d1+1)(d2+1));
    they satisfy offset = scale * (d1^2 d2^2 + d1 d2), which is what makes the
    entangling power of any product unitary vanish.
    """
    if d1 < 1 or d2 < 1:
        raise ValueError("dimensions must be positive")
    offset = (d1 * d2 + 1) / ((d1 + 1) * (d2 + 1))
    scale = 1 / (d1 * d2 * (d1 + 1) * (d2 + 1))
    return offset, scale


def max_linear_entropy(d1: int, d2: int) -> float:
    """Largest linear entropy a pure state of a d1 x d2 system can have."""
    return 1 - 1 / min(d1, d2)


def linear_entropy(psi, d1: int, d2: int) -> float:
    """1 - Tr(rho1^2) for a normalized pure state of a d1 x d2 system.

    Zero exactly for product states, 1 - 1/min(d1, d2) for maximally
    entangled ones.  Raises ValueError if psi is not normalized to 1e-10.
    """
    psi = np.asarray(psi, dtype=complex).ravel()
    if psi.size != d1 * d2:
        raise ValueError(f"state has length {psi.size}, expected {d1 * d2}")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"state is not normalized: |psi| = {norm!r}")
    m = psi.reshape(d1, d2)
    gram = m @ m.conj().T  # reduced density matrix of the first factor
    purity = float(np.sum(gram.real**2 + gram.imag**2))
    return max(1.0 - purity, 0.0)


def _check_range(ep: float, d1: int, d2: int, what: str) -> float:
    hi = max_linear_entropy(d1, d2)
    if ep < -1e-10 or ep > hi + 1e-10:
        raise ArithmeticError(f"{what} = {ep!r} outside [0, {hi}]")
    return ep


def entangling_power(op: BipartiteOperator, unitarity_tol: float = UNITARY_TOL) -> float:
    """Entangling power of a unitary bipartite operator.

    Evaluated from the fourth-power traces of the realigned and the
    partially transposed operator.  The value is asserted, never clamped,
    to lie in [0, 1 - 1/min(d1, d2)] up to 1e-10.
    """
    res = op.unitarity_residual()
    if res > unitarity_tol:
        raise ValueError(f"entangling power needs a unitary operator: "
                         f"max |U†U - I| = {res:.3e} > {unitarity_tol:.0e}")
    offset, scale = ep_constants(op.d1, op.d2)
    traces = trace_power4(realign(op)) + trace_power4(partial_transpose(op).mat)
    return _check_range(offset - scale * traces, op.d1, op.d2, "entangling power")


def factor_swap_permutations(d1: int, d2: int) -> tuple[np.ndarray, np.ndarray]:
    """Permutation matrices on (C^{d1} (x) C^{d2})^{(x)2} swapping factors 1,3
    respectively 2,4 of the four-factor product."""
    nn = (d1 * d2) ** 2
    eye8 = np.eye(nn).reshape((d1, d2, d1, d2, d1, d2, d1, d2))
    swap13 = eye8.transpose(2, 1, 0, 3, 4, 5, 6, 7).reshape(nn, nn)
    swap24 = eye8.transpose(0, 3, 2, 1, 4, 5, 6, 7).reshape(nn, nn)
    return swap13, swap24


def entangling_power_permutation_oracle(op: BipartiteOperator,
                                        unitarity_tol: float = UNITARY_TOL) -> float:
    """Entangling power from the doubled-space permutation-operator form.

    Builds the factor-swap permutations explicitly, forms U (x) U and takes
    the two Hilbert-Schmidt products; a validation oracle for
    entangling_power, guarded to d1 * d2 <= 16.
    """
    d1, d2 = op.d1, op.d2
    if d1 * d2 > ORACLE_DIM_LIMIT:
        raise ValueError(f"permutation oracle is limited to d1*d2 <= {ORACLE_DIM_LIMIT}, "
                         f"got {d1 * d2}")
    res = op.unitarity_residual()
    if res > unitarity_tol:
        raise ValueError(f"permutation oracle needs a unitary operator: residual {res:.3e}")
    swap13, swap24 = factor_swap_permutations(d1, d2)
    if abs(np.trace(swap13) - d1 * d2 * d2) > 1e-9 or abs(np.trace(swap24) - d1 * d1 * d2) > 1e-9:
        raise ArithmeticError("factor-swap permutations have wrong traces")
    u2 = np.kron(op.mat, op.mat)
    right = u2 @ swap13
    total = 0.0 + 0.0j
    for swap in (swap13, swap24):
        total += np.vdot(u2, swap @ right)  # <U(x)U, T U(x)U T13>
    if abs(total.imag) > 1e-9:
        raise ArithmeticError(f"permutation-oracle traces not real: imag = {total.imag:.3e}")
    offset, scale = ep_constants(d1, d2)
    return _check_range(offset - scale * total.real, d1, d2, "permutation-oracle value")


@dataclass(frozen=True)
class ProductTermSum:
    """An operator given as sum_i c_i A_i (x) B_i with A_i d1 x d1, B_i d2 x d2."""

    d1: int
    d2: int
    terms: tuple

    def __post_init__(self):
        terms = tuple((complex(c), np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))
                      for c, a, b in self.terms)
        for _, a, b in terms:
            if a.shape != (self.d1, self.d1):
                raise ValueError(f"first-factor term has shape {a.shape}, "
                                 f"expected ({self.d1}, {self.d1})")
            if b.shape != (self.d2, self.d2):
                raise ValueError(f"second-factor term has shape {b.shape}, "
                                 f"expected ({self.d2}, {self.d2})")
        if not terms:
            raise ValueError("need at least one term")
        object.__setattr__(self, "terms", terms)

    def materialize(self) -> BipartiteOperator:
        n = self.d1 * self.d2
        total = np.zeros((n, n), dtype=complex)
        for c, a, b in self.terms:
            total += c * np.kron(a, b)
        return BipartiteOperator(total, self.d1, self.d2)


def entangling_power_from_decomposition(dec: ProductTermSum,
                                        unitarity_tol: float = UNITARY_TOL) -> float:
    """Entangling power evaluated from a product decomposition.

    Only traces of products of the small factor matrices enter, so the
    full operator is never needed; it is materialized purely to validate
    unitarity while d1 * d2 <= 64.
    """
    if dec.d1 * dec.d2 <= 64:
        res = dec.materialize().unitarity_residual()
        if res > unitarity_tol:
            raise ValueError(f"decomposition does not materialize to a unitary: "
                             f"residual {res:.3e}")
    c = np.array([t[0] for t in dec.terms])
    a = np.stack([t[1] for t in dec.terms])
    b = np.stack([t[2] for t in dec.terms])
    ta2 = np.einsum("iab,jab->ij", a, a.conj())  # Tr[A_i A_j†]
    tb2 = np.einsum("iab,jab->ij", b, b.conj())
    x = (c[:, None] * c.conj()[None, :]) * ta2
    tr_realign = np.einsum("ij,kl,il,kj->", x, x, tb2, tb2)
    pa = np.einsum("iab,jcb->ijac", a, a.conj())  # A_i A_j†
    pb = np.einsum("iab,jcb->ijac", b, b.conj())
    ta4 = np.einsum("ijab,klba->ijkl", pa, pa)  # Tr[A_i A_j† A_k A_l†]
    tb4 = np.einsum("ijab,klba->ijkl", pb, pb)
    tr_ptrans = np.einsum("i,j,k,l,ijkl,ilkj->", c, c.conj(), c, c.conj(), ta4, tb4)
    total = tr_realign + tr_ptrans
    if abs(total.imag) > 1e-9:
        raise ArithmeticError(f"decomposition traces not real: imag = {total.imag:.3e}")
    offset, scale = ep_constants(dec.d1, dec.d2)
    return _check_range(offset - scale * total.real, dec.d1, dec.d2, "decomposition value")


def haar_product_state(d1: int, d2: int, rng=None) -> np.ndarray:
    """A product state |psi1> (x) |psi2> with each factor Haar-uniform."""
    if d1 < 1 or d2 < 1:
        raise ValueError("dimensions must be positive")
    rng = np.random.default_rng(rng)
    psi1 = rng.standard_normal(d1) + 1j * rng.standard_normal(d1)
    psi2 = rng.standard_normal(d2) + 1j * rng.standard_normal(d2)
    psi1 /= np.linalg.norm(psi1)
    psi2 /= np.linalg.norm(psi2)
    return np.kron(psi1, psi2)


class MonteCarloEstimate(NamedTuple):
    mean: float
    std_error: float
    samples: int
    seed: int


def monte_carlo_ep(op: BipartiteOperator, samples: int = 10_000, seed: int = 0,
                   unitarity_tol: float = UNITARY_TOL) -> MonteCarloEstimate:
    """Monte Carlo estimate of the entangling power.

    Averages the linear entropy of U applied to Haar product states.  All
    Gaussian inputs are drawn up front from a generator seeded with `seed`,
    and every sample fills its own slot, so the estimate is bit-for-bit
    reproducible for a fixed (seed, samples) pair, whatever the thread
    count of the kernel backend.
    """
    if samples < 2:
        raise ValueError("need at least 2 samples for a standard error")
    res = op.unitarity_residual()
    if res > unitarity_tol:
        raise ValueError(f"Monte Carlo needs a unitary operator: residual {res:.3e}")
    rng = np.random.default_rng(seed)
    z1 = rng.standard_normal((samples, op.d1)) + 1j * rng.standard_normal((samples, op.d1))
    z2 = rng.standard_normal((samples, op.d2)) + 1j * rng.standard_normal((samples, op.d2))
    ents = product_entropies(op.mat, z1, z2)
    mean = float(ents.mean())
    std_error = float(ents.std(ddof=1) / math.sqrt(samples))
    return MonteCarloEstimate(mean, std_error, samples, seed)


def time_average_ep(ep_of_t: Callable[[float], float], period: Optional[float] = None,
                    t_max: Optional[float] = None, steps: int = 4096) -> float:
    """Trapezoid-rule time average of an entangling-power curve.

    With `period` given, averages over exactly one period with `steps`
    panels (spectrally accurate for smooth periodic curves); otherwise
    averages over [0, t_max].
    """
    if steps < 2:
        raise ValueError("need at least 2 panels")
    span = period if period is not None else t_max
    if span is None or span <= 0:
        raise ValueError("need a positive period or t_max")
    grid = np.linspace(0.0, span, steps + 1)
    vals = np.array([float(ep_of_t(t)) for t in grid])
    if not np.all(np.isfinite(vals)):
        raise ArithmeticError("entangling-power curve returned non-finite values")
    return float((vals[0] / 2 + vals[1:-1].sum() + vals[-1] / 2) / steps)
