"""Ising and isotropic Heisenberg evolutions and their closed-form
entangling powers.

The Ising evolution is diagonal in the product basis, so its entangling
power reduces to a sum of squared Dirichlet kernels over the first
factor's index differences.  The Heisenberg (and any rotation-invariant)
evolution is a phase-weighted sum of total-spin projectors; for a qubit
coupled to a qudit this collapses to two projectors and a closed form.
"""

from __future__ import annotations

import numpy as np

from .core import _check_range, ep_constants
from .linalg import BipartiteOperator, kron
from .spin import SpinSystem, as_spin, spin_operators

# below this, sin^2(x)/sin^2(y) ratios are evaluated at their y -> 0 limit
SINGULARITY_EPS = 1e-8


# ---------------------------------------------------------------------------
# Ising interaction: U diagonal with phases exp(i theta m1 m2)


def ising_evolution(s1, s2, theta: float) -> BipartiteOperator:
    """Evolution generated by the Sz (x) Sz coupling, as a diagonal unitary.

    theta is the accumulated dimensionless phase (coupling times time, in
    hbar = 1 units); basis ordered m = s, s-1, ..., -s on each factor.
    """
    sys1, sys2 = as_spin(s1), as_spin(s2)
    phases = np.exp(1j * theta * np.outer(sys1.projections(), sys2.projections()))
    return BipartiteOperator(np.diag(phases.ravel()), sys1.d, sys2.d)


def _dirichlet_ratio_sq(d2: int, half_angle: float) -> float:
    """sin^2(d2 x) / sin^2(x) with the removable singularity at sin x = 0."""
    s = np.sin(half_angle)
    if abs(s) < SINGULARITY_EPS:
        return float(d2 * d2)
    r = np.sin(d2 * half_angle) / s
    return float(r * r)


def ising_trace_term(s1, s2, theta: float) -> float:
    """Fourth-power trace of the realigned Ising evolution, in closed form.

    Equals d1 d2^2 plus a weighted sum of squared Dirichlet kernels over
    the nonzero index differences of the first factor.
    """
    d1, d2 = as_spin(s1).d, as_spin(s2).d
    total = d1 * d2 * d2
    for diff in range(1, d1):
        total += 2 * (d1 - diff) * _dirichlet_ratio_sq(d2, diff * theta / 2)
    return float(total)


def ising_ep_analytic(s1, s2, theta: float) -> float:
    """Closed-form entangling power of the Ising evolution."""
    d1, d2 = as_spin(s1).d, as_spin(s2).d
    offset, scale = ep_constants(d1, d2)
    # the partial transpose leaves the diagonal U unchanged, so its trace
    # term is the unitary value d1*d2
    ep = offset - scale * (ising_trace_term(s1, s2, theta) + d1 * d2)
    return _check_range(ep, d1, d2, "Ising entangling power")


def ising_ep_time_average(s1, s2) -> float:
    """Long-time average of the Ising entangling power."""
    d1, d2 = as_spin(s1).d, as_spin(s2).d
    return (1 - 2 / (d1 + 1)) * (1 - 2 / (d2 + 1))


# ---------------------------------------------------------------------------
# Rotation-invariant (SU(2)) interactions


def exchange_eigenvalue(n: float, s1, s2) -> float:
    """Eigenvalue of S1 . S2 on the total-spin-n subspace of s1 (x) s2."""
    sa, sb = as_spin(s1).s, as_spin(s2).s
    return 0.5 * (n * (n + 1) - sa * (sa + 1) - sb * (sb + 1))


def total_spins(s1, s2) -> list[float]:
    """Total-spin values |s2 - s1| ... s1 + s2 in ascending order."""
    sys1, sys2 = as_spin(s1), as_spin(s2)
    lo = abs(sys2.two_s - sys1.two_s)
    hi = sys2.two_s + sys1.two_s
    return [two_n / 2 for two_n in range(lo, hi + 1, 2)]


def exchange_operator(s1, s2) -> np.ndarray:
    """S1 . S2 = sum_i S1^i (x) S2^i on the composite space."""
    ops1 = spin_operators(s1)
    ops2 = spin_operators(s2)
    return sum(kron(a, b) for a, b in zip(ops1, ops2))


def su2_projector(n: float, s1, s2) -> np.ndarray:
    """Projector onto the total-spin-n subspace of s1 (x) s2.

    Built from the product form in powers of S1 . S2; Hermitian and
    idempotent with trace 2n + 1.
    """
    sys1, sys2 = as_spin(s1), as_spin(s2)
    if sys1.two_s > sys2.two_s:
        raise ValueError("expected s1 <= s2")
    spins = total_spins(sys1, sys2)
    if not any(abs(n - k) < 1e-9 for k in spins):
        raise ValueError(f"total spin {n} outside {spins[0]} ... {spins[-1]}")
    sdot = exchange_operator(sys1, sys2)
    lam_n = exchange_eigenvalue(n, sys1, sys2)
    eye = np.eye(sys1.d * sys2.d)
    proj = eye.astype(complex)
    for k in spins:
        if abs(k - n) < 1e-9:
            continue
        lam_k = exchange_eigenvalue(k, sys1, sys2)
        proj = proj @ (sdot - lam_k * eye) / (lam_n - lam_k)
    return proj


def isotropic_energies(s1, s2) -> tuple[float, ...]:
    """Spectrum of the isotropic exchange coupling H = S1 . S2, ordered by
    ascending total spin."""
    return tuple(exchange_eigenvalue(n, s1, s2) for n in total_spins(s1, s2))


def su2_evolution(s1, s2, energies, t: float) -> BipartiteOperator:
    """exp(-i H t) for a rotation-invariant H given by its spectrum.

    energies lists one eigenvalue per total-spin subspace, ascending in n,
    aligned with total_spins(s1, s2).
    """
    sys1, sys2 = as_spin(s1), as_spin(s2)
    spins = total_spins(sys1, sys2)
    energies = tuple(float(e) for e in energies)
    if len(energies) != len(spins):
        raise ValueError(f"expected {len(spins)} energies, got {len(energies)}")
    n_dim = sys1.d * sys2.d
    total = np.zeros((n_dim, n_dim), dtype=complex)
    for n, energy in zip(spins, energies):
        total += np.exp(-1j * t * energy) * su2_projector(n, sys1, sys2)
    return BipartiteOperator.unitary(total, sys1.d, sys2.d)


def heisenberg_evolution(s1, s2, t: float) -> BipartiteOperator:
    """exp(-i t S1 . S2), the isotropic Heisenberg evolution."""
    return su2_evolution(s1, s2, isotropic_energies(s1, s2), t)


def _qubit_qudit_coeffs(d: int, t: float) -> tuple[complex, complex]:
    """Coefficients (c_id, c_ex) of U = c_id I + c_ex S1 . S2 for a qubit
    exchange-coupled to a dimension-d qudit."""
    e_lo = -(d + 1) / 4
    e_hi = (d - 1) / 4
    a_lo = np.exp(-1j * t * e_lo)
    a_hi = np.exp(-1j * t * e_hi)
    c_id = ((d - 1) * a_lo + (d + 1) * a_hi) / (2 * d)
    c_ex = 2 * (a_hi - a_lo) / d
    return complex(c_id), complex(c_ex)


def heisenberg_trace_terms(s2, t: float) -> tuple[float, float]:
    """Closed-form fourth-power traces (realignment, partial transpose) of
    the qubit-qudit Heisenberg evolution.

    The partial-transpose term goes through the partial time reversal,
    which flips the sign of the exchange part; its projector weights are
    generally not unimodular, so full complex moduli are kept.
    """
    d = as_spin(s2).d
    c_id, c_ex = _qubit_qudit_coeffs(d, t)
    tr_realign = (4 * d * d * abs(c_id) ** 4
                  + (d * d - 1) ** 2 * d * d * abs(c_ex) ** 4 / 192)
    e_lo = -(d + 1) / 4
    e_hi = (d - 1) / 4
    w_lo = c_id - e_lo * c_ex
    w_hi = c_id - e_hi * c_ex
    tr_ptrans = (d - 1) * abs(w_lo) ** 4 + (d + 1) * abs(w_hi) ** 4
    return float(tr_realign), float(tr_ptrans)


def heisenberg_qubit_qudit_ep_analytic(s2, t: float) -> float:
    """Closed-form entangling power of the qubit-qudit Heisenberg evolution.

    For d = 2 this reduces to sin^2(t) / 6; the curve is periodic in t with
    period 4 pi / d.
    """
    d = as_spin(s2).d
    quartic_coeff = 2 * (6 - d + d**3)
    s_quarter = np.sin(d * t / 4) ** 2
    ep = 4 * (d - 1) / (9 * d**4) * (3 * d**3 - quartic_coeff * s_quarter) * s_quarter
    return _check_range(float(ep), 2, d, "Heisenberg entangling power")


def heisenberg_ep_time_average(s2) -> float:
    """Long-time average of the qubit-qudit Heisenberg entangling power."""
    d = as_spin(s2).d
    return (d - 1) * (d**3 + d - 6) / (3 * d**4)


def heisenberg_period(s2) -> float:
    """Period in t of the qubit-qudit Heisenberg entangling power."""
    return 4 * np.pi / as_spin(s2).d
