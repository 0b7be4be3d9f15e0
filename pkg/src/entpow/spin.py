"""Half-integer spin systems and the angular-momentum operator matrices.

Basis convention used throughout the package: the magnetic quantum number
runs from +s down to -s, so index 0 is the highest-weight state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, order=True)
class SpinSystem:
    """A spin of length s = two_s / 2 with Hilbert-space dimension 2s + 1."""

    two_s: int

    def __post_init__(self):
        if self.two_s < 0:
            raise ValueError(f"two_s must be nonnegative, got {self.two_s}")

    @classmethod
    def from_spin(cls, s: float) -> "SpinSystem":
        two_s = round(2 * s)
        if abs(2 * s - two_s) > 1e-9:
            raise ValueError(f"spin must be a half-integer, got {s}")
        return cls(two_s)

    @classmethod
    def from_dim(cls, d: int) -> "SpinSystem":
        if d < 1:
            raise ValueError(f"dimension must be positive, got {d}")
        return cls(d - 1)

    @property
    def s(self) -> float:
        return self.two_s / 2

    @property
    def d(self) -> int:
        return self.two_s + 1

    def projections(self) -> np.ndarray:
        """Magnetic quantum numbers ordered s, s-1, ..., -s."""
        return self.s - np.arange(self.d)


def as_spin(value) -> SpinSystem:
    """Coerce a SpinSystem or a half-integer spin value to a SpinSystem."""
    if isinstance(value, SpinSystem):
        return value
    return SpinSystem.from_spin(float(value))


def spin_operators(s) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spin matrices (Sx, Sy, Sz) for spin s, each of shape (2s+1, 2s+1).

    Sz is diagonal with entries s, s-1, ..., -s; the ladder operators carry
    the usual sqrt(s(s+1) - m(m+1)) matrix elements, so [Sx, Sy] = i Sz.
    """
    sys = as_spin(s)
    sval, d = sys.s, sys.d
    m = sys.projections()
    sz = np.diag(m).astype(complex)
    sp = np.zeros((d, d), dtype=complex)
    # raising operator: |m> -> |m+1>, i.e. column k feeds row k-1
    for k in range(1, d):
        sp[k - 1, k] = np.sqrt(sval * (sval + 1) - m[k] * (m[k] + 1))
    sm = sp.conj().T
    sx = (sp + sm) / 2
    sy = (sp - sm) / 2j
    return sx, sy, sz
