"""Entangling power of bipartite unitaries on d1 x d2 systems.

Computes the Haar-average output linear entropy of a unitary from two
matrix rearrangements (realignment and partial transposition), with
closed forms for Ising and isotropic Heisenberg evolutions, Monte Carlo
and permutation-operator verification oracles, and a CSV-emitting CLI.
"""

from ._kernels import backend as mc_backend
from .core import (
    MonteCarloEstimate,
    ProductTermSum,
    entangling_power,
    entangling_power_from_decomposition,
    entangling_power_permutation_oracle,
    ep_constants,
    haar_product_state,
    linear_entropy,
    max_linear_entropy,
    monte_carlo_ep,
    time_average_ep,
)
from .linalg import (
    BipartiteOperator,
    kron,
    partial_time_reversal,
    partial_transpose,
    random_unitary,
    realign,
    trace_power4,
)
from .models import (
    exchange_operator,
    heisenberg_ep_time_average,
    heisenberg_evolution,
    heisenberg_period,
    heisenberg_qubit_qudit_ep_analytic,
    heisenberg_trace_terms,
    ising_ep_analytic,
    ising_ep_time_average,
    ising_evolution,
    ising_trace_term,
    isotropic_energies,
    su2_evolution,
    su2_projector,
    total_spins,
)
from .spin import SpinSystem, spin_operators

__version__ = "0.1.0"

__all__ = [
    "BipartiteOperator",
    "MonteCarloEstimate",
    "ProductTermSum",
    "SpinSystem",
    "entangling_power",
    "entangling_power_from_decomposition",
    "entangling_power_permutation_oracle",
    "ep_constants",
    "exchange_operator",
    "haar_product_state",
    "heisenberg_ep_time_average",
    "heisenberg_evolution",
    "heisenberg_period",
    "heisenberg_qubit_qudit_ep_analytic",
    "heisenberg_trace_terms",
    "ising_ep_analytic",
    "ising_ep_time_average",
    "ising_evolution",
    "ising_trace_term",
    "isotropic_energies",
    "kron",
    "linear_entropy",
    "max_linear_entropy",
    "mc_backend",
    "monte_carlo_ep",
    "partial_time_reversal",
    "partial_transpose",
    "random_unitary",
    "realign",
    "spin_operators",
    "su2_evolution",
    "su2_projector",
    "time_average_ep",
    "total_spins",
    "trace_power4",
]
