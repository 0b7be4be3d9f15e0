import numpy as np
import pytest

from entpow.core import entangling_power, time_average_ep
from entpow.linalg import BipartiteOperator, partial_transpose, realign, trace_power4
from entpow.models import (
    _qubit_qudit_coeffs,
    exchange_eigenvalue,
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
from entpow.spin import SpinSystem, spin_operators

SPIN_PAIRS = [(0.5, 0.5), (0.5, 1.0), (1.0, 1.0), (0.5, 1.5), (1.0, 1.5)]


# ---------------------------------------------------------------------------
# spin systems and operators


def test_spin_system_basics():
    qutrit = SpinSystem.from_dim(3)
    assert qutrit.s == 1.0 and qutrit.d == 3
    assert SpinSystem.from_spin(0.5).d == 2
    np.testing.assert_array_equal(qutrit.projections(), [1.0, 0.0, -1.0])
    with pytest.raises(ValueError):
        SpinSystem.from_spin(0.3)
    with pytest.raises(ValueError):
        SpinSystem.from_dim(0)
    with pytest.raises(ValueError):
        SpinSystem(-1)


def test_spin_half_gives_half_paulis():
    sx, sy, sz = spin_operators(0.5)
    np.testing.assert_allclose(sx, [[0, 0.5], [0.5, 0]], atol=1e-15)
    np.testing.assert_allclose(sy, [[0, -0.5j], [0.5j, 0]], atol=1e-15)
    np.testing.assert_allclose(sz, [[0.5, 0], [0, -0.5]], atol=1e-15)
    assert np.trace(sz @ sz).real == pytest.approx(0.5)


def test_spin_one_sz_diagonal():
    sz = spin_operators(1)[2]
    np.testing.assert_allclose(sz, np.diag([1.0, 0.0, -1.0]), atol=1e-15)
    assert np.trace(sz @ sz).real == pytest.approx(2.0)  # = d(d^2-1)/12 at d=3


@pytest.mark.parametrize("s", [0.5, 1.0, 1.5])
def test_spin_operators_traceless_and_commutator(s):
    sx, sy, sz = spin_operators(s)
    for op in (sx, sy, sz):
        assert abs(np.trace(op)) < 1e-14
        np.testing.assert_allclose(op, op.conj().T, atol=1e-14)
    np.testing.assert_allclose(sx @ sy - sy @ sx, 1j * sz, atol=1e-12)


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_spin_pair_trace_identity(d):
    ops = spin_operators(SpinSystem.from_dim(d))
    expected = d * (d * d - 1) / 12
    for i, a in enumerate(ops):
        for j, b in enumerate(ops):
            want = expected if i == j else 0.0
            assert abs(np.trace(a @ b) - want) < 1e-12


# ---------------------------------------------------------------------------
# Ising evolution and closed forms


def test_ising_evolution_at_zero_is_identity():
    op = ising_evolution(1.0, 1.5, 0.0)
    np.testing.assert_array_equal(op.mat, np.eye(12))


def test_ising_evolution_two_qubits_at_pi():
    op = ising_evolution(0.5, 0.5, np.pi)
    q = np.exp(1j * np.pi / 4)
    np.testing.assert_allclose(op.mat, np.diag([q, q.conj(), q.conj(), q]), atol=1e-15)


@pytest.mark.parametrize("s1,s2", SPIN_PAIRS)
def test_ising_evolution_is_unitary(s1, s2):
    op = ising_evolution(s1, s2, 1.234)
    assert op.unitarity_residual() < 1e-12


def test_ising_trace_term_at_zero():
    assert ising_trace_term(1.0, 1.5, 0.0) == pytest.approx(9 * 16, abs=1e-9)


def test_ising_trace_term_two_qubits_at_pi():
    # leading term d1*d2^2 = 8; the single Dirichlet ratio vanishes at pi
    brute = trace_power4(realign(ising_evolution(0.5, 0.5, np.pi)))
    assert brute == pytest.approx(8.0, abs=1e-12)
    assert ising_trace_term(0.5, 0.5, np.pi) == pytest.approx(8.0, abs=1e-12)


@pytest.mark.parametrize("s1,s2", SPIN_PAIRS)
def test_ising_trace_term_matches_brute_force(s1, s2):
    for theta in np.linspace(0.0, 2 * np.pi, 17):
        brute = trace_power4(realign(ising_evolution(s1, s2, theta)))
        assert abs(ising_trace_term(s1, s2, theta) - brute) < 1e-9


@pytest.mark.parametrize("s1,s2", SPIN_PAIRS)
def test_ising_theta_average_of_trace_term(s1, s2):
    d1, d2 = SpinSystem.from_spin(s1).d, SpinSystem.from_spin(s2).d
    avg = time_average_ep(lambda th: ising_trace_term(s1, s2, th),
                          period=2 * np.pi, steps=4096)
    assert abs(avg - d1 * d2 * (d1 + d2 - 1)) < 1e-6


def test_ising_ep_two_qubit_curve():
    for theta in np.linspace(0.0, 2 * np.pi, 33):
        want = (2 / 9) * np.sin(theta / 2) ** 2
        assert abs(ising_ep_analytic(0.5, 0.5, theta) - want) < 1e-12
    assert ising_ep_analytic(0.5, 0.5, np.pi) == pytest.approx(2 / 9, abs=1e-12)


def test_ising_ep_vanishes_at_zero():
    for s1, s2 in SPIN_PAIRS:
        assert abs(ising_ep_analytic(s1, s2, 0.0)) < 1e-12


def test_ising_ep_qubit_qudit_cross_check():
    # independent qubit-qudit expression evaluated directly
    d2, theta = 3, np.pi / 2
    direct = d2 / (3 * (d2 + 1)) - (1 - np.cos(d2 * theta)) / (
        3 * d2 * (d2 + 1) * (1 - np.cos(theta)))
    assert abs(ising_ep_analytic(0.5, 1.0, theta) - direct) < 1e-12
    assert abs(entangling_power(ising_evolution(0.5, 1.0, theta)) - direct) < 1e-10


@pytest.mark.parametrize("d1", [2, 3, 4, 5])
@pytest.mark.parametrize("d2", [2, 3, 4, 5])
def test_ising_analytic_matches_matrix_formula(d1, d2):
    s1, s2 = SpinSystem.from_dim(d1), SpinSystem.from_dim(d2)
    for theta in np.linspace(0.0, 2 * np.pi, 33):
        gap = ising_ep_analytic(s1, s2, theta) - entangling_power(ising_evolution(s1, s2, theta))
        assert abs(gap) < 1e-10


def test_ising_time_average_values():
    assert ising_ep_time_average(0.5, 0.5) == pytest.approx(1 / 9, abs=1e-15)
    assert ising_ep_time_average(0.0, 2.0) == 0.0  # trivial first factor
    assert ising_ep_time_average(0.5, 1.0) == pytest.approx(1 / 6, abs=1e-15)


@pytest.mark.parametrize("s1,s2", SPIN_PAIRS)
def test_ising_time_average_matches_quadrature(s1, s2):
    closed = ising_ep_time_average(s1, s2)
    numeric = time_average_ep(lambda th: ising_ep_analytic(s1, s2, th),
                              period=2 * np.pi, steps=4096)
    assert abs(closed - numeric) < 1e-8


def test_ising_ep_periodic_in_theta():
    for theta in np.linspace(0.1, 2 * np.pi, 13):
        assert abs(ising_ep_analytic(1.0, 1.5, theta + 2 * np.pi)
                   - ising_ep_analytic(1.0, 1.5, theta)) < 1e-12


@pytest.mark.parametrize("d2", [2, 3, 4, 5, 6])
def test_ising_extremum_at_pi_for_qubit_first_factor(d2):
    s2 = SpinSystem.from_dim(d2)
    h = 1e-3
    at_pi = ising_ep_analytic(0.5, s2, np.pi)
    left = at_pi - ising_ep_analytic(0.5, s2, np.pi - h)
    right = at_pi - ising_ep_analytic(0.5, s2, np.pi + h)
    assert left * right > 0  # same-side neighbors: strict local extremum


# ---------------------------------------------------------------------------
# SU(2) projectors and Heisenberg evolution


def test_total_spins_and_exchange_eigenvalues():
    assert total_spins(0.5, 1.0) == [0.5, 1.5]
    assert exchange_eigenvalue(0.0, 0.5, 0.5) == pytest.approx(-0.75)
    assert exchange_eigenvalue(1.0, 0.5, 0.5) == pytest.approx(0.25)


def test_triplet_projector_two_qubits():
    sdot = exchange_operator(0.5, 0.5)
    p1 = su2_projector(1.0, 0.5, 0.5)
    np.testing.assert_allclose(p1, sdot + 0.75 * np.eye(4), atol=1e-12)
    assert np.trace(p1).real == pytest.approx(3.0)


@pytest.mark.parametrize("s2", [0.5, 1.0, 1.5])
def test_low_projector_closed_form_for_qubit_first_factor(s2):
    d = SpinSystem.from_spin(s2).d
    sdot = exchange_operator(0.5, s2)
    want = ((d - 1) * np.eye(2 * d) - 4 * sdot) / (2 * d)
    np.testing.assert_allclose(su2_projector(s2 - 0.5, 0.5, s2), want, atol=1e-12)


@pytest.mark.parametrize("s1,s2", [(0.5, 0.5), (0.5, 1.0), (1.0, 1.0)])
def test_projector_algebra(s1, s2):
    projs = [su2_projector(n, s1, s2) for n in total_spins(s1, s2)]
    dim = SpinSystem.from_spin(s1).d * SpinSystem.from_spin(s2).d
    sdot = exchange_operator(s1, s2)
    np.testing.assert_allclose(sum(projs), np.eye(dim), atol=1e-10)
    for n, p in zip(total_spins(s1, s2), projs):
        np.testing.assert_allclose(p, p.conj().T, atol=1e-10)
        np.testing.assert_allclose(p @ p, p, atol=1e-10)
        assert abs(np.trace(p).real - (2 * n + 1)) < 1e-10
        np.testing.assert_allclose(p @ sdot, sdot @ p, atol=1e-10)
    for i, p in enumerate(projs):
        for q in projs[i + 1:]:
            np.testing.assert_allclose(p @ q, np.zeros_like(p), atol=1e-10)


def test_projector_rejects_out_of_range_spin():
    with pytest.raises(ValueError):
        su2_projector(2.0, 0.5, 0.5)
    with pytest.raises(ValueError):
        su2_projector(1.0, 0.5, 1.0)  # range is {0.5, 1.5}


def test_su2_evolution_at_zero_is_identity():
    op = su2_evolution(0.5, 1.0, isotropic_energies(0.5, 1.0), 0.0)
    np.testing.assert_allclose(op.mat, np.eye(6), atol=1e-12)


def test_su2_evolution_matches_spectral_exponential():
    # independent oracle: eigendecompose H = S1.S2 and exponentiate
    t = 0.7
    ham = exchange_operator(0.5, 1.0)
    evals, vecs = np.linalg.eigh(ham)
    expected = (vecs * np.exp(-1j * t * evals)) @ vecs.conj().T
    out = heisenberg_evolution(0.5, 1.0, t)
    np.testing.assert_allclose(out.mat, expected, atol=1e-12)


@pytest.mark.parametrize("d", [2, 3, 5])
def test_su2_evolution_qubit_qudit_two_term_form(d):
    t = 1.3
    s2 = SpinSystem.from_dim(d)
    c_id, c_ex = _qubit_qudit_coeffs(d, t)
    expected = c_id * np.eye(2 * d) + c_ex * exchange_operator(0.5, s2)
    out = heisenberg_evolution(0.5, s2, t)
    np.testing.assert_allclose(out.mat, expected, atol=1e-12)


def test_su2_evolution_validates_energy_count():
    with pytest.raises(ValueError):
        su2_evolution(0.5, 1.0, (1.0,), 0.5)


def test_heisenberg_two_qubit_curve():
    for t in np.linspace(0.0, np.pi, 30):
        want = np.sin(t) ** 2 / 6
        assert abs(heisenberg_qubit_qudit_ep_analytic(0.5, t) - want) < 1e-12


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6, 7, 8])
def test_heisenberg_analytic_matches_matrix_formula(d):
    s2 = SpinSystem.from_dim(d)
    for t in np.linspace(0.0, 2 * np.pi, 17):
        gap = (heisenberg_qubit_qudit_ep_analytic(s2, t)
               - entangling_power(heisenberg_evolution(0.5, s2, t)))
        assert abs(gap) < 1e-10


def test_heisenberg_ep_zero_at_t_zero():
    for d in (2, 3, 7):
        assert heisenberg_qubit_qudit_ep_analytic(SpinSystem.from_dim(d), 0.0) == 0.0


def test_heisenberg_qutrit_at_unit_time():
    s2 = SpinSystem.from_dim(3)
    matrix = entangling_power(heisenberg_evolution(0.5, s2, 1.0))
    assert abs(heisenberg_qubit_qudit_ep_analytic(s2, 1.0) - matrix) < 1e-10


@pytest.mark.parametrize("d", [2, 3, 4, 6, 8])
def test_heisenberg_trace_terms_match_brute_force(d):
    s2 = SpinSystem.from_dim(d)
    assert heisenberg_trace_terms(s2, 0.0) == pytest.approx((4 * d * d, 2 * d), abs=1e-9)
    for t in np.linspace(0.0, 2 * np.pi, 9):
        op = heisenberg_evolution(0.5, s2, t)
        tr_r, tr_p = heisenberg_trace_terms(s2, t)
        assert abs(tr_r - trace_power4(realign(op))) < 1e-9
        assert abs(tr_p - trace_power4(partial_transpose(op).mat)) < 1e-9


def test_heisenberg_reversal_weights_not_unimodular():
    # the projector weights after partial time reversal stray off the unit
    # circle, so the closed form must keep their full moduli
    d, t = 3, np.pi / 2
    c_id, c_ex = _qubit_qudit_coeffs(d, t)
    w_lo = c_id + (d + 1) / 4 * c_ex
    assert abs(abs(w_lo) - 1.0) > 0.1


def test_heisenberg_time_average_values():
    assert heisenberg_ep_time_average(0.5) == pytest.approx(1 / 12, abs=1e-15)
    assert heisenberg_ep_time_average(1.0) == pytest.approx(48 / 243, abs=1e-15)


@pytest.mark.parametrize("d", [2, 3, 5, 8])
def test_heisenberg_time_average_matches_quadrature(d):
    s2 = SpinSystem.from_dim(d)
    numeric = time_average_ep(lambda t: heisenberg_qubit_qudit_ep_analytic(s2, t),
                              period=heisenberg_period(s2), steps=4096)
    assert abs(numeric - heisenberg_ep_time_average(s2)) < 1e-8


def test_heisenberg_time_average_monotone_in_dimension():
    vals = [heisenberg_ep_time_average(SpinSystem.from_dim(d)) for d in range(2, 13)]
    assert all(b > a for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("d", [2, 3, 5])
def test_heisenberg_ep_periodic(d):
    s2 = SpinSystem.from_dim(d)
    period = heisenberg_period(s2)
    for t in np.linspace(0.0, period, 9):
        assert abs(heisenberg_qubit_qudit_ep_analytic(s2, t + period)
                   - heisenberg_qubit_qudit_ep_analytic(s2, t)) < 1e-12
