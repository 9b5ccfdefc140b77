import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strandsim import sim
from strandsim.comparison import compare_exact
from strandsim.encoding import build_comparison_circuit
from strandsim.exceptions import CapacityError, UnsupportedFeatureError, UsageError
from strandsim.sim import (
    Circuit,
    apply_circuit,
    apply_gate,
    circuit_unitary,
    new_statevector,
    probability_of,
    sample_measurements,
    simulate,
)

from conftest import dense_circuit, dense_gate, random_circuit

S = 1 / math.sqrt(2)


@pytest.mark.parametrize("n", [1, 2, 4])
def test_new_statevector_is_all_zero_basis_state(n):
    state = new_statevector(n)
    expected = np.zeros(2**n)
    expected[0] = 1
    np.testing.assert_array_equal(state.amplitudes, expected)


@pytest.mark.parametrize("n", [0, 25, -1])
def test_new_statevector_capacity(n):
    with pytest.raises(CapacityError):
        new_statevector(n)


def test_new_statevector_cap_is_configurable():
    with pytest.raises(CapacityError):
        new_statevector(5, max_qubits=4)


def test_hadamard_on_zero():
    out = apply_gate(new_statevector(1), sim.h(0))
    np.testing.assert_allclose(out.amplitudes, [S, S], atol=1e-15)


def test_ry_pi_reaches_one_pole():
    out = apply_gate(new_statevector(1), sim.ry(math.pi, 0))
    np.testing.assert_allclose(out.amplitudes, [0, 1], atol=1e-12)


def test_mcry_single_closed_control():
    state = apply_gate(new_statevector(2), sim.x(0))
    out = apply_gate(state, sim.mcry([(0, True)], 1, math.pi / 2))
    # index = q0 + 2*q1
    np.testing.assert_allclose(out.amplitudes, [0, math.cos(math.pi / 4), 0, math.sin(math.pi / 4)], atol=1e-15)


def test_mcry_open_control_fires_on_zero():
    out = apply_gate(new_statevector(2), sim.mcry([(0, False)], 1, math.pi))
    np.testing.assert_allclose(out.amplitudes, [0, 0, 1, 0], atol=1e-15)
    blocked = apply_gate(apply_gate(new_statevector(2), sim.x(0)), sim.mcry([(0, False)], 1, math.pi))
    np.testing.assert_allclose(blocked.amplitudes, [0, 1, 0, 0], atol=1e-15)


def test_apply_gate_does_not_mutate_input():
    state = new_statevector(1)
    apply_gate(state, sim.x(0))
    assert state.amplitudes[0] == 1


def test_apply_gate_rejects_measure_and_bad_index():
    with pytest.raises(UsageError):
        apply_gate(new_statevector(1), sim.measure(0, 0))
    with pytest.raises(UsageError):
        apply_gate(new_statevector(1), sim.x(1))


def test_gate_rejects_duplicate_qubits():
    with pytest.raises(UsageError):
        sim.cnot(1, 1)
    with pytest.raises(UsageError):
        sim.mcry([(0, True), (0, False)], 1, 0.1)


def test_u_matrix_reduces_to_ry():
    for theta in (0.0, 0.3, math.pi, -1.2):
        np.testing.assert_allclose(sim.u_matrix(theta, 0, 0), sim.ry_matrix(theta))
    c, s = math.cos(0.35), math.sin(0.35)
    np.testing.assert_allclose(
        sim.u_matrix(0.7, 0.2, 0.5),
        [[c, -np.exp(0.5j) * s], [np.exp(0.2j) * s, np.exp(0.7j) * c]],
    )


def test_empty_circuit_is_identity():
    state = apply_gate(new_statevector(2), sim.h(1))
    out = apply_circuit(state, Circuit(2))
    np.testing.assert_array_equal(out.amplitudes, state.amplitudes)


def test_hh_is_identity():
    out = simulate(Circuit(1, 0, [sim.h(0), sim.h(0)]))
    np.testing.assert_allclose(out.amplitudes, [1, 0], atol=1e-12)


def test_x_then_cnot():
    out = simulate(Circuit(2, 0, [sim.x(0), sim.cnot(0, 1)]))
    np.testing.assert_allclose(out.amplitudes, [0, 0, 0, 1])


def test_trailing_measure_is_deferred():
    out = simulate(Circuit(1, 1, [sim.h(0), sim.measure(0, 0)]))
    np.testing.assert_allclose(out.amplitudes, [S, S])


def test_mid_circuit_measure_rejected():
    circ = Circuit(1, 1, [sim.measure(0, 0), sim.h(0)])
    with pytest.raises(UnsupportedFeatureError):
        simulate(circ)


def test_circuit_validates_cbits_and_labels():
    with pytest.raises(UsageError):
        Circuit(1, 0, [sim.measure(0, 0)])
    with pytest.raises(UsageError):
        Circuit(2, labels=("a", "a"))


def test_probability_of_basics():
    assert probability_of(new_statevector(1), 0, 1) == 0.0
    assert probability_of(apply_gate(new_statevector(1), sim.h(0)), 0, 1) == pytest.approx(0.5, abs=1e-15)
    with pytest.raises(UsageError):
        probability_of(new_statevector(1), 3, 1)


def test_probability_of_comparison_circuit_a_vs_g():
    circ, layout = build_comparison_circuit("AAAA", "GGGG")
    assert probability_of(simulate(circ), layout.strip_qubit, 1) == pytest.approx(0.5, abs=1e-12)


def test_sample_deterministic_outcome():
    one = apply_gate(new_statevector(1), sim.x(0))
    assert sample_measurements(one, [0], 100, seed=3).counts == {"1": 100}


def test_sample_hadamard_binomial_band():
    state = apply_gate(new_statevector(1), sim.h(0))
    hist = sample_measurements(state, [0], 8000, seed=11)
    sigma = math.sqrt(8000 * 0.25)
    assert abs(hist.counts["1"] - 4000) <= 4 * sigma
    assert sum(hist.counts.values()) == hist.total_shots == 8000


def test_sample_comparison_circuit_near_closed_form():
    circ, layout = build_comparison_circuit("AAAA", "TTTT")
    hist = sample_measurements(simulate(circ), [layout.strip_qubit], 8000, seed=2026)
    assert abs(hist.frequency("1") - 0.3706) <= 0.027


def test_sample_errors():
    state = new_statevector(2)
    with pytest.raises(UsageError):
        sample_measurements(state, [], 10, 0)
    with pytest.raises(UsageError):
        sample_measurements(state, [0], 0, 0)
    with pytest.raises(UsageError):
        sample_measurements(state, [0, 0], 10, 0)
    with pytest.raises(UsageError):
        sample_measurements(state, [0], 10, -1)


def test_sample_joint_keys_and_order():
    # |q1 q0> = |10>: first listed qubit is the rightmost character
    state = apply_gate(new_statevector(2), sim.x(1))
    assert sample_measurements(state, [0, 1], 50, 0).counts == {"10": 50}
    assert sample_measurements(state, [1, 0], 50, 0).counts == {"01": 50}


def test_sample_determinism():
    state = simulate(Circuit(3, 0, [sim.h(0), sim.h(1), sim.ry(0.4, 2)]))
    a = sample_measurements(state, [0, 1, 2], 5000, seed=99)
    b = sample_measurements(state, [0, 1, 2], 5000, seed=99)
    assert a == b
    assert a != sample_measurements(state, [0, 1, 2], 5000, seed=100)


def test_sample_follows_documented_stream():
    # outcome "1" iff the PCG64 uniform lands at or past the CDF step P(0) = 0.5
    state = apply_gate(new_statevector(1), sim.h(0))
    draws = np.random.Generator(np.random.PCG64(12345)).random(1000)
    ones = int(np.sum(draws >= 0.5))
    hist = sample_measurements(state, [0], 1000, seed=12345)
    assert hist.counts == {"0": 1000 - ones, "1": ones}


@pytest.mark.parametrize("n_qubits", [1, 3, 6])
def test_sampling_converges_to_marginal(rng, n_qubits):
    shots = 100_000
    for trial in range(3):
        circ = random_circuit(rng, n_qubits, 20)
        state = simulate(circ)
        for q in range(n_qubits):
            p = probability_of(state, q, 1)
            hist = sample_measurements(state, [q], shots, seed=trial * 10 + q)
            band = 5 * math.sqrt(p * (1 - p) / shots)
            assert abs(hist.frequency("1") - p) <= max(band, 1e-12)


def test_circuit_unitary_small_cases():
    np.testing.assert_array_equal(circuit_unitary(Circuit(1, 0, [sim.x(0)])), [[0, 1], [1, 0]])
    cx = np.array([[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]])
    np.testing.assert_array_equal(circuit_unitary(Circuit(2, 0, [sim.cnot(0, 1)])), cx)


def test_circuit_unitary_errors():
    with pytest.raises(CapacityError):
        circuit_unitary(Circuit(11))
    with pytest.raises(UsageError):
        circuit_unitary(Circuit(1, 1, [sim.measure(0, 0)]))


def test_kernel_matches_brute_force(rng):
    for n in (1, 2, 3, 4):
        circ = random_circuit(rng, n, 15, max_controls=3)
        np.testing.assert_allclose(circuit_unitary(circ), dense_circuit(circ), atol=1e-12)


def test_ccx_matches_brute_force():
    g = sim.ccx(2, 0, 1)
    np.testing.assert_array_equal(circuit_unitary(Circuit(3, 0, [g])), dense_gate(g, 3))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(0, 50), st.integers(0, 2**32 - 1))
def test_norm_preserved(n, n_gates, seed):
    circ = random_circuit(np.random.default_rng(seed), n, n_gates, max_controls=3)
    state = simulate(circ)
    assert abs(state.norm_squared() - 1) <= 1e-10
    for q in range(n):
        assert probability_of(state, q, 0) + probability_of(state, q, 1) == pytest.approx(1, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(0, 30), st.integers(0, 2**32 - 1))
def test_unitarity(n, n_gates, seed):
    u = circuit_unitary(random_circuit(np.random.default_rng(seed), n, n_gates, max_controls=3))
    np.testing.assert_allclose(u @ u.conj().T, np.eye(2**n), atol=1e-10)


def test_exact_comparison_uses_strip_marginal():
    assert compare_exact("AAAA", "AAAA").p1 == pytest.approx(0, abs=1e-12)
