import math

import numpy as np
import pytest

from strandsim import sim


def dense_gate(gate, n):
    """Brute-force matrix of ``gate`` on ``n`` qubits, built basis state by basis state.

    Independent of the simulator's tensor kernel: loops over every index and
    applies the 2x2 block by bit arithmetic.
    """
    dim = 2**n
    out = np.zeros((dim, dim), dtype=complex)
    m = gate.base_matrix()
    t = gate.target
    pattern = gate.control_pattern()
    for j in range(dim):
        if all(((j >> q) & 1) == v for q, v in pattern):
            bit = (j >> t) & 1
            j0 = j & ~(1 << t)
            j1 = j | (1 << t)
            out[j0, j] += m[0, bit]
            out[j1, j] += m[1, bit]
        else:
            out[j, j] = 1.0
    return out


def dense_circuit(circuit):
    mat = np.eye(2**circuit.n_qubits, dtype=complex)
    for g in circuit.gates:
        if g.kind != "MEASURE":
            mat = dense_gate(g, circuit.n_qubits) @ mat
    return mat


def random_gate(rng, n, max_controls=2, kinds=("H", "X", "RY", "U", "CNOT", "MCRY")):
    kind = kinds[rng.integers(len(kinds))]
    if kind in ("CNOT", "MCRY") and n < 2:
        kind = "H"
    qs = [int(q) for q in rng.permutation(n)]
    angle = float(rng.uniform(-math.pi, math.pi))
    if kind == "H":
        return sim.h(qs[0])
    if kind == "X":
        return sim.x(qs[0])
    if kind == "RY":
        return sim.ry(angle, qs[0])
    if kind == "U":
        return sim.u(*rng.uniform(-math.pi, math.pi, 3), qs[0])
    if kind == "CNOT":
        return sim.cnot(qs[0], qs[1])
    k = int(rng.integers(0, min(max_controls, n - 1) + 1))
    controls = [(qs[1 + i], bool(rng.integers(2))) for i in range(k)]
    return sim.mcry(controls, qs[0], angle)


def random_circuit(rng, n, n_gates, **kw):
    return sim.Circuit(n, 0, [random_gate(rng, n, **kw) for _ in range(n_gates)])


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
