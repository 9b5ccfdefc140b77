"""Dense statevector simulation.

Qubit ``q`` is bit ``q`` of the amplitude index (little-endian), so the
basis state ``|q2 q1 q0>`` lives at index ``q0 + 2*q1 + 4*q2``.

Sampling uses NumPy's PCG64 bit generator (``numpy.random.default_rng``),
drawing uniforms in [0, 1) and mapping them through the inverse CDF of the
exact marginal. PCG64 output is specified bit-for-bit, so a seed fixes the
histogram on every platform.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .exceptions import CapacityError, UnsupportedFeatureError, UsageError
from .validation import check_count, check_qubit_index, check_seed

MAX_QUBITS = 24
MAX_UNITARY_QUBITS = 10

GATE_KINDS = ("H", "X", "RY", "U", "CNOT", "CCX", "MCRY", "MEASURE")

_SQRT1_2 = 1.0 / math.sqrt(2.0)
_H = np.array([[_SQRT1_2, _SQRT1_2], [_SQRT1_2, -_SQRT1_2]], dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)


def u_matrix(theta: float, phi: float, lam: float) -> np.ndarray:
    """Matrix of the generic single-qubit gate ``U(theta, phi, lam)``."""
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array(
        [
            [c, -np.exp(1j * lam) * s],
            [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c],
        ],
        dtype=complex,
    )


def ry_matrix(theta: float) -> np.ndarray:
    return u_matrix(theta, 0.0, 0.0)


@dataclass(frozen=True)
class Gate:
    """One circuit instruction.

    ``targets`` holds the qubits the gate names positionally: ``(q,)`` for
    H/X/RY/U/MEASURE and the MCRY target, ``(control, target)`` for CNOT and
    ``(c1, c2, target)`` for CCX. MCRY controls live in ``controls`` as
    ``(qubit, closed)`` pairs where ``closed=True`` fires on |1> and
    ``closed=False`` (open) fires on |0>.
    """

    kind: str
    targets: tuple[int, ...]
    params: tuple[float, ...] = ()
    controls: tuple[tuple[int, bool], ...] = ()
    cbit: int | None = None

    def __post_init__(self):
        arity = {"H": 1, "X": 1, "RY": 1, "U": 1, "MEASURE": 1, "MCRY": 1, "CNOT": 2, "CCX": 3}
        n_params = {"RY": 1, "U": 3, "MCRY": 1}
        if self.kind not in arity:
            raise UsageError(f"unknown gate kind {self.kind!r}")
        if len(self.targets) != arity[self.kind]:
            raise UsageError(f"{self.kind} takes {arity[self.kind]} qubit(s), got {len(self.targets)}")
        if len(self.params) != n_params.get(self.kind, 0):
            raise UsageError(f"{self.kind} takes {n_params.get(self.kind, 0)} parameter(s)")
        if self.controls and self.kind != "MCRY":
            raise UsageError("only MCRY carries explicit control polarities")
        if (self.cbit is None) != (self.kind != "MEASURE"):
            raise UsageError("MEASURE requires a classical bit and other gates must not have one")
        qs = self.qubits
        if any(isinstance(q, bool) or int(q) != q or q < 0 for q in qs):
            raise UsageError(f"qubit indices must be non-negative integers, got {qs}")
        if len(set(qs)) != len(qs):
            raise UsageError(f"qubit indices within one gate must be distinct, got {qs}")

    @property
    def qubits(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self.controls) + tuple(self.targets)

    @property
    def target(self) -> int:
        return self.targets[-1]

    def control_pattern(self) -> tuple[tuple[int, int], ...]:
        """``(qubit, required bit value)`` for every control of the gate."""
        if self.kind == "CNOT":
            return ((self.targets[0], 1),)
        if self.kind == "CCX":
            return ((self.targets[0], 1), (self.targets[1], 1))
        return tuple((q, 1 if closed else 0) for q, closed in self.controls)

    def base_matrix(self) -> np.ndarray:
        """2x2 matrix applied to the target inside the controlled subspace."""
        if self.kind == "H":
            return _H
        if self.kind in ("X", "CNOT", "CCX"):
            return _X
        if self.kind in ("RY", "MCRY"):
            return ry_matrix(self.params[0])
        if self.kind == "U":
            return u_matrix(*self.params)
        raise UsageError("MEASURE has no unitary")


def h(q: int) -> Gate:
    return Gate("H", (q,))


def x(q: int) -> Gate:
    return Gate("X", (q,))


def ry(theta: float, q: int) -> Gate:
    return Gate("RY", (q,), (float(theta),))


def u(theta: float, phi: float, lam: float, q: int) -> Gate:
    return Gate("U", (q,), (float(theta), float(phi), float(lam)))


def cnot(control: int, target: int) -> Gate:
    return Gate("CNOT", (control, target))


def ccx(c1: int, c2: int, target: int) -> Gate:
    return Gate("CCX", (c1, c2, target))


def mcry(controls: Iterable[tuple[int, bool]], target: int, theta: float) -> Gate:
    ctrl = tuple((int(q), bool(closed)) for q, closed in controls)
    return Gate("MCRY", (target,), (float(theta),), ctrl)


def measure(q: int, cbit: int) -> Gate:
    return Gate("MEASURE", (q,), cbit=cbit)


@dataclass
class Circuit:
    """Ordered gate list over ``n_qubits`` qubits and ``n_cbits`` classical bits."""

    n_qubits: int
    n_cbits: int = 0
    gates: list[Gate] = field(default_factory=list)
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        self.n_qubits = check_count(self.n_qubits, "n_qubits", minimum=1)
        self.n_cbits = check_count(self.n_cbits, "n_cbits")
        if self.labels is not None:
            self.labels = tuple(self.labels)
            if len(self.labels) != self.n_qubits:
                raise UsageError("one label per qubit is required when labels are given")
            if len(set(self.labels)) != len(self.labels):
                raise UsageError(f"qubit labels must be unique, got {self.labels}")
        gates, self.gates = list(self.gates), []
        self.extend(gates)

    def append(self, gate: Gate) -> "Circuit":
        for q in gate.qubits:
            check_qubit_index(q, self.n_qubits)
        if gate.kind == "MEASURE" and not 0 <= gate.cbit < self.n_cbits:
            raise UsageError(f"classical bit {gate.cbit} out of range for {self.n_cbits} bit(s)")
        self.gates.append(gate)
        return self

    def extend(self, gates: Iterable[Gate]) -> "Circuit":
        for g in gates:
            self.append(g)
        return self

    def copy(self) -> "Circuit":
        return Circuit(self.n_qubits, self.n_cbits, list(self.gates), self.labels)

    def count(self, kind: str) -> int:
        return sum(g.kind == kind for g in self.gates)

    def count_ops(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for g in self.gates:
            out[g.kind] = out.get(g.kind, 0) + 1
        return out

    @property
    def measurements(self) -> list[Gate]:
        return [g for g in self.gates if g.kind == "MEASURE"]

    def unitary_gates(self) -> list[Gate]:
        """Non-measure gates, after checking measures form a trailing suffix."""
        seen_measure = False
        out = []
        for g in self.gates:
            if g.kind == "MEASURE":
                seen_measure = True
            elif seen_measure:
                raise UnsupportedFeatureError(
                    "mid-circuit measurement is not supported: measures must come after every unitary gate"
                )
            else:
                out.append(g)
        return out

    def __len__(self) -> int:
        return len(self.gates)


@dataclass
class Statevector:
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape != (2**self.n_qubits,):
            raise UsageError(
                f"expected {2 ** self.n_qubits} amplitudes for {self.n_qubits} qubit(s), "
                f"got shape {self.amplitudes.shape}"
            )

    def copy(self) -> "Statevector":
        return Statevector(self.n_qubits, self.amplitudes.copy())

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm_squared(self) -> float:
        return float(np.sum(self.probabilities()))


@dataclass
class Histogram:
    """Shot counts keyed by outcome bitstring.

    The rightmost character belongs to the first measured qubit.
    """

    counts: dict[str, int]
    total_shots: int

    def frequency(self, outcome: str) -> float:
        return self.counts.get(outcome, 0) / self.total_shots

    def to_dict(self) -> dict:
        return {"counts": dict(sorted(self.counts.items())), "total_shots": self.total_shots}


def new_statevector(n_qubits: int, max_qubits: int = MAX_QUBITS) -> Statevector:
    """Allocate ``|0...0>`` on ``n_qubits`` qubits."""
    if isinstance(n_qubits, bool) or not isinstance(n_qubits, (int, np.integer)):
        raise UsageError(f"n_qubits must be an integer, got {n_qubits!r}")
    if not 1 <= n_qubits <= max_qubits:
        raise CapacityError(f"n_qubits must be in [1, {max_qubits}], got {n_qubits}")
    amps = np.zeros(2**n_qubits, dtype=complex)
    amps[0] = 1.0
    return Statevector(int(n_qubits), amps)


def _apply_inplace(data: np.ndarray, n_qubits: int, gate: Gate) -> None:
    """Apply ``gate`` to ``data`` of shape ``(2**n, batch)`` in place."""
    tensor = data.reshape((2,) * n_qubits + (-1,))
    index: list = [slice(None)] * (n_qubits + 1)
    pattern = gate.control_pattern()
    for q, bit in pattern:
        index[n_qubits - 1 - q] = bit
    target_axis = n_qubits - 1 - gate.target
    # integer indexing drops the control axes that precede the target axis
    target_axis -= sum(1 for q, _ in pattern if n_qubits - 1 - q < target_axis)
    sub = np.moveaxis(tensor[tuple(index)], target_axis, 0)
    m = gate.base_matrix()
    a0 = sub[0].copy()
    a1 = sub[1].copy()
    sub[0] = m[0, 0] * a0 + m[0, 1] * a1
    sub[1] = m[1, 0] * a0 + m[1, 1] * a1


def _check_gate_fits(gate: Gate, n_qubits: int) -> None:
    if gate.kind == "MEASURE":
        raise UsageError("MEASURE cannot be applied as a unitary; use probability_of or sample_measurements")
    for q in gate.qubits:
        check_qubit_index(q, n_qubits)


def apply_gate(state: Statevector, gate: Gate) -> Statevector:
    """Return a new state with ``gate`` applied."""
    _check_gate_fits(gate, state.n_qubits)
    out = state.amplitudes.copy()
    _apply_inplace(out.reshape(-1, 1), state.n_qubits, gate)
    return Statevector(state.n_qubits, out)


def apply_circuit(state: Statevector, circuit: Circuit) -> Statevector:
    """Run every unitary gate of ``circuit``; trailing measures are left for sampling."""
    if circuit.n_qubits != state.n_qubits:
        raise UsageError(f"circuit has {circuit.n_qubits} qubits but state has {state.n_qubits}")
    gates = circuit.unitary_gates()
    out = state.amplitudes.copy()
    view = out.reshape(-1, 1)
    for g in gates:
        _check_gate_fits(g, state.n_qubits)
        _apply_inplace(view, state.n_qubits, g)
    return Statevector(state.n_qubits, out)


def simulate(circuit: Circuit) -> Statevector:
    """Run ``circuit`` from ``|0...0>``."""
    return apply_circuit(new_statevector(circuit.n_qubits), circuit)


def probability_of(state: Statevector, qubit: int, outcome: int) -> float:
    """Exact marginal probability that ``qubit`` reads ``outcome``."""
    qubit = check_qubit_index(qubit, state.n_qubits)
    if outcome not in (0, 1):
        raise UsageError(f"outcome must be 0 or 1, got {outcome!r}")
    probs = state.probabilities().reshape((2,) * state.n_qubits)
    axis = state.n_qubits - 1 - qubit
    p = float(np.take(probs, outcome, axis=axis).sum())
    return min(max(p, 0.0), 1.0)


def marginal_distribution(state: Statevector, qubits: Sequence[int]) -> np.ndarray:
    """Joint distribution of ``qubits``; entry ``k`` has bit ``j`` of ``k`` = value of ``qubits[j]``."""
    qubits = [check_qubit_index(q, state.n_qubits) for q in qubits]
    if not qubits:
        raise UsageError("at least one qubit must be measured")
    if len(set(qubits)) != len(qubits):
        raise UsageError(f"measured qubits must be distinct, got {qubits}")
    idx = np.arange(2**state.n_qubits)
    key = np.zeros_like(idx)
    for j, q in enumerate(qubits):
        key |= ((idx >> q) & 1) << j
    return np.bincount(key, weights=state.probabilities(), minlength=2 ** len(qubits))


def sample_measurements(state: Statevector, qubits: Sequence[int], shots: int, seed: int) -> Histogram:
    """Draw ``shots`` terminal measurements of ``qubits`` from a seeded PCG64 stream."""
    qubits = list(qubits)
    shots = check_count(shots, "shots", minimum=1)
    seed = check_seed(seed)
    dist = marginal_distribution(state, qubits)
    cdf = np.cumsum(dist)
    cdf /= cdf[-1]
    rng = np.random.default_rng(seed)
    draws = rng.random(shots)
    outcomes = np.minimum(np.searchsorted(cdf, draws, side="right"), len(dist) - 1)
    tallies = np.bincount(outcomes, minlength=len(dist))
    width = len(qubits)
    counts = {format(k, f"0{width}b"): int(c) for k, c in enumerate(tallies) if c}
    return Histogram(counts, shots)


def circuit_unitary(circuit: Circuit, max_qubits: int = MAX_UNITARY_QUBITS) -> np.ndarray:
    """Full ``2**n x 2**n`` matrix of ``circuit`` (column ``j`` is the image of ``|j>``)."""
    n = circuit.n_qubits
    if n > max_qubits:
        raise CapacityError(f"circuit_unitary supports at most {max_qubits} qubits, got {n}")
    if circuit.measurements:
        raise UsageError("circuit_unitary requires a circuit without MEASURE gates")
    mat = np.eye(2**n, dtype=complex)
    for g in circuit.gates:
        _apply_inplace(mat, n, g)
    return mat
