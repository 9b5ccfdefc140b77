"""Lowering of H/X/RY/CCX/MCRY into the basis set {U(theta, phi, lam), CNOT}.

Every recipe here is ancilla-free. Multi-controlled gates are reduced with
the recursive square-root construction (a controlled-V on the last control,
a multi-controlled X onto that control, a controlled-V^dagger, the X again,
then the same gate with one control fewer). The two-control X bottoms out in
the 15-gate Toffoli network, single controls in the CNOT identities.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .exceptions import CapacityError, UsageError
from .sim import Circuit, Gate, circuit_unitary, cnot, u, u_matrix

MAX_MCRY_CONTROLS = 6
BASIS_KINDS = frozenset({"U", "CNOT", "MEASURE"})

_PI = math.pi
_X = np.array([[0, 1], [1, 0]], dtype=complex)


@dataclass
class LoweringReport:
    lowered: Circuit
    single_qubit_count: int
    cnot_count: int
    depth: int
    equivalent: bool | None = None
    max_deviation: float | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n_qubits": self.lowered.n_qubits,
            "single_qubit_count": self.single_qubit_count,
            "cnot_count": self.cnot_count,
            "gate_count": len(self.lowered),
            "depth": self.depth,
            "equivalent": self.equivalent,
            "max_deviation": self.max_deviation,
        }


def asap_layers(gates: Sequence[Gate]) -> list[int]:
    """Layer (1-based) each gate lands in when scheduled as soon as its qubits are free."""
    ready: dict[int, int] = {}
    layers = []
    for g in gates:
        layer = 1 + max((ready.get(q, 0) for q in g.qubits), default=0)
        for q in g.qubits:
            ready[q] = layer
        layers.append(layer)
    return layers


def circuit_depth(gates: Sequence[Gate]) -> int:
    return max(asap_layers(gates), default=0)


def _report(circuit: Circuit, reference: Circuit | None = None, tol: float = 1e-9) -> LoweringReport:
    single = circuit.count("U")
    cx = circuit.count("CNOT")
    rep = LoweringReport(circuit, single, cx, circuit_depth(circuit.gates))
    if reference is not None:
        rep.equivalent, rep.max_deviation = check_equivalence(
            _strip_measures(reference), _strip_measures(circuit), tol
        )
    return rep


def _strip_measures(circuit: Circuit) -> Circuit:
    return Circuit(circuit.n_qubits, 0, [g for g in circuit.gates if g.kind != "MEASURE"])


# --- single-qubit helpers -------------------------------------------------


def _phase(lam: float, q: int) -> Gate:
    return u(0.0, 0.0, lam, q)


def zyz_angles(mat: np.ndarray) -> tuple[float, float, float, float]:
    """Return ``(alpha, theta, phi, lam)`` with ``mat = exp(i*alpha) * U(theta, phi, lam)``."""
    a, b = mat[0, 0], mat[0, 1]
    c, d = mat[1, 0], mat[1, 1]
    theta = 2.0 * math.atan2(abs(c), abs(a))
    eps = 1e-12
    if abs(a) > eps:
        alpha = cmath.phase(a)
        if abs(c) > eps:
            phi = cmath.phase(c) - alpha
            lam = cmath.phase(-b) - alpha
        else:
            phi = 0.0
            lam = cmath.phase(d) - alpha
    else:
        phi = 0.0
        alpha = cmath.phase(c)
        lam = cmath.phase(-b) - alpha
    return alpha, theta, phi, lam


def _controlled_single(control: int, target: int, mat: np.ndarray) -> list[Gate]:
    """Controlled-``mat`` with one control, exact including phase."""
    alpha, theta, phi, lam = zyz_angles(mat)
    gates = []
    if abs(theta) < 1e-15 and abs(phi) < 1e-15:
        # diagonal: controlled phase via two CNOTs
        gates = [
            _phase(lam / 2, control),
            _phase(lam / 2, target),
            cnot(control, target),
            _phase(-lam / 2, target),
            cnot(control, target),
        ]
    else:
        gates = [
            _phase((lam + phi) / 2, control),
            _phase((lam - phi) / 2, target),
            cnot(control, target),
            u(-theta / 2, 0.0, -(phi + lam) / 2, target),
            cnot(control, target),
            u(theta / 2, phi, 0.0, target),
        ]
    if abs(alpha) > 1e-15:
        gates.insert(0, _phase(alpha, control))
    return gates


def _matrix_sqrt(mat: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eig(mat)
    return vecs @ np.diag(np.sqrt(vals.astype(complex))) @ np.linalg.inv(vecs)


# --- recipes ----------------------------------------------------------------


def toffoli_gates(c1: int, c2: int, target: int) -> list[Gate]:
    """Exact CCX as 9 single-qubit U gates and 6 CNOTs, ASAP depth 11."""
    hh = lambda q: u(_PI / 2, 0.0, _PI, q)  # noqa: E731
    t = lambda q: _phase(_PI / 4, q)  # noqa: E731
    tdg = lambda q: _phase(-_PI / 4, q)  # noqa: E731
    return [
        hh(target),
        cnot(c2, target),
        tdg(target),
        cnot(c1, target),
        t(target),
        cnot(c2, target),
        tdg(target),
        cnot(c1, target),
        t(c2),
        t(target),
        hh(target),
        cnot(c1, c2),
        t(c1),
        tdg(c2),
        cnot(c1, c2),
    ]


def _mcx_gates(controls: Sequence[int], target: int) -> list[Gate]:
    if not controls:
        return [u(_PI, 0.0, _PI, target)]
    if len(controls) == 1:
        return [cnot(controls[0], target)]
    if len(controls) == 2:
        return toffoli_gates(controls[0], controls[1], target)
    return _mcu_gates(controls, target, _X)


def _mcu_gates(controls: Sequence[int], target: int, mat: np.ndarray) -> list[Gate]:
    """Multi-controlled ``mat`` (closed controls), exact including phase."""
    if not controls:
        alpha, theta, phi, lam = zyz_angles(mat)
        # an uncontrolled global phase is unobservable and dropped
        return [u(theta, phi, lam, target)]
    if len(controls) == 1:
        return _controlled_single(controls[0], target, mat)
    root = _matrix_sqrt(mat)
    *rest, last = controls
    return (
        _controlled_single(last, target, root)
        + _mcx_gates(rest, last)
        + _controlled_single(last, target, root.conj().T)
        + _mcx_gates(rest, last)
        + _mcu_gates(rest, target, root)
    )


def _mcry_closed(controls: Sequence[int], target: int, angle: float) -> list[Gate]:
    if not controls:
        return [u(angle, 0.0, 0.0, target)]
    if len(controls) == 1:
        c = controls[0]
        return [
            u(angle / 2, 0.0, 0.0, target),
            cnot(c, target),
            u(-angle / 2, 0.0, 0.0, target),
            cnot(c, target),
        ]
    *rest, last = controls
    return (
        _mcry_closed([last], target, angle / 2)
        + _mcx_gates(rest, last)
        + _mcry_closed([last], target, -angle / 2)
        + _mcx_gates(rest, last)
        + _mcry_closed(rest, target, angle / 2)
    )


def mcry_gates(controls: Iterable[tuple[int, bool]], target: int, angle: float) -> list[Gate]:
    """Basis-gate list for a multi-controlled RY; open controls are X-conjugated."""
    controls = [(int(q), bool(closed)) for q, closed in controls]
    if len(controls) > MAX_MCRY_CONTROLS:
        raise CapacityError(f"at most {MAX_MCRY_CONTROLS} controls are supported, got {len(controls)}")
    qubits = [q for q, _ in controls] + [target]
    if len(set(qubits)) != len(qubits):
        raise UsageError(f"control and target qubits must be distinct, got {qubits}")
    flips = [u(_PI, 0.0, _PI, q) for q, closed in controls if not closed]
    return flips + _mcry_closed([q for q, _ in controls], target, angle) + flips


def _lower_gate(g: Gate) -> list[Gate]:
    if g.kind in BASIS_KINDS:
        return [g]
    if g.kind == "H":
        return [u(_PI / 2, 0.0, _PI, g.target)]
    if g.kind == "X":
        return [u(_PI, 0.0, _PI, g.target)]
    if g.kind == "RY":
        return [u(g.params[0], 0.0, 0.0, g.target)]
    if g.kind == "CCX":
        return toffoli_gates(*g.targets)
    if g.kind == "MCRY":
        return mcry_gates(g.controls, g.target, g.params[0])
    raise UsageError(f"unsupported gate kind {g.kind!r}")


# --- public operations ------------------------------------------------------


def lower_toffoli(c1: int, c2: int, target: int, verify: bool = True) -> LoweringReport:
    if len({c1, c2, target}) != 3:
        raise UsageError(f"Toffoli qubits must be distinct, got {(c1, c2, target)}")
    n = max(c1, c2, target) + 1
    lowered = Circuit(n, 0, toffoli_gates(c1, c2, target))
    ideal = Circuit(n, 0, [Gate("CCX", (c1, c2, target))]) if verify else None
    return _report(lowered, ideal, tol=1e-10)


def lower_mcry(
    controls: Iterable[tuple[int, bool]], target: int, angle: float, verify: bool = True
) -> LoweringReport:
    controls = [(int(q), bool(closed)) for q, closed in controls]
    gates = mcry_gates(controls, target, angle)
    n = max([q for q, _ in controls] + [target]) + 1
    lowered = Circuit(n, 0, gates)
    ideal = None
    if verify:
        ideal = Circuit(n, 0, [Gate("MCRY", (target,), (float(angle),), tuple(controls))])
    return _report(lowered, ideal, tol=1e-9)


def lower_circuit(circuit: Circuit, verify: bool = False, tol: float = 1e-9) -> LoweringReport:
    """Replace every non-basis gate by its recipe; trailing measures are kept as is."""
    circuit.unitary_gates()  # rejects measures placed before unitaries
    gates: list[Gate] = []
    for g in circuit.gates:
        gates.extend(_lower_gate(g))
    lowered = Circuit(circuit.n_qubits, circuit.n_cbits, gates, circuit.labels)
    return _report(lowered, circuit if verify else None, tol=tol)


def check_equivalence(a: Circuit, b: Circuit, tol: float = 1e-10) -> tuple[bool, float]:
    """Compare unitaries after aligning global phase on ``a``'s largest-modulus entry."""
    if a.n_qubits != b.n_qubits:
        raise UsageError(f"qubit-count mismatch: {a.n_qubits} vs {b.n_qubits}")
    ua = circuit_unitary(a)
    ub = circuit_unitary(b)
    k = np.unravel_index(np.argmax(np.abs(ua)), ua.shape)
    if abs(ub[k]) > 1e-12:
        ub = ub * (ua[k] / ub[k]) / abs(ua[k] / ub[k])
    dev = float(np.max(np.abs(ua - ub)))
    return dev <= tol, dev
