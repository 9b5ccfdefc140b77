"""Line-oriented text format for circuits.

::

    qubits 4
    cbits 1
    label 0 strip0
    h q[0]
    ry(0.523599) q[1]
    u(1.570796,0,3.141593) q[2]
    cx q[0],q[1]
    ccx q[0],q[1],q[2]
    mcry(3.141593) [0-,1+,2+],q[3]
    measure q[0] -> c[0]

In ``mcry`` control lists ``+`` marks a closed control (fires on |1>) and
``-`` an open one (fires on |0>). Angles print with six decimals, exact zeros
as ``0``. Lines starting with ``#`` are comments.
"""
from __future__ import annotations

import re

from .exceptions import UsageError
from .sim import Circuit, Gate, ccx, cnot, h, mcry, measure, ry, u, x


def fmt_angle(value: float) -> str:
    if value == 0:
        return "0"
    return f"{value:.6f}"


def format_gate(g: Gate) -> str:
    q = g.targets
    if g.kind == "H":
        return f"h q[{q[0]}]"
    if g.kind == "X":
        return f"x q[{q[0]}]"
    if g.kind == "RY":
        return f"ry({fmt_angle(g.params[0])}) q[{q[0]}]"
    if g.kind == "U":
        return f"u({','.join(fmt_angle(p) for p in g.params)}) q[{q[0]}]"
    if g.kind == "CNOT":
        return f"cx q[{q[0]}],q[{q[1]}]"
    if g.kind == "CCX":
        return f"ccx q[{q[0]}],q[{q[1]}],q[{q[2]}]"
    if g.kind == "MCRY":
        ctrl = ",".join(f"{c}{'+' if closed else '-'}" for c, closed in g.controls)
        return f"mcry({fmt_angle(g.params[0])}) [{ctrl}],q[{q[0]}]"
    if g.kind == "MEASURE":
        return f"measure q[{q[0]}] -> c[{g.cbit}]"
    raise UsageError(f"cannot format gate kind {g.kind!r}")


def dump_circuit(circuit: Circuit, header: bool = True) -> str:
    lines = []
    if header:
        lines += [f"qubits {circuit.n_qubits}", f"cbits {circuit.n_cbits}"]
        for k, name in enumerate(circuit.labels or ()):
            lines.append(f"label {k} {name}")
    lines += [format_gate(g) for g in circuit.gates]
    return "\n".join(lines) + "\n"


_QUBIT = r"q\[(\d+)\]"
_PATTERNS = [
    (re.compile(rf"^h {_QUBIT}$"), lambda m: h(int(m[1]))),
    (re.compile(rf"^x {_QUBIT}$"), lambda m: x(int(m[1]))),
    (re.compile(rf"^ry\(([^)]*)\) {_QUBIT}$"), lambda m: ry(float(m[1]), int(m[2]))),
    (
        re.compile(rf"^u\(([^,]*),([^,]*),([^)]*)\) {_QUBIT}$"),
        lambda m: u(float(m[1]), float(m[2]), float(m[3]), int(m[4])),
    ),
    (re.compile(rf"^cx {_QUBIT},{_QUBIT}$"), lambda m: cnot(int(m[1]), int(m[2]))),
    (re.compile(rf"^ccx {_QUBIT},{_QUBIT},{_QUBIT}$"), lambda m: ccx(int(m[1]), int(m[2]), int(m[3]))),
    (
        re.compile(rf"^mcry\(([^)]*)\) \[([^\]]*)\],{_QUBIT}$"),
        lambda m: mcry(_parse_controls(m[2]), int(m[3]), float(m[1])),
    ),
    (re.compile(rf"^measure {_QUBIT} -> c\[(\d+)\]$"), lambda m: measure(int(m[1]), int(m[2]))),
]


def _parse_controls(text: str) -> list[tuple[int, bool]]:
    out = []
    for item in filter(None, (t.strip() for t in text.split(","))):
        if item[-1] not in "+-":
            raise UsageError(f"control {item!r} lacks a +/- polarity mark")
        out.append((int(item[:-1]), item[-1] == "+"))
    return out


def parse_circuit(text: str) -> Circuit:
    n_qubits = n_cbits = None
    labels: dict[int, str] = {}
    gates = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        if head == "qubits":
            n_qubits = int(rest)
        elif head == "cbits":
            n_cbits = int(rest)
        elif head == "label":
            k, _, name = rest.partition(" ")
            labels[int(k)] = name.strip()
        else:
            for pattern, build in _PATTERNS:
                m = pattern.match(line)
                if m:
                    gates.append(build(m))
                    break
            else:
                raise UsageError(f"line {lineno}: cannot parse {raw!r}")
    if n_qubits is None:
        raise UsageError("missing 'qubits N' header")
    label_tuple = tuple(labels[k] for k in range(n_qubits)) if labels else None
    return Circuit(n_qubits, n_cbits or 0, gates, label_tuple)
