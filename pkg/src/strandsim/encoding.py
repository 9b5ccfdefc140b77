"""Nucleotide angle encoding and construction of the strip-qubit comparison circuit.

Layout for sequences of length ``N = 2**m``::

    qubit 0          strip0   selects reference (|0>) or comparison (|1>)
    qubits 1..m      idx0..   position i, idx k holding bit k of i
    qubit m+1        dna0     RY-rotated by the base angle at that position

The angle of a base is the full RY gate angle, so a base with angle ``theta``
puts the dna qubit in ``cos(theta/2)|0> + sin(theta/2)|1>``.
"""
from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

import numpy as np

from .exceptions import LengthMismatchError, UsageError
from .sim import Circuit, Gate, h, mcry, measure
from .validation import check_bases, check_count, check_power_of_two, is_power_of_two


class Nucleotide(str, Enum):
    A = "A"
    C = "C"
    G = "G"
    T = "T"


@dataclass(frozen=True)
class NucleotideSeq:
    """A validated, upper-case A/C/G/T string with an identifier."""

    id: str
    bases: str

    def __post_init__(self):
        object.__setattr__(self, "bases", check_bases(self.bases, name=self.id or "sequence"))

    def __len__(self) -> int:
        return len(self.bases)

    def __iter__(self) -> Iterator[str]:
        return iter(self.bases)

    def __getitem__(self, i):
        return self.bases[i]

    def __str__(self) -> str:
        return self.bases


def as_sequence(seq, name: str = "sequence") -> NucleotideSeq:
    """Accept a :class:`NucleotideSeq` or a plain string."""
    if isinstance(seq, NucleotideSeq):
        return seq
    return NucleotideSeq(name, seq)


class AngleMap(Mapping):
    """Read-only map from base letter to RY angle in radians, each in [0, pi]."""

    def __init__(self, angles: Mapping[str, float] | None = None):
        src = dict(DEFAULT_ANGLES if angles is None else angles)
        table = {}
        for key, value in src.items():
            letter = Nucleotide(str(getattr(key, "value", key)).upper()).value
            theta = float(value)
            if not 0.0 <= theta <= math.pi + 1e-12:
                raise UsageError(f"angle for {letter} must lie in [0, pi], got {theta}")
            table[letter] = theta
        missing = {n.value for n in Nucleotide} - table.keys()
        if missing:
            raise UsageError(f"angle map is missing {sorted(missing)}")
        self._table = table

    def __getitem__(self, base) -> float:
        return self._table[str(getattr(base, "value", base)).upper()]

    def __iter__(self):
        return iter(self._table)

    def __len__(self) -> int:
        return len(self._table)

    def __repr__(self) -> str:
        return f"AngleMap({self._table!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Mapping) and dict(self.items()) == dict(other.items())

    def __hash__(self):
        return hash(tuple(sorted(self._table.items())))


DEFAULT_ANGLES = {"A": math.pi, "C": math.pi / 2, "T": math.pi / 6, "G": 0.0}
DEFAULT_ANGLE_MAP = AngleMap(DEFAULT_ANGLES)


@dataclass(frozen=True)
class EncodingLayout:
    strip_qubit: int
    index_qubits: tuple[int, ...]
    dna_qubit: int
    n_qubits: int
    classical_bits: int = 1

    @classmethod
    def for_length(cls, n: int) -> "EncodingLayout":
        m = index_width(n)
        return cls(0, tuple(range(1, m + 1)), m + 1, m + 2)

    @property
    def labels(self) -> tuple[str, ...]:
        return ("strip0",) + tuple(f"idx{k}" for k in range(len(self.index_qubits))) + ("dna0",)


def resolve_angle_map(angle_map) -> AngleMap:
    if angle_map is None:
        return DEFAULT_ANGLE_MAP
    return angle_map if isinstance(angle_map, AngleMap) else AngleMap(angle_map)


def angle_of(base, angle_map: AngleMap | None = None) -> float:
    return resolve_angle_map(angle_map)[base]


def index_width(sequence_length: int) -> int:
    """Number of qubits needed to address ``sequence_length`` positions."""
    n = check_count(sequence_length, "sequence_length", minimum=1)
    return (n - 1).bit_length()


def required_qubits(sequence_length: int) -> int:
    return 2 + index_width(sequence_length)


def _check_pair(ref: NucleotideSeq, cmp: NucleotideSeq) -> int:
    if len(ref) != len(cmp):
        raise LengthMismatchError(f"sequences differ in length: {len(ref)} vs {len(cmp)}")
    if not is_power_of_two(len(ref)):
        raise UsageError(f"length must be a power of two (pad via scan), got {len(ref)}")
    return len(ref)


def build_comparison_circuit(
    ref, cmp, angle_map: AngleMap | None = None
) -> tuple[Circuit, EncodingLayout]:
    """Strip-qubit comparison circuit for two equal power-of-two length sequences."""
    ref, cmp = as_sequence(ref, "ref"), as_sequence(cmp, "cmp")
    n = _check_pair(ref, cmp)
    amap = resolve_angle_map(angle_map)
    layout = EncodingLayout.for_length(n)
    circ = Circuit(layout.n_qubits, layout.classical_bits, labels=layout.labels)
    circ.append(h(layout.strip_qubit))
    for q in layout.index_qubits:
        circ.append(h(q))
    for strip_value, seq in ((0, ref), (1, cmp)):
        for i, base in enumerate(seq):
            controls = [(layout.strip_qubit, strip_value == 1)]
            controls += [(q, bool((i >> k) & 1)) for k, q in enumerate(layout.index_qubits)]
            circ.append(mcry(controls, layout.dna_qubit, amap[base]))
    circ.append(h(layout.strip_qubit))
    circ.append(measure(layout.strip_qubit, 0))
    return circ, layout


def encoding_gates(circuit: Circuit) -> list[Gate]:
    return [g for g in circuit.gates if g.kind == "MCRY"]


def sequence_state(seq, angle_map: AngleMap | None = None) -> np.ndarray:
    """Amplitudes of ``(1/sqrt N) sum_i (cos(t_i/2)|0> + sin(t_i/2)|1>) (x) |i>``.

    Entry ``dna * N + i`` holds the amplitude of dna value ``dna`` at position ``i``.
    """
    seq = as_sequence(seq)
    n = check_power_of_two(len(seq), "length")
    amap = resolve_angle_map(angle_map)
    theta = np.array([amap[b] for b in seq])
    out = np.empty(2 * n, dtype=complex)
    out[:n] = np.cos(theta / 2)
    out[n:] = np.sin(theta / 2)
    return out / math.sqrt(n)
