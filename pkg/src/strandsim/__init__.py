"""Statevector simulation of strip-qubit DNA sequence comparison."""

__version__ = "0.1.0"

from .bio_io import FastaRecord, Window, parse_fasta, read_fasta, windows
from .comparison import (
    ComparisonResult,
    analytic_similarity,
    compare_exact,
    compare_sampled,
    similarity_from_p1,
)
from .encoding import (
    DEFAULT_ANGLE_MAP,
    AngleMap,
    EncodingLayout,
    Nucleotide,
    NucleotideSeq,
    angle_of,
    build_comparison_circuit,
    required_qubits,
    sequence_state,
)
from .estimators import NucleotideAngleEncoder, QuantumSequenceComparator
from .lowering import LoweringReport, check_equivalence, lower_circuit, lower_mcry, lower_toffoli
from .scan import WindowReport, padding_corrected_similarity, scan_sequences
from .sim import (
    Circuit,
    Gate,
    Histogram,
    Statevector,
    apply_circuit,
    apply_gate,
    circuit_unitary,
    new_statevector,
    probability_of,
    sample_measurements,
)

__all__ = [
    "AngleMap",
    "Circuit",
    "ComparisonResult",
    "DEFAULT_ANGLE_MAP",
    "EncodingLayout",
    "FastaRecord",
    "Gate",
    "Histogram",
    "LoweringReport",
    "Nucleotide",
    "NucleotideAngleEncoder",
    "NucleotideSeq",
    "QuantumSequenceComparator",
    "Statevector",
    "Window",
    "WindowReport",
    "analytic_similarity",
    "angle_of",
    "apply_circuit",
    "apply_gate",
    "build_comparison_circuit",
    "check_equivalence",
    "circuit_unitary",
    "compare_exact",
    "compare_sampled",
    "lower_circuit",
    "lower_mcry",
    "lower_toffoli",
    "new_statevector",
    "padding_corrected_similarity",
    "parse_fasta",
    "probability_of",
    "read_fasta",
    "required_qubits",
    "sample_measurements",
    "scan_sequences",
    "sequence_state",
    "similarity_from_p1",
    "windows",
]
