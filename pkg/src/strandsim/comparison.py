"""End-to-end pairwise comparison and its closed-form cross-check.

After the final Hadamard on the strip qubit,

    P1 = (1 - <ref|cmp>) / 2,   <ref|cmp> = (1/N) sum_i cos((theta_ref_i - theta_cmp_i) / 2)

so the similarity ``1 - 2*P1`` equals the mean positional overlap. The circuit
path and :func:`analytic_similarity` compute this independently.

The often-quoted hardware example gives P1 = 0.378; the formula maps that to
``1 - 2*0.378 = 0.244``. A printed value of 0.246 for the same input is an
arithmetic slip, not a different convention.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .encoding import AngleMap, as_sequence, build_comparison_circuit, resolve_angle_map
from .exceptions import LengthMismatchError, UsageError
from .sim import Histogram, new_statevector, apply_circuit, probability_of, sample_measurements
from .validation import check_count, check_seed

DEFAULT_SHOTS = 8000


@dataclass
class ComparisonResult:
    p1: float
    similarity: float
    method: str
    n_qubits: int
    shots: int | None = None
    seed: int | None = None
    histogram: Histogram | None = None

    def to_dict(self) -> dict:
        out = {
            "p1": self.p1,
            "similarity": self.similarity,
            "method": self.method,
            "n_qubits": self.n_qubits,
            "shots": self.shots,
            "seed": self.seed,
        }
        out["histogram"] = None if self.histogram is None else dict(sorted(self.histogram.counts.items()))
        return out


def similarity_from_p1(p1: float) -> float:
    """``1 - 2*p1``; negative values are returned as is, never clamped."""
    p1 = float(p1)
    if not 0.0 <= p1 <= 1.0:
        raise UsageError(f"p1 must lie in [0, 1], got {p1}")
    return 1.0 - 2.0 * p1


def _run(ref, cmp, angle_map):
    circuit, layout = build_comparison_circuit(ref, cmp, angle_map)
    state = apply_circuit(new_statevector(circuit.n_qubits), circuit)
    return state, layout


def compare_exact(ref, cmp, angle_map: AngleMap | None = None) -> ComparisonResult:
    state, layout = _run(ref, cmp, angle_map)
    p1 = probability_of(state, layout.strip_qubit, 1)
    return ComparisonResult(p1, similarity_from_p1(p1), "exact", layout.n_qubits)


def compare_sampled(
    ref, cmp, angle_map: AngleMap | None = None, shots: int = DEFAULT_SHOTS, seed: int = 0
) -> ComparisonResult:
    shots = check_count(shots, "shots", minimum=1)
    seed = check_seed(seed)
    state, layout = _run(ref, cmp, angle_map)
    hist = sample_measurements(state, [layout.strip_qubit], shots, seed)
    p1 = hist.frequency("1")
    return ComparisonResult(p1, similarity_from_p1(p1), "sampled", layout.n_qubits, shots, seed, hist)


def analytic_similarity(ref, cmp, angle_map: AngleMap | None = None) -> tuple[float, float]:
    """Closed-form ``(similarity, p1)``; any common length, no circuit involved."""
    ref, cmp = as_sequence(ref, "ref"), as_sequence(cmp, "cmp")
    if len(ref) != len(cmp):
        raise LengthMismatchError(f"sequences differ in length: {len(ref)} vs {len(cmp)}")
    amap = resolve_angle_map(angle_map)
    a = np.array([amap[b] for b in ref])
    b = np.array([amap[c] for c in cmp])
    sim = float(np.mean(np.cos((a - b) / 2)))
    return sim, (1.0 - sim) / 2
