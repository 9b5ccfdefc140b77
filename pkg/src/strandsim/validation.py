"""Input validation helpers.

These mirror the ``check_*`` helpers of scikit-learn: each takes raw user
input, returns it in canonical form, and raises a descriptive ``ValueError``
subclass otherwise.
"""
from __future__ import annotations

import math
import numbers

from .exceptions import CapacityError, SequenceValidationError, UsageError

ALPHABET = frozenset("ACGT")
MAX_SEED = 2**64 - 1


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def check_power_of_two(n, name: str = "length", minimum: int = 1) -> int:
    n = check_count(n, name, minimum=minimum)
    if not is_power_of_two(n):
        raise UsageError(f"{name} must be a power of two, got {n}")
    return n


def check_count(n, name: str, minimum: int = 0, maximum: int | None = None) -> int:
    """Return ``n`` as a plain int after range checking."""
    if isinstance(n, bool) or not isinstance(n, numbers.Integral):
        raise UsageError(f"{name} must be an integer, got {n!r}")
    n = int(n)
    if n < minimum:
        raise UsageError(f"{name} must be >= {minimum}, got {n}")
    if maximum is not None and n > maximum:
        raise CapacityError(f"{name} must be <= {maximum}, got {n}")
    return n


def check_qubit_index(q, n_qubits: int, name: str = "qubit") -> int:
    if isinstance(q, bool) or not isinstance(q, numbers.Integral):
        raise UsageError(f"{name} index must be an integer, got {q!r}")
    q = int(q)
    if not 0 <= q < n_qubits:
        raise UsageError(f"{name} index {q} out of range for {n_qubits} qubit(s)")
    return q


def check_probability(p, name: str = "probability") -> float:
    p = float(p)
    if math.isnan(p) or not 0.0 <= p <= 1.0:
        raise UsageError(f"{name} must lie in [0, 1], got {p}")
    return p


def check_seed(seed) -> int:
    """Seeds are unsigned 64-bit integers."""
    if isinstance(seed, bool) or not isinstance(seed, numbers.Integral):
        raise UsageError(f"seed must be an integer, got {seed!r}")
    seed = int(seed)
    if not 0 <= seed <= MAX_SEED:
        raise UsageError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def check_bases(text: str, name: str = "sequence") -> str:
    """Upcase ``text`` and verify it only holds A/C/G/T.

    Raises
    ------
    SequenceValidationError
        Naming the first offending character and its 0-based position.
    """
    if not isinstance(text, str):
        raise SequenceValidationError(f"{name} must be a string, got {type(text).__name__}")
    upper = text.upper()
    for pos, ch in enumerate(upper):
        if ch not in ALPHABET:
            raise SequenceValidationError(
                f"{name}: invalid character {text[pos]!r} at position {pos} (allowed: A, C, G, T)"
            )
    if not upper:
        raise SequenceValidationError(f"{name} is empty")
    return upper


def check_sequence_array(X, name: str = "X") -> list:
    """Coerce ``X`` to a list of :class:`~strandsim.encoding.NucleotideSeq`.

    Accepts a single string, an iterable of strings or sequences, or a 1-D
    (or single-column 2-D) NumPy array of strings.
    """
    from .encoding import NucleotideSeq, as_sequence

    if isinstance(X, (str, NucleotideSeq)):
        X = [X]
    shape = getattr(X, "shape", None)
    if shape is not None and len(shape) == 2:
        if shape[1] != 1:
            raise UsageError(f"{name} must hold one sequence per row, got shape {shape}")
        X = [row[0] for row in X]
    items = list(X)
    if not items:
        raise UsageError(f"{name} is empty")
    return [as_sequence(s if isinstance(s, NucleotideSeq) else str(s), f"{name}[{i}]") for i, s in enumerate(items)]
