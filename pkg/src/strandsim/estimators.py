"""scikit-learn compatible wrappers.

``NucleotideAngleEncoder`` turns equal-length sequences into a matrix of RY
angles. ``QuantumSequenceComparator`` is fitted on one reference sequence and
scores new sequences against it with the strip-qubit circuit, so it can sit
in a :class:`~sklearn.pipeline.Pipeline` or be tuned with ``GridSearchCV``.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .bio_io import PAD_BASE
from .comparison import DEFAULT_SHOTS, analytic_similarity, compare_exact, compare_sampled
from .encoding import NucleotideSeq, resolve_angle_map
from .exceptions import LengthMismatchError, UsageError
from .scan import EXACT_THRESHOLD, SAMPLED_THRESHOLD, derive_seed, padding_corrected_similarity
from .validation import check_sequence_array, check_seed


class NucleotideAngleEncoder(TransformerMixin, BaseEstimator):
    """Map each base to its rotation angle.

    Parameters
    ----------
    angle_map : mapping, optional
        Base letter to angle in radians. Defaults to A=pi, C=pi/2, T=pi/6, G=0.
    """

    def __init__(self, angle_map=None):
        self.angle_map = angle_map

    def fit(self, X, y=None):
        seqs = check_sequence_array(X)
        lengths = {len(s) for s in seqs}
        if len(lengths) != 1:
            raise LengthMismatchError(f"all sequences must share one length, got {sorted(lengths)}")
        self.angle_map_ = resolve_angle_map(self.angle_map)
        self.n_features_in_ = lengths.pop()
        return self

    def transform(self, X):
        check_is_fitted(self, "angle_map_")
        seqs = check_sequence_array(X)
        for s in seqs:
            if len(s) != self.n_features_in_:
                raise LengthMismatchError(f"expected length {self.n_features_in_}, got {len(s)}")
        return np.array([[self.angle_map_[b] for b in s] for s in seqs], dtype=float)


def _pad_pow2(seq: NucleotideSeq) -> tuple[NucleotideSeq, int]:
    size = 1 << (len(seq) - 1).bit_length()
    pad = size - len(seq)
    return NucleotideSeq(seq.id, seq.bases + PAD_BASE * pad), pad


class QuantumSequenceComparator(BaseEstimator):
    """Score sequences against a fitted reference via the strip-qubit circuit.

    Sequences whose length is not a power of two are G-padded on both sides of
    the comparison and the similarity is corrected for the pads.

    Parameters
    ----------
    method : {"exact", "sampled", "analytic"}
        ``exact`` reads P1 from the statevector, ``sampled`` estimates it from
        ``shots`` seeded measurements, ``analytic`` skips the circuit.
    shots : int
    seed : int
        Sample ``i`` of a ``transform`` call uses ``derive_seed(seed, i)``.
    threshold : float, optional
        ``predict`` flags samples with similarity below it. Defaults to 0.999
        (0.95 when ``method="sampled"``).
    angle_map : mapping, optional
    """

    def __init__(self, method="exact", shots=DEFAULT_SHOTS, seed=0, threshold=None, angle_map=None):
        self.method = method
        self.shots = shots
        self.seed = seed
        self.threshold = threshold
        self.angle_map = angle_map

    def fit(self, X, y=None):
        if self.method not in ("exact", "sampled", "analytic"):
            raise UsageError(f"method must be 'exact', 'sampled' or 'analytic', got {self.method!r}")
        seqs = check_sequence_array(X)
        if len(seqs) != 1:
            raise UsageError(f"fit expects exactly one reference sequence, got {len(seqs)}")
        check_seed(self.seed)
        self.reference_ = seqs[0]
        self.angle_map_ = resolve_angle_map(self.angle_map)
        self.n_features_in_ = len(self.reference_)
        return self

    def _score_one(self, i: int, seq: NucleotideSeq) -> tuple[float, float]:
        if len(seq) != self.n_features_in_:
            raise LengthMismatchError(f"expected length {self.n_features_in_}, got {len(seq)}")
        if self.method == "analytic":
            sim, p1 = analytic_similarity(self.reference_, seq, self.angle_map_)
            return p1, sim
        ref, pad = _pad_pow2(self.reference_)
        cmp, _ = _pad_pow2(seq)
        if self.method == "exact":
            res = compare_exact(ref, cmp, self.angle_map_)
        else:
            res = compare_sampled(ref, cmp, self.angle_map_, shots=self.shots, seed=derive_seed(self.seed, i))
        return res.p1, padding_corrected_similarity(res.similarity, len(ref), pad)

    def transform(self, X):
        """Return an ``(n_samples, 2)`` array of ``[p1, similarity]``.

        ``p1`` is read from the padded circuit; ``similarity`` is pad-corrected.
        """
        check_is_fitted(self, "reference_")
        seqs = check_sequence_array(X)
        return np.array([self._score_one(i, s) for i, s in enumerate(seqs)], dtype=float)

    def score_samples(self, X):
        return self.transform(X)[:, 1]

    def predict(self, X):
        """1 for sequences below the similarity threshold (mutation candidates), else 0."""
        threshold = self.threshold
        if threshold is None:
            threshold = SAMPLED_THRESHOLD if self.method == "sampled" else EXACT_THRESHOLD
        return (self.score_samples(X) < threshold).astype(int)
