import math

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import FunctionTransformer

from strandsim.comparison import analytic_similarity
from strandsim.estimators import NucleotideAngleEncoder, QuantumSequenceComparator
from strandsim.exceptions import LengthMismatchError, UsageError


def test_encoder_transform():
    enc = NucleotideAngleEncoder().fit(["ACGT", "TTTT"])
    out = enc.transform(np.array(["ACGT", "GGGG"]))
    np.testing.assert_allclose(out, [[math.pi, math.pi / 2, 0, math.pi / 6], [0, 0, 0, 0]])
    assert enc.n_features_in_ == 4
    with pytest.raises(LengthMismatchError):
        enc.transform(["ACG"])
    with pytest.raises(LengthMismatchError):
        NucleotideAngleEncoder().fit(["AC", "ACG"])


def test_encoder_custom_map_and_params():
    amap = {"A": 1.0, "C": 0.5, "G": 0.25, "T": 0.0}
    enc = NucleotideAngleEncoder(angle_map=amap)
    assert enc.get_params() == {"angle_map": amap}
    np.testing.assert_allclose(enc.fit_transform(["AT"]), [[1.0, 0.0]])


def test_comparator_not_fitted():
    with pytest.raises(NotFittedError):
        QuantumSequenceComparator().transform(["ACGT"])


def test_comparator_exact_matches_oracle():
    model = QuantumSequenceComparator().fit("AAAA")
    out = model.transform(["AAAA", "CCCC", "TTTT", "GGGG"])
    np.testing.assert_allclose(out[:, 0], [0, 0.1464466, 0.3705905, 0.5], atol=1e-6)
    np.testing.assert_allclose(out[:, 1], 1 - 2 * out[:, 0], atol=1e-12)
    np.testing.assert_array_equal(model.predict(["AAAA", "AAAT"]), [0, 1])


def test_comparator_pads_odd_lengths():
    model = QuantumSequenceComparator().fit(["ACGTA"])
    sims = model.score_samples(["ACGTA", "ACGTT", "TCGTA"])
    expected = [analytic_similarity("ACGTA", s)[0] for s in ["ACGTA", "ACGTT", "TCGTA"]]
    np.testing.assert_allclose(sims, expected, atol=1e-9)


def test_comparator_methods_agree():
    data = ["ACGT", "TGCA", "AACC"]
    exact = QuantumSequenceComparator(method="exact").fit(["ACGA"]).score_samples(data)
    analytic = QuantumSequenceComparator(method="analytic").fit(["ACGA"]).score_samples(data)
    sampled = QuantumSequenceComparator(method="sampled", shots=100000, seed=3).fit(["ACGA"]).score_samples(data)
    np.testing.assert_allclose(exact, analytic, atol=1e-9)
    np.testing.assert_allclose(sampled, exact, atol=0.02)


def test_comparator_sampled_is_deterministic():
    m = QuantumSequenceComparator(method="sampled", shots=1000, seed=9).fit(["ACGT"])
    np.testing.assert_array_equal(m.transform(["TTTT", "ACGA"]), m.transform(["TTTT", "ACGA"]))


def test_comparator_get_set_params_and_clone():
    m = QuantumSequenceComparator(method="sampled", shots=123, seed=4, threshold=0.9)
    assert m.get_params()["shots"] == 123
    c = clone(m)
    assert c.get_params() == m.get_params() and not hasattr(c, "reference_")
    m.set_params(shots=50)
    assert m.shots == 50


def test_comparator_validation():
    with pytest.raises(UsageError):
        QuantumSequenceComparator().fit(["ACGT", "ACGT"])
    with pytest.raises(UsageError):
        QuantumSequenceComparator(method="magic").fit(["ACGT"])
    with pytest.raises(LengthMismatchError):
        QuantumSequenceComparator().fit(["ACGT"]).transform(["AC"])


def test_in_pipeline():
    upper = FunctionTransformer(lambda X: [s.upper() for s in X])
    pipe = make_pipeline(upper, QuantumSequenceComparator(method="exact"))
    pipe.fit(["acgt"])
    np.testing.assert_array_equal(pipe.predict(["acgt", "acga"]), [0, 1])
