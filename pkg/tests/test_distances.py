import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kdevalidity.distances import (
    VariableSpec,
    cid,
    complexity_estimate,
    euclidean,
    gower_extended,
    pairwise_matrix,
    read_matrix_csv,
    variable_specs,
    write_matrix_csv,
)
from kdevalidity.errors import DimensionMismatch, NoComparableVariables
from kdevalidity.types import BINARY, CONTINUOUS, DataSet

vec = st.lists(st.floats(-1e3, 1e3, allow_nan=False), min_size=2, max_size=12)


def test_euclidean_examples(rng):
    assert euclidean([0, 0, 0], [0, 0, 0]) == 0
    assert euclidean([0, 0], [3, 4]) == 5
    a, b = rng.normal(size=500), rng.normal(size=500)
    assert euclidean(a, b) == pytest.approx(math.sqrt(sum((x - y) ** 2 for x, y in zip(a, b))), abs=1e-12)
    with pytest.raises(DimensionMismatch):
        euclidean([1, 2], [1, 2, 3])


@given(vec, st.floats(-20, 20))
def test_euclidean_scale(a, c):
    b = list(reversed(a))
    assert euclidean(np.multiply(c, a), np.multiply(c, b)) == pytest.approx(
        abs(c) * euclidean(a, b), rel=1e-9, abs=1e-9
    )


def test_gower_examples():
    specs = [VariableSpec(BINARY), VariableSpec(CONTINUOUS, 10.0)]
    assert gower_extended([0, 2], [0, 2], specs) == 0
    assert gower_extended([0], [1], [VariableSpec(BINARY)]) == 1
    assert gower_extended([0, 2], [1, 4], specs) == pytest.approx(0.6)
    # zero-range continuous variable is skipped
    assert gower_extended([0, 2], [1, 2], [VariableSpec(BINARY), VariableSpec(CONTINUOUS, 0.0)]) == 1
    # missing value on one side is skipped
    assert gower_extended([np.nan, 2], [1, 4], specs) == pytest.approx(0.2)
    with pytest.raises(NoComparableVariables):
        gower_extended([np.nan], [1], [VariableSpec(BINARY)])


def test_gower_matrix_matches_pairwise(rng):
    X = np.column_stack([rng.integers(0, 2, 15), rng.standard_cauchy(15), rng.normal(size=15)])
    data = DataSet(X, [BINARY, CONTINUOUS, CONTINUOUS])
    D = pairwise_matrix(data, "gower")
    specs = variable_specs(data)
    for i in range(15):
        for j in range(15):
            assert D[i, j] == pytest.approx(gower_extended(X[i], X[j], specs), abs=1e-15)
    assert D.min() >= 0 and D.max() <= 1


def test_gower_affine_invariance(rng):
    X = np.column_stack([rng.integers(0, 2, 12), rng.normal(size=12)])
    D1 = pairwise_matrix(DataSet(X, [BINARY, CONTINUOUS]), "gower")
    Y = X.copy()
    Y[:, 1] = -7.5 * Y[:, 1] + 100
    D2 = pairwise_matrix(DataSet(Y, [BINARY, CONTINUOUS]), "gower")
    np.testing.assert_allclose(D1, D2, atol=1e-12)


def test_gower_matrix_names_offending_pair():
    X = np.array([[np.nan, 1.0], [0.0, np.nan], [1.0, 2.0]])
    with pytest.raises(NoComparableVariables, match="1 and 2"):
        pairwise_matrix(DataSet(X, [BINARY, CONTINUOUS]), "gower")


def test_cid_examples():
    assert cid([0, 1, 0], [0, 1, 0]) == 0
    q, c = [0, 1, 2], [0, 2, 4]
    assert complexity_estimate(q) == pytest.approx(math.sqrt(2))
    assert complexity_estimate(c) == pytest.approx(math.sqrt(8))
    assert cid(q, c) == pytest.approx(2 * math.sqrt(5))
    assert cid(q, c) == pytest.approx(4.4721, abs=1e-4)
    with pytest.raises(DimensionMismatch):
        cid([0, 1], [0, 1, 2])


def test_cid_flat_series_is_finite():
    d = cid([1, 1, 1], [0, 1, 0])
    assert math.isfinite(d) and d > 1e6


@settings(max_examples=80)
@given(vec, st.data())
def test_cid_properties(q, data):
    c = data.draw(st.lists(st.floats(-1e3, 1e3, allow_nan=False), min_size=len(q), max_size=len(q)))
    assert cid(q, c) == cid(c, q)
    assert cid(q, c) >= euclidean(q, c) * (1 - 1e-12)
    assert cid(q, q) == 0


def test_pairwise_small_line():
    D = pairwise_matrix(np.array([[0.0], [1.0], [3.0]]))
    assert D[0, 1] == 1 and D[0, 2] == 3 and D[1, 2] == 2
    np.testing.assert_array_equal(D, D.T)
    assert np.all(np.diag(D) == 0)


@pytest.mark.parametrize("metric", ["euclidean", "cid"])
def test_pairwise_matches_double_loop(rng, metric):
    X = rng.normal(size=(20, 5))
    D = pairwise_matrix(X, metric)
    f = euclidean if metric == "euclidean" else cid
    for i in range(20):
        for j in range(20):
            assert D[i, j] == pytest.approx(f(X[i], X[j]), rel=1e-12, abs=1e-12)
    np.testing.assert_array_equal(D, D.T)
    assert np.all(np.diag(D) == 0)


def test_matrix_csv_round_trip(tmp_path, rng):
    D = pairwise_matrix(rng.normal(size=(6, 3)))
    path = tmp_path / "d.csv"
    write_matrix_csv(D, path)
    text = path.read_text().splitlines()
    assert len(text) == 6 and all(len(line.split(",")) == 6 for line in text)
    np.testing.assert_array_equal(read_matrix_csv(path), D)
