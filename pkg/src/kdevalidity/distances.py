"""Interpoint distances: Euclidean, extended Gower, complexity-invariance.

All three are exposed as pairwise functions on single records plus a
vectorized :func:`pairwise_matrix` over a :class:`~kdevalidity.types.DataSet`.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .errors import DimensionMismatch, NoComparableVariables
from .types import BINARY, CONTINUOUS, DataSet

CID_EPS = 1e-12
METRICS = ("euclidean", "gower", "cid")


@dataclass(frozen=True)
class VariableSpec:
    kind: str
    range: float = 0.0


def _pair(a, b):
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if a.size != b.size:
        raise DimensionMismatch(f"lengths differ: {a.size} vs {b.size}")
    return a, b


def euclidean(a, b) -> float:
    a, b = _pair(a, b)
    if a.size == 0:
        raise DimensionMismatch("empty vectors")
    return float(np.sqrt(np.sum((a - b) ** 2)))


def variable_specs(data: DataSet) -> list[VariableSpec]:
    """Gower variable descriptors with ranges taken over the whole dataset."""
    specs = []
    for j, kind in enumerate(data.kinds):
        if kind == CONTINUOUS:
            col = data.values[:, j]
            col = col[~np.isnan(col)]
            r = float(col.max() - col.min()) if col.size else 0.0
            specs.append(VariableSpec(CONTINUOUS, r))
        else:
            specs.append(VariableSpec(BINARY))
    return specs


def gower_extended(a, b, specs: list[VariableSpec]) -> float:
    """Gower dissimilarity for mixed continuous/binary records.

    Continuous variables contribute ``|a - b| / range`` (skipped when the
    range is zero), binary variables contribute a 0/1 mismatch; variables
    with a missing value on either side are skipped.
    """
    a, b = _pair(a, b)
    if a.size != len(specs):
        raise DimensionMismatch("records do not match the variable specs")
    num = 0.0
    den = 0
    for x, y, spec in zip(a, b, specs):
        if np.isnan(x) or np.isnan(y):
            continue
        if spec.kind == CONTINUOUS:
            if spec.range <= 0:
                continue
            num += abs(x - y) / spec.range
        else:
            num += float(x != y)
        den += 1
    if den == 0:
        raise NoComparableVariables("no variable is comparable for this pair")
    return num / den


def complexity_estimate(x) -> float:
    x = np.asarray(x, dtype=float).ravel()
    return float(np.sqrt(np.sum(np.diff(x) ** 2)))


def cid(q, c) -> float:
    """Complexity-invariance distance ``ED(q, c) * CF(q, c)``.

    Complexity estimates are clamped below at ``CID_EPS`` so that flat
    series give a finite, very large factor and two flat series give 1.
    """
    q, c = _pair(q, c)
    if q.size < 2:
        raise DimensionMismatch("series need at least 2 points")
    ed = float(np.sqrt(np.sum((q - c) ** 2)))
    if ed == 0.0:
        return 0.0
    ce_q, ce_c = complexity_estimate(q), complexity_estimate(c)
    cf = max(ce_q, ce_c, CID_EPS) / max(min(ce_q, ce_c), CID_EPS)
    return ed * cf


def _gower_matrix(data: DataSet) -> np.ndarray:
    X = data.values
    n = data.n
    num = np.zeros((n, n))
    den = np.zeros((n, n))
    for j, spec in enumerate(variable_specs(data)):
        col = X[:, j]
        present = ~np.isnan(col)
        both = present[:, None] & present[None, :]
        if spec.kind == CONTINUOUS:
            if spec.range <= 0:
                continue
            d = np.abs(col[:, None] - col[None, :]) / spec.range
        else:
            d = (col[:, None] != col[None, :]).astype(float)
        num += np.where(both, d, 0.0)
        den += both
    bad = np.argwhere(den == 0)
    bad = bad[bad[:, 0] < bad[:, 1]] if bad.size else bad
    if bad.size:
        i, k = bad[0]
        raise NoComparableVariables(
            f"no comparable variable between members {data.ids[i]} and {data.ids[k]}"
        )
    with np.errstate(invalid="ignore", divide="ignore"):
        out = num / den
    np.fill_diagonal(out, 0.0)
    return out


def _cid_matrix(X: np.ndarray) -> np.ndarray:
    ed = squareform(pdist(X, "euclidean"))
    ce = np.sqrt(np.sum(np.diff(X, axis=1) ** 2, axis=1))
    ce = np.maximum(ce, CID_EPS)
    cf = np.maximum(ce[:, None], ce[None, :]) / np.minimum(ce[:, None], ce[None, :])
    out = ed * cf
    np.fill_diagonal(out, 0.0)
    return out


def pairwise_matrix(data, metric: str = "euclidean") -> np.ndarray:
    """Full symmetric ``n x n`` distance matrix for ``data``.

    ``data`` may be a :class:`DataSet` or a plain 2-D array (treated as all
    continuous).
    """
    if not isinstance(data, DataSet):
        data = DataSet(np.asarray(data, dtype=float))
    if data.n < 2:
        raise ValueError("need at least 2 members")
    if metric == "gower":
        return _gower_matrix(data)
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; choose from {METRICS}")
    X = data.values
    if np.isnan(X).any():
        i = int(np.argwhere(np.isnan(X))[0, 0])
        raise ValueError(f"member {data.ids[i]} has missing values; {metric} needs complete data")
    if metric == "euclidean":
        return squareform(pdist(X, "euclidean"))
    if X.shape[1] < 2:
        raise DimensionMismatch("cid needs series of length >= 2")
    return _cid_matrix(X)


def write_matrix_csv(dist: np.ndarray, path) -> None:
    """Row-major, header-free, full square matrix."""
    with open(Path(path), "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in np.asarray(dist):
            writer.writerow([repr(float(x)) for x in row])


def read_matrix_csv(path) -> np.ndarray:
    return np.loadtxt(Path(path), delimiter=",", ndmin=2)
