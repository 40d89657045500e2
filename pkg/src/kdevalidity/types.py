"""Core containers: datasets, distance matrices and hard clusterings."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

CONTINUOUS = "continuous"
BINARY = "binary"


@dataclass
class DataSet:
    """``n`` members by ``v`` variables, each variable continuous or binary.

    Missing values are stored as NaN.
    """

    values: np.ndarray
    kinds: list[str] = field(default_factory=list)
    ids: list[str] | None = None
    columns: list[str] | None = None

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim == 1:
            self.values = self.values[:, None]
        if self.values.ndim != 2:
            raise ValueError("values must be 2-D (members x variables)")
        if not self.kinds:
            self.kinds = [CONTINUOUS] * self.values.shape[1]
        if len(self.kinds) != self.values.shape[1]:
            raise ValueError("one kind per variable required")
        bad = set(self.kinds) - {CONTINUOUS, BINARY}
        if bad:
            raise ValueError(f"unknown variable kinds {sorted(bad)}")
        if self.ids is None:
            self.ids = [str(i + 1) for i in range(self.n)]
        if len(self.ids) != self.n:
            raise ValueError("one id per member required")

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def v(self) -> int:
        return self.values.shape[1]

    @property
    def all_continuous(self) -> bool:
        return all(k == CONTINUOUS for k in self.kinds)


def check_distance_matrix(dist) -> np.ndarray:
    """Validate and return a symmetric, zero-diagonal, nonnegative matrix."""
    d = np.asarray(dist, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1] or d.shape[0] < 1:
        raise ValueError("distance matrix must be square")
    if not np.all(np.isfinite(d)) or np.any(d < 0):
        raise ValueError("distances must be finite and nonnegative")
    if np.any(np.diag(d) != 0):
        raise ValueError("distance matrix must have a zero diagonal")
    if not np.array_equal(d, d.T):
        raise ValueError("distance matrix must be symmetric")
    return d


@dataclass(frozen=True)
class Clustering:
    """Hard partition: ``labels[i]`` in ``1..k`` and every label used."""

    labels: np.ndarray
    k: int

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=int).ravel()
        object.__setattr__(self, "labels", labels)
        if self.k < 1:
            raise ValueError("k must be positive")
        if labels.size and (labels.min() < 1 or labels.max() > self.k):
            raise ValueError(f"labels must lie in 1..{self.k}")
        if np.unique(labels).size != self.k:
            raise ValueError("every cluster id in 1..k must occur at least once")

    @classmethod
    def from_labels(cls, labels) -> "Clustering":
        """Build from arbitrary hashable labels, renumbered by first appearance."""
        mapping: dict = {}
        out = []
        for lab in np.asarray(labels).ravel().tolist():
            if lab not in mapping:
                mapping[lab] = len(mapping) + 1
            out.append(mapping[lab])
        return cls(np.array(out, dtype=int), len(mapping))

    @property
    def n(self) -> int:
        return self.labels.size

    def members(self, cluster: int) -> np.ndarray:
        return np.flatnonzero(self.labels == cluster)

    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.k + 1)[1:]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Clustering):
            return NotImplemented
        return self.k == other.k and np.array_equal(self.labels, other.labels)

    def as_sets(self) -> frozenset:
        return frozenset(frozenset(self.members(c).tolist()) for c in range(1, self.k + 1))
