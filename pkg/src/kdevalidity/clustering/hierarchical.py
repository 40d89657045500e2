"""Agglomerative hierarchical clustering via Lance-Williams updates."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..types import Clustering, check_distance_matrix

LINKAGES = ("average", "ward", "ward.D")


@dataclass(frozen=True)
class Merge:
    """One agglomeration step.

    Clusters are keyed by their smallest member index, so ``left < right``
    and the merged cluster keeps the key ``left``.
    """

    left: int
    right: int
    height: float
    size: int


class Dendrogram:
    def __init__(self, n: int, merges: list[Merge], linkage: str):
        self.n = n
        self.merges = merges
        self.linkage = linkage

    @property
    def heights(self) -> np.ndarray:
        return np.array([m.height for m in self.merges])

    def cut(self, k: int) -> Clustering:
        """Partition obtained by undoing the last ``k - 1`` merges."""
        if not 1 <= k <= self.n:
            raise ValueError(f"k must lie in 1..{self.n}")
        parent = list(range(self.n))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for m in self.merges[: self.n - k]:
            parent[find(m.right)] = find(m.left)
        return Clustering.from_labels([find(i) for i in range(self.n)])

    def merge_sets(self) -> list[tuple[frozenset, frozenset, float]]:
        """Merge history as (members of left, members of right, height)."""
        groups = {i: frozenset([i]) for i in range(self.n)}
        out = []
        for m in self.merges:
            a, b = groups[m.left], groups.pop(m.right)
            out.append((a, b, m.height))
            groups[m.left] = a | b
        return out


def hierarchical(dist, linkage: str = "average") -> Dendrogram:
    """Agglomerate ``n`` singletons down to one cluster.

    ``"average"`` is UPGMA.  ``"ward"`` is Ward.D2: the Ward Lance-Williams
    recurrence runs on squared distances and heights are reported on the
    distance scale.  ``"ward.D"`` applies the same recurrence to the raw
    distances.  Ties go to the lexicographically smallest pair of cluster keys.
    """
    if linkage not in LINKAGES:
        raise ValueError(f"unknown linkage {linkage!r}; choose from {LINKAGES}")
    d = check_distance_matrix(dist).copy()
    n = d.shape[0]
    if n < 2:
        raise ValueError("need at least 2 members")
    if linkage == "ward":
        d = d * d
    size = np.ones(n)
    active = np.ones(n, dtype=bool)
    work = d.copy()
    np.fill_diagonal(work, np.inf)
    work[np.tril_indices(n)] = np.inf
    merges = []
    for _ in range(n - 1):
        flat = int(np.argmin(work))
        i, j = divmod(flat, n)
        h = float(d[i, j])
        ni, nj = size[i], size[j]
        others = active.copy()
        others[[i, j]] = False
        if linkage == "average":
            new = (ni * d[i] + nj * d[j]) / (ni + nj)
        else:
            nk = size
            new = ((ni + nk) * d[i] + (nj + nk) * d[j] - nk * h) / (ni + nj + nk)
        d[i, others] = new[others]
        d[others, i] = new[others]
        active[j] = False
        size[i] = ni + nj
        work[j, :] = np.inf
        work[:, j] = np.inf
        upper = others.copy()
        upper[: i + 1] = False
        lower = others.copy()
        lower[i:] = False
        work[i, upper] = new[upper]
        work[lower, i] = new[lower]
        height = float(np.sqrt(max(h, 0.0))) if linkage == "ward" else h
        merges.append(Merge(i, j, height, int(ni + nj)))
    return Dendrogram(n, merges, linkage)
