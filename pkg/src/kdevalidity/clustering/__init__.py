"""Hard clustering algorithms and a name-based dispatcher."""
from __future__ import annotations

from typing import Callable

import numpy as np

from ..types import Clustering
from .hierarchical import Dendrogram, Merge, hierarchical
from .kmeans import KMeansResult, hartigan_wong, kmeans, wcss
from .kmedoids import PamResult, kmedoids, pam

CLUSTERERS = ("hier-average", "hier-ward", "kmedoids", "kmeans")

__all__ = [
    "CLUSTERERS",
    "Clustering",
    "Dendrogram",
    "KMeansResult",
    "Merge",
    "PamResult",
    "hartigan_wong",
    "hierarchical",
    "kmeans",
    "kmedoids",
    "make_clusterer",
    "pam",
    "wcss",
]


def make_clusterer(name: str, dist=None, data=None, seed: int = 0,
                   nstart: int = 10, ward: str = "ward") -> Callable[[int], Clustering]:
    """Return ``K -> Clustering`` for a named algorithm.

    Hierarchical clusterers build the dendrogram once and cut it per ``K``;
    ``ward`` picks the Ward variant (``"ward"`` = Ward.D2, or ``"ward.D"``).
    k-means works on the raw ``data`` matrix; the others need ``dist``.
    """
    if name in ("hier-average", "hier-ward"):
        if dist is None:
            raise ValueError(f"{name} needs a distance matrix")
        tree = hierarchical(dist, "average" if name == "hier-average" else ward)
        return tree.cut
    if name == "kmedoids":
        if dist is None:
            raise ValueError("kmedoids needs a distance matrix")
        return lambda k: kmedoids(dist, k, seed)
    if name == "kmeans":
        if data is None:
            raise ValueError("kmeans needs the data matrix")
        X = np.asarray(data, dtype=float)
        return lambda k: kmeans(X, k, seed=seed, nstart=nstart).clustering
    raise ValueError(f"unknown clusterer {name!r}; choose from {CLUSTERERS}")
