"""k-means by the Hartigan-Wong algorithm (Applied Statistics AS 136).

The optimal-transfer and quick-transfer stages follow the published
Fortran closely, including the live-set bookkeeping, so that the sequence
of transfers matches the reference algorithm.  Indices are 0-based here but
step counters (``live``, ``ncp``) keep the 1-based convention of the
original, which is what their comparisons are written against.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidK
from ..types import Clustering

_BIG = 1.0e30


class EmptyClusterError(RuntimeError):
    pass


@dataclass
class KMeansResult:
    clustering: Clustering
    centers: np.ndarray
    wcss: float
    iterations: int
    reseeds: int
    converged: bool


def wcss(data, labels) -> float:
    """Within-cluster sum of squared Euclidean distances to cluster means."""
    X = np.asarray(data, dtype=float)
    labels = np.asarray(labels)
    total = 0.0
    for lab in np.unique(labels):
        pts = X[labels == lab]
        total += float(((pts - pts.mean(axis=0)) ** 2).sum())
    return total


def _sqdist(x, c):
    diff = x - c
    return float(diff @ diff)


def hartigan_wong(X: np.ndarray, centers: np.ndarray, max_iter: int = 50):
    """Run AS 136 from the given initial centers.

    Returns ``(labels, centers, iterations, converged)`` with 0-based labels.
    Raises :class:`EmptyClusterError` if the initial assignment leaves a
    cluster empty.
    """
    X = np.asarray(X, dtype=float)
    C = np.array(centers, dtype=float, copy=True)
    m = X.shape[0]
    k = C.shape[0]

    # initial assignment: closest and second closest centers
    sq = ((X[:, None, :] - C[None, :, :]) ** 2).sum(axis=2)
    order = np.argsort(sq, axis=1, kind="stable")
    ic1 = order[:, 0].copy()
    ic2 = order[:, 1].copy()
    nc = np.bincount(ic1, minlength=k).astype(float)
    if np.any(nc == 0):
        raise EmptyClusterError("initial assignment produced an empty cluster")
    for L in range(k):
        C[L] = X[ic1 == L].mean(axis=0)

    an2 = nc / (nc + 1.0)
    an1 = np.where(nc > 1, nc / np.maximum(nc - 1.0, 1.0), _BIG)
    itran = np.ones(k, dtype=bool)
    ncp = np.full(k, -1, dtype=np.int64)
    live = np.zeros(k, dtype=np.int64)
    dvec = np.zeros(m)
    indx = 0
    max_qtran = 50 * m

    def transfer(i, l1, l2):
        al1 = nc[l1]
        alw = al1 - 1.0
        al2 = nc[l2]
        alt = al2 + 1.0
        C[l1] = (C[l1] * al1 - X[i]) / alw
        C[l2] = (C[l2] * al2 + X[i]) / alt
        nc[l1] = alw
        nc[l2] = alt
        an2[l1] = alw / al1
        an1[l1] = _BIG if alw <= 1.0 else alw / (alw - 1.0)
        an1[l2] = alt / al2
        an2[l2] = alt / (alt + 1.0)
        ic1[i] = l2
        ic2[i] = l1

    def optra():
        nonlocal indx
        for L in range(k):
            if itran[L]:
                live[L] = m + 1
        for i in range(m):
            step = i + 1
            indx += 1
            l1 = ic1[i]
            if nc[l1] != 1:
                if ncp[l1] != 0:
                    dvec[i] = _sqdist(X[i], C[l1]) * an1[l1]
                ll = ic2[i]
                l2 = ll
                r2 = _sqdist(X[i], C[ll]) * an2[ll]
                for L in range(k):
                    if (step >= live[l1] and step >= live[L]) or L == l1 or L == ll:
                        continue
                    rr = r2 / an2[L]
                    dc = _sqdist(X[i], C[L])
                    if dc < rr:
                        r2 = dc * an2[L]
                        l2 = L
                if r2 >= dvec[i]:
                    ic2[i] = l2
                else:
                    indx = 0
                    live[l1] = m + step
                    live[l2] = m + step
                    ncp[l1] = step
                    ncp[l2] = step
                    transfer(i, l1, l2)
            if indx == m:
                return
        for L in range(k):
            itran[L] = False
            live[L] -= m

    def qtran():
        nonlocal indx
        icoun = 0
        istep = 0
        while istep < max_qtran:
            for i in range(m):
                icoun += 1
                istep += 1
                l1 = ic1[i]
                l2 = ic2[i]
                if nc[l1] != 1:
                    if istep <= ncp[l1]:
                        dvec[i] = _sqdist(X[i], C[l1]) * an1[l1]
                    if istep < ncp[l1] or istep < ncp[l2]:
                        r2 = dvec[i] / an2[l2]
                        dd = _sqdist(X[i], C[l2])
                        if dd < r2:
                            icoun = 0
                            indx = 0
                            itran[l1] = True
                            itran[l2] = True
                            ncp[l1] = istep + m
                            ncp[l2] = istep + m
                            transfer(i, l1, l2)
                if icoun == m:
                    return

    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        optra()
        if indx == m:
            converged = True
            break
        qtran()
        if k == 2:
            converged = True
            break
        ncp[:] = 0

    labels = ic1.copy()
    for L in range(k):
        C[L] = X[labels == L].mean(axis=0)
    return labels, C, it, converged


def kmeans(data, k: int, seed: int = 0, nstart: int = 10, max_iter: int = 50,
           max_reseeds: int = 100) -> KMeansResult:
    """Best of ``nstart`` Hartigan-Wong runs by within-cluster sum of squares.

    Each run starts from ``k`` distinct members drawn at random; a draw whose
    initial assignment leaves a cluster empty is redrawn and counted in
    ``reseeds``.
    """
    X = np.asarray(data, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    n = X.shape[0]
    if not 2 <= k < n:
        raise InvalidK(f"k must satisfy 2 <= k < n={n}, got {k}")
    if np.isnan(X).any():
        raise ValueError("k-means needs complete continuous data")
    rng = np.random.default_rng(seed)
    best = None
    reseeds = 0
    for _ in range(nstart):
        while True:
            start = rng.choice(n, size=k, replace=False)
            try:
                labels, centers, iters, conv = hartigan_wong(X, X[start], max_iter)
                break
            except EmptyClusterError:
                reseeds += 1
                if reseeds > max_reseeds:
                    raise
        score = wcss(X, labels)
        if best is None or score < best[0]:
            best = (score, labels, centers, iters, conv)
    score, labels, centers, iters, conv = best
    clustering = Clustering.from_labels(labels)
    # reorder centers to match the relabelled clusters
    first = [int(labels[clustering.members(c)[0]]) for c in range(1, clustering.k + 1)]
    return KMeansResult(clustering, centers[first], score, iters, reseeds, conv)
