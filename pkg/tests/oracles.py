"""Independent reference implementations used only by the tests.

Nothing here imports from ``kdevalidity``: each routine is a deliberately
plain re-derivation (loops, brute force, exhaustive enumeration) so that
agreement with the package is evidence of correctness.
"""
import itertools
import math

import numpy as np
from scipy.optimize import brentq


def kde_direct(sample, h, x):
    total = 0.0
    for xi in sample:
        u = (x - xi) / h
        total += math.exp(-u * u / 2.0) / math.sqrt(2.0 * math.pi)
    return total / (len(sample) * h)


def grid_argmax(sample, h, points=100_000):
    sample = np.asarray(sample, dtype=float)
    xs = np.linspace(sample.min(), sample.max(), points)
    dens = np.zeros(points)
    for xi in sample:
        dens += np.exp(-0.5 * ((xs - xi) / h) ** 2)
    return float(xs[int(np.argmax(dens))]), float(xs[1] - xs[0])


def silverman(sample, alpha=5.0):
    sample = [float(v) for v in sample]
    n = len(sample)
    mean = sum(sample) / n
    var = sum((v - mean) ** 2 for v in sample) / (n - 1)
    return 1.06 * math.sqrt(var) * n ** (-1.0 / alpha)


def mode_by_stationary_points(sample, h, scan=4001):
    """Global KDE maximum over [min, max] via roots of the density slope."""
    sample = np.asarray(sample, dtype=float)
    lo, hi = float(sample.min()), float(sample.max())

    def slope(x):
        u = (sample - x) / h
        return float(np.sum(u * np.exp(-0.5 * u * u)))

    def dens(x):
        u = (x - sample) / h
        return float(np.sum(np.exp(-0.5 * u * u)))

    xs = np.linspace(lo, hi, scan)
    sl = np.array([slope(x) for x in xs])
    cands = [lo, hi]
    for i in range(scan - 1):
        if sl[i] > 0 and sl[i + 1] <= 0:
            if sl[i + 1] == 0:
                cands.append(float(xs[i + 1]))
            else:
                cands.append(brentq(slope, xs[i], xs[i + 1], xtol=1e-15, rtol=1e-15))
    return max(cands, key=dens)


def mclus_straight(points_or_dist, labels, alpha=5.0, is_dist=False):
    """Plain transcription of the per-member KDE-mode score and its mean."""
    if is_dist:
        D = np.asarray(points_or_dist, dtype=float)
    else:
        X = np.asarray(points_or_dist, dtype=float)
        if X.ndim == 1:
            X = X[:, None]
        n = X.shape[0]
        D = np.zeros((n, n))
        for i in range(n):
            for j in range(n):
                D[i, j] = math.sqrt(sum((X[i, t] - X[j, t]) ** 2 for t in range(X.shape[1])))
    labels = list(labels)
    n = len(labels)
    clusters = sorted(set(labels))

    def mode_of(values):
        if len(values) == 1:
            return values[0]
        if all(v == values[0] for v in values):
            return values[0]
        return mode_by_stationary_points(values, silverman(values, alpha))

    total = 0.0
    for i in range(n):
        own = [D[i, j] for j in range(n) if j != i and labels[j] == labels[i]]
        if not own:
            continue  # singleton: score 0
        own_mode = own[0] if len(own) == 1 else mode_of(own)
        cross = []
        for c in clusters:
            if c == labels[i]:
                continue
            vals = [D[i, j] for j in range(n) if labels[j] == c]
            cross.append(mode_of(vals))
        near = min(cross)
        top = max(near, own_mode)
        if top > 0:
            total += (near - own_mode) / top
    return total / n


def naive_average_linkage(D):
    """O(n^3) UPGMA recomputing every cluster-pair mean from the raw matrix."""
    D = np.asarray(D, dtype=float)
    clusters = [[i] for i in range(D.shape[0])]
    merges = []
    while len(clusters) > 1:
        best = None
        for a in range(len(clusters)):
            for b in range(a + 1, len(clusters)):
                ca, cb = clusters[a], clusters[b]
                avg = sum(D[i, j] for i in ca for j in cb) / (len(ca) * len(cb))
                key = (avg, min(ca), min(cb))
                if best is None or key < best[0]:
                    best = (key, a, b)
        (avg, _, _), a, b = best
        merges.append((frozenset(clusters[a]), frozenset(clusters[b]), avg))
        merged = clusters[a] + clusters[b]
        clusters = [c for t, c in enumerate(clusters) if t not in (a, b)] + [merged]
        clusters.sort(key=min)
    return merges


def exhaustive_medoids(D, k):
    D = np.asarray(D, dtype=float)
    best = math.inf
    for meds in itertools.combinations(range(D.shape[0]), k):
        cost = D[:, list(meds)].min(axis=1).sum()
        best = min(best, cost)
    return best


def lloyd(X, centers, max_iter=1000):
    X = np.asarray(X, dtype=float)
    C = np.array(centers, dtype=float)
    labels = None
    for _ in range(max_iter):
        d = ((X[:, None, :] - C[None, :, :]) ** 2).sum(axis=2)
        new = d.argmin(axis=1)
        if labels is not None and np.array_equal(new, labels):
            break
        labels = new
        for k in range(C.shape[0]):
            if np.any(labels == k):
                C[k] = X[labels == k].mean(axis=0)
    wcss = sum(((X[labels == k] - X[labels == k].mean(axis=0)) ** 2).sum()
               for k in np.unique(labels))
    return labels, float(wcss)


def dunn_enumerate(D, labels):
    n = len(labels)
    inter = min(D[i][j] for i in range(n) for j in range(n) if labels[i] != labels[j])
    diam = max(D[i][j] for i in range(n) for j in range(n) if labels[i] == labels[j])
    return inter / diam
