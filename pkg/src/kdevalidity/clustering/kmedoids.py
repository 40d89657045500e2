"""Partitioning around medoids (BUILD + SWAP)."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import InvalidK
from ..types import Clustering, check_distance_matrix


@dataclass
class PamResult:
    clustering: Clustering
    medoids: list[int]
    cost: float
    cost_trace: list[float] = field(default_factory=list)


def _nearest_two(d: np.ndarray, medoids: list[int]):
    sub = d[:, medoids]
    order = np.argsort(sub, axis=1, kind="stable")
    near = order[:, 0]
    rows = np.arange(d.shape[0])
    second = sub[rows, order[:, 1]] if len(medoids) > 1 else np.full(d.shape[0], np.inf)
    return near, sub[rows, near], second


def pam(dist, k: int, seed: int = 0, max_swaps: int = 10_000) -> PamResult:
    """Kaufman-Rousseeuw PAM with best-improvement swaps.

    Ties are broken toward the lowest index everywhere, so the result does
    not actually depend on ``seed``; it is accepted for interface symmetry
    with the other clusterers.
    """
    d = check_distance_matrix(dist)
    n = d.shape[0]
    if not 2 <= k < n:
        raise InvalidK(f"k must satisfy 2 <= k < n={n}, got {k}")

    medoids = [int(np.argmin(d.sum(axis=1)))]
    nearest = d[:, medoids[0]].copy()
    while len(medoids) < k:
        gain = np.maximum(nearest[:, None] - d, 0.0).sum(axis=0)
        gain[medoids] = -np.inf
        h = int(np.argmax(gain))
        medoids.append(h)
        nearest = np.minimum(nearest, d[:, h])

    cost = float(nearest.sum())
    trace = [cost]
    for _ in range(max_swaps):
        near, _, second = _nearest_two(d, medoids)
        nearest = d[np.arange(n), np.asarray(medoids)[near]]
        is_med = np.zeros(n, dtype=bool)
        is_med[medoids] = True
        best = (cost, -1, -1)
        for slot, m in enumerate(medoids):
            without = np.where(near == slot, second, nearest)
            totals = np.minimum(d, without[:, None]).sum(axis=0)
            totals[is_med] = np.inf
            h = int(np.argmin(totals))
            if totals[h] < best[0]:
                best = (float(totals[h]), slot, h)
        new_cost, slot, h = best
        if slot < 0 or not new_cost < cost - 1e-12 * max(abs(cost), 1.0):
            break
        medoids[slot] = h
        cost = new_cost
        trace.append(cost)

    sub = d[:, medoids]
    assign = np.argmin(sub, axis=1)
    # medoids always label themselves, even when a tie would say otherwise
    for slot, m in enumerate(medoids):
        assign[m] = slot
    clustering = Clustering.from_labels(assign)
    cost = float(sub[np.arange(n), assign].sum())
    return PamResult(clustering, sorted(medoids), cost, trace)


def kmedoids(dist, k: int, seed: int = 0) -> Clustering:
    return pam(dist, k, seed).clustering
