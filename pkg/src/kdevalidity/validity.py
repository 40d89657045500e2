"""Cluster validity indices: the KDE-mode index, silhouette width and Dunn.

The KDE-mode index scores each member by comparing the mode of its
distances to its own cluster-mates with the smallest mode of its distances
to any other cluster::

    score = (nearest_mode - own_mode) / max(nearest_mode, own_mode)

and averages the scores over all members.  Modes are estimated by a
Gaussian KDE (:mod:`kdevalidity.kde`).
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

import numpy as np

from .errors import InvalidK, UndefinedIndex, ValidityError
from .kde import KdeConfig, estimate_modes, silverman_bandwidths, SILVERMAN_FACTOR
from .types import Clustering, check_distance_matrix

INDICES = ("mclus", "asw", "dunn")


@dataclass
class MemberScore:
    member: int
    own_mode: float | None
    nearest_cluster: int
    nearest_mode: float
    score: float


def global_bandwidth(dist, alpha: float = 5.0) -> float:
    """Silverman bandwidth from all ``n(n-1)/2`` pairwise distances."""
    d = np.asarray(dist, dtype=float)
    vals = d[np.triu_indices(d.shape[0], 1)]
    if vals.size < 2 or np.all(vals == vals[0]):
        return 0.0
    return SILVERMAN_FACTOR * float(np.std(vals, ddof=1)) * vals.size ** (-1.0 / alpha)


def _row_modes(samples: np.ndarray, config: KdeConfig, h_global: float | None) -> np.ndarray:
    if h_global is None:
        h = silverman_bandwidths(samples, config.alpha)
    else:
        # a constant row has a degenerate KDE whatever the bandwidth
        const = np.all(samples == samples[:, :1], axis=1)
        h = np.where(const, 0.0, h_global)
    return estimate_modes(samples, h, config)


def _check_inputs(clustering: Clustering, dist) -> np.ndarray:
    d = check_distance_matrix(dist)
    if clustering.n != d.shape[0]:
        raise ValueError(f"clustering has {clustering.n} members, distances {d.shape[0]}")
    if clustering.k < 2:
        raise InvalidK("validity indices need at least 2 clusters")
    return d


def _resolve_h(d, config):
    if config.sigma_scope == "global":
        return global_bandwidth(d, config.alpha)
    return None


def own_modes(clustering: Clustering, dist, config: KdeConfig | None = None,
              h_global: float | None = None) -> np.ndarray:
    """KDE mode of each member's distances to its cluster-mates (NaN for singletons)."""
    config = config or KdeConfig()
    d = np.asarray(dist, dtype=float)
    out = np.full(clustering.n, np.nan)
    for c in range(1, clustering.k + 1):
        idx = clustering.members(c)
        s = idx.size
        if s == 2:
            out[idx] = d[idx[0], idx[1]]
        elif s > 2:
            block = d[np.ix_(idx, idx)]
            samples = block[~np.eye(s, dtype=bool)].reshape(s, s - 1)
            out[idx] = _row_modes(samples, config, h_global)
    return out


def cross_modes(clustering: Clustering, dist, config: KdeConfig | None = None,
                h_global: float | None = None) -> np.ndarray:
    """``(n, K)`` matrix of KDE modes of member-to-cluster distances.

    Column ``c - 1`` holds modes for cluster ``c``; entries for a member's
    own cluster are ``inf``.
    """
    config = config or KdeConfig()
    d = np.asarray(dist, dtype=float)
    out = np.full((clustering.n, clustering.k), np.inf)
    for c in range(1, clustering.k + 1):
        idx = clustering.members(c)
        others = np.flatnonzero(clustering.labels != c)
        if idx.size == 1:
            out[others, c - 1] = d[others, idx[0]]
        else:
            out[others, c - 1] = _row_modes(d[np.ix_(others, idx)], config, h_global)
    return out


def own_cluster_mode(member: int, clustering: Clustering, dist,
                     config: KdeConfig | None = None) -> float | None:
    config = config or KdeConfig()
    d = _check_inputs(clustering, dist)
    c = clustering.labels[member]
    idx = clustering.members(c)
    if idx.size == 1:
        return None
    mates = idx[idx != member]
    sample = d[member, mates][None, :]
    if mates.size == 1:
        return float(sample[0, 0])
    return float(_row_modes(sample, config, _resolve_h(d, config))[0])


def cross_cluster_mode(member: int, other: int, clustering: Clustering, dist,
                       config: KdeConfig | None = None) -> float:
    config = config or KdeConfig()
    d = _check_inputs(clustering, dist)
    if clustering.labels[member] == other:
        raise ValueError("other must differ from the member's own cluster")
    idx = clustering.members(other)
    if idx.size == 0:
        raise ValueError(f"cluster {other} is empty")
    sample = d[member, idx][None, :]
    if idx.size == 1:
        return float(sample[0, 0])
    return float(_row_modes(sample, config, _resolve_h(d, config))[0])


def _pick_nearest(row: np.ndarray, rng: np.random.Generator) -> tuple[int, float]:
    best = row.min()
    ties = np.flatnonzero(row == best)
    choice = ties[0] if ties.size == 1 else rng.choice(ties)
    return int(choice) + 1, float(best)


def nearest_cluster(member: int, clustering: Clustering, dist,
                    config: KdeConfig | None = None, seed: int = 0) -> tuple[int, float]:
    """Other cluster with the smallest cross mode; exact ties drawn at random."""
    config = config or KdeConfig()
    d = _check_inputs(clustering, dist)
    row = np.array([
        np.inf if c == clustering.labels[member]
        else cross_cluster_mode(member, c, clustering, d, config)
        for c in range(1, clustering.k + 1)
    ])
    return _pick_nearest(row, np.random.default_rng(seed))


def _score(own: float, near: float) -> float:
    if np.isnan(own):
        return 0.0
    top = max(own, near)
    if top == 0:
        return 0.0
    return (near - own) / top


def mclus(clustering: Clustering, dist, config: KdeConfig | None = None,
          seed: int = 0) -> tuple[float, list[MemberScore]]:
    """KDE-mode validity index and the per-member scores it averages."""
    config = config or KdeConfig()
    d = _check_inputs(clustering, dist)
    h_global = _resolve_h(d, config)
    own = own_modes(clustering, d, config, h_global)
    cross = cross_modes(clustering, d, config, h_global)
    rng = np.random.default_rng(seed)
    scores = []
    for i in range(clustering.n):
        nc, near = _pick_nearest(cross[i], rng)
        s = _score(own[i], near)
        scores.append(MemberScore(i, None if np.isnan(own[i]) else float(own[i]), nc, near, s))
    value = float(np.mean([s.score for s in scores]))
    return value, scores


def silhouette_widths(clustering: Clustering, dist) -> np.ndarray:
    d = _check_inputs(clustering, dist)
    n, k = clustering.n, clustering.k
    sizes = clustering.sizes()
    # sums[i, c]: total distance from member i to cluster c + 1
    onehot = np.zeros((n, k))
    onehot[np.arange(n), clustering.labels - 1] = 1.0
    sums = d @ onehot
    own = clustering.labels - 1
    out = np.zeros(n)
    for i in range(n):
        if sizes[own[i]] == 1:
            continue
        a = sums[i, own[i]] / (sizes[own[i]] - 1)
        means = sums[i] / sizes
        means[own[i]] = np.inf
        b = means.min()
        top = max(a, b)
        out[i] = 0.0 if top == 0 else (b - a) / top
    return out


def asw(clustering: Clustering, dist) -> float:
    """Average silhouette width; singleton members contribute 0."""
    return float(silhouette_widths(clustering, dist).mean())


def dunn(clustering: Clustering, dist) -> float:
    """Smallest between-cluster distance over the largest cluster diameter."""
    d = _check_inputs(clustering, dist)
    same = clustering.labels[:, None] == clustering.labels[None, :]
    diameter = d[same].max()
    if diameter == 0:
        raise UndefinedIndex("every cluster has zero diameter")
    return float(d[~same].min() / diameter)


@dataclass
class KResult:
    k: int
    labels: list[int] | None = None
    mclus: float | None = None
    asw: float | None = None
    dunn: float | None = None
    member_scores: list[MemberScore] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "K": self.k,
            "labels": self.labels,
            "mclus": self.mclus,
            "asw": self.asw,
            "dunn": self.dunn,
            "member_scores": [asdict(s) for s in self.member_scores],
            "errors": self.errors,
        }


@dataclass
class ValidityReport:
    results: list[KResult]
    khat: dict[str, int | None]

    def table(self) -> list[tuple]:
        return [(r.k, r.mclus, r.asw, r.dunn) for r in self.results]

    def to_dict(self) -> dict:
        return {"results": [r.to_dict() for r in self.results], "khat": dict(self.khat)}

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def evaluate(clustering: Clustering, dist, indices: Iterable[str] = INDICES,
             config: KdeConfig | None = None, seed: int = 0) -> KResult:
    """Compute the selected indices for one clustering; failures are recorded."""
    indices = tuple(indices)
    bad = set(indices) - set(INDICES)
    if bad:
        raise ValueError(f"unknown indices {sorted(bad)}")
    res = KResult(clustering.k, clustering.labels.tolist())
    if "mclus" in indices:
        try:
            res.mclus, res.member_scores = mclus(clustering, dist, config, seed)
        except ValidityError as exc:
            res.errors.append(f"mclus: {type(exc).__name__}: {exc}")
    if "asw" in indices:
        try:
            res.asw = asw(clustering, dist)
        except ValidityError as exc:
            res.errors.append(f"asw: {type(exc).__name__}: {exc}")
    if "dunn" in indices:
        try:
            res.dunn = dunn(clustering, dist)
        except ValidityError as exc:
            res.errors.append(f"dunn: {type(exc).__name__}: {exc}")
    return res


def argmax_k(results: list[KResult], index: str) -> int | None:
    """K with the largest value of ``index``; ties go to the smallest K."""
    best_k, best_v = None, -np.inf
    for r in sorted(results, key=lambda r: r.k):
        v = getattr(r, index)
        if v is not None and v > best_v:
            best_k, best_v = r.k, v
    return best_k


def estimate_k(dist, clusterer: Callable[[int], Clustering],
               indices: Iterable[str] = INDICES, k_range: Iterable[int] = range(2, 7),
               config: KdeConfig | None = None,
               seed: int = 0) -> tuple[dict[str, int | None], ValidityReport]:
    """Cluster at every K in ``k_range`` and pick the argmax K per index.

    Errors raised by the clusterer or an index at some K are recorded in
    that K's ``errors`` and exclude it from the affected argmax.
    """
    d = check_distance_matrix(dist)
    indices = tuple(indices)
    ks = sorted(set(int(k) for k in k_range))
    if not ks:
        raise InvalidK("k_range is empty")
    if ks[0] < 2 or ks[-1] > d.shape[0] - 1:
        raise InvalidK(f"k_range must lie within 2..{d.shape[0] - 1}")
    results = []
    for k in ks:
        try:
            clustering = clusterer(k)
        except (ValidityError, ValueError, RuntimeError) as exc:
            results.append(KResult(k, errors=[f"clusterer: {type(exc).__name__}: {exc}"]))
            continue
        results.append(evaluate(clustering, d, indices, config, seed))
    khat = {name: argmax_k(results, name) for name in indices}
    return khat, ValidityReport(results, khat)
