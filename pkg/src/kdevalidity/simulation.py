"""Simulation scenarios and the replication study measuring how often each
validity index recovers the true number of clusters.

Scenarios:

``s1``
    three 10-variate normal populations (means -3, 0, 3 in every
    coordinate, unit variances, 0.5 correlations), 50 members each;
    Euclidean distance, average-linkage hierarchy.
``s2``
    two bivariate mixed populations (binary + Cauchy), 45 members each;
    extended Gower distance, k-medoids.
``s3``
    150 draws of a 500-variate vector with lognormal(0, 0.8) marginals
    coupled by a normal copula (0.75 correlations), shifted by +3 / 0 / -3
    in blocks of 50; k-means (Hartigan-Wong) with Euclidean distance.
"""
from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from .clustering import make_clusterer
from .distances import pairwise_matrix
from .kde import KdeConfig
from .types import BINARY, CONTINUOUS, DataSet
from .validity import INDICES, estimate_k

log = logging.getLogger(__name__)

SCENARIOS = ("s1", "s2", "s3")
INDEX_HEADERS = {"mclus": "M_clus", "asw": "ASW", "dunn": "Dunn"}


def equicorrelation(dim: int, rho: float) -> np.ndarray:
    cov = np.full((dim, dim), rho)
    np.fill_diagonal(cov, 1.0)
    return cov


@lru_cache(maxsize=8)
def symmetric_sqrt(dim: int, rho: float) -> np.ndarray:
    """Symmetric square root of the equicorrelation matrix (via eigh)."""
    vals, vecs = np.linalg.eigh(equicorrelation(dim, rho))
    return (vecs * np.sqrt(np.clip(vals, 0.0, None))) @ vecs.T


def mvn(rng: np.random.Generator, mean, dim: int, rho: float, size: int) -> np.ndarray:
    z = rng.standard_normal((size, dim))
    return np.asarray(mean, dtype=float) + z @ symmetric_sqrt(dim, rho)


def cauchy(rng: np.random.Generator, loc: float, scale: float, size: int) -> np.ndarray:
    u = rng.random(size)
    return loc + scale * np.tan(np.pi * (u - 0.5))


def block_labels(sizes) -> np.ndarray:
    return np.repeat(np.arange(1, len(sizes) + 1), sizes)


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def gen_s1(seed, size: int = 50) -> tuple[DataSet, np.ndarray]:
    rng = _rng(seed)
    blocks = [mvn(rng, mu, 10, 0.5, size) for mu in (-3.0, 0.0, 3.0)]
    return DataSet(np.vstack(blocks)), block_labels([size] * 3)


def s2_population(rng, p_one: float, loc: float, size: int) -> np.ndarray:
    binary = (rng.random(size) < p_one).astype(float)
    return np.column_stack([binary, cauchy(rng, loc, 1.0, size)])


def gen_s2(seed, size: int = 45) -> tuple[DataSet, np.ndarray]:
    rng = _rng(seed)
    X = np.vstack([s2_population(rng, 0.2, 0.0, size), s2_population(rng, 0.8, 3.0, size)])
    return DataSet(X, [BINARY, CONTINUOUS]), block_labels([size, size])


def s3_unshifted(rng, size: int, dim: int = 500) -> np.ndarray:
    # LN(0, 0.8) quantile of Phi(z) is exp(0.8 z)
    return np.exp(0.8 * mvn(rng, 0.0, dim, 0.75, size))


def gen_s3(seed, size: int = 50, dim: int = 500) -> tuple[DataSet, np.ndarray]:
    rng = _rng(seed)
    X = s3_unshifted(rng, 3 * size, dim)
    X[:size] += 3.0
    X[2 * size:] -= 3.0
    return DataSet(X), block_labels([size] * 3)


@dataclass(frozen=True)
class ScenarioSpec:
    name: str
    k_true: int
    metric: str
    clusterer: str
    k_range: tuple[int, ...] = (2, 3, 4, 5, 6)
    rep: int = 100

    def __post_init__(self):
        if self.rep < 1 or self.k_true < 2:
            raise ValueError("rep must be >= 1 and k_true >= 2")

    def generate(self, seed) -> tuple[DataSet, np.ndarray]:
        return GENERATORS[self.name](seed)


GENERATORS = {"s1": gen_s1, "s2": gen_s2, "s3": gen_s3}


def scenario(name: str, rep: int = 100) -> ScenarioSpec:
    name = name.lower()
    if name == "s1":
        return ScenarioSpec("s1", 3, "euclidean", "hier-average", rep=rep)
    if name == "s2":
        return ScenarioSpec("s2", 2, "gower", "kmedoids", rep=rep)
    if name == "s3":
        return ScenarioSpec("s3", 3, "euclidean", "kmeans", rep=rep)
    raise ValueError(f"unknown scenario {name!r}; choose from {SCENARIOS}")


def replication_seed(master_seed: int, r: int) -> np.random.SeedSequence:
    """Independent stream for replication ``r``, a pure function of (master, r)."""
    return np.random.SeedSequence([int(master_seed), int(r)])


@dataclass
class Replication:
    r: int
    khat: dict[str, int | None]
    errors: list[str] = field(default_factory=list)


@dataclass
class StudyResult:
    scenario: str
    k_true: int
    rep: int
    master_seed: int
    p: dict[str, float]
    replications: list[Replication]

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "k_true": self.k_true,
            "rep": self.rep,
            "master_seed": self.master_seed,
            "p": self.p,
            "replications": [
                {"r": x.r, "khat": x.khat, "errors": x.errors} for x in self.replications
            ],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def percent_correct(khats, k_true: int) -> float:
    khats = list(khats)
    hits = sum(1 for k in khats if k == k_true)
    return 100.0 * hits / len(khats)


def run_replication(spec: ScenarioSpec, master_seed: int, r: int,
                    config: KdeConfig | None = None, nstart: int = 10) -> Replication:
    ss = replication_seed(master_seed, r)
    data_ss, algo_ss = ss.spawn(2)
    data, _ = spec.generate(np.random.default_rng(data_ss))
    algo_seed = int(algo_ss.generate_state(1)[0])
    errors = []
    try:
        dist = pairwise_matrix(data, spec.metric)
        clusterer = make_clusterer(spec.clusterer, dist=dist, data=data.values,
                                   seed=algo_seed, nstart=nstart)
        khat, report = estimate_k(dist, clusterer, INDICES, spec.k_range, config, algo_seed)
        for res in report.results:
            errors.extend(f"K={res.k}: {e}" for e in res.errors)
    except Exception as exc:  # recorded; the replication counts as a miss
        log.warning("replication %d failed: %s", r, exc)
        khat = {name: None for name in INDICES}
        errors.append(f"{type(exc).__name__}: {exc}")
    return Replication(r, khat, errors)


def run_study(spec: ScenarioSpec, master_seed: int = 0, config: KdeConfig | None = None,
              nstart: int = 10, progress=None) -> StudyResult:
    reps = []
    for r in range(spec.rep):
        reps.append(run_replication(spec, master_seed, r, config, nstart))
        if progress is not None:
            progress(r + 1, spec.rep)
    p = {name: percent_correct((x.khat[name] for x in reps), spec.k_true) for name in INDICES}
    return StudyResult(spec.name, spec.k_true, spec.rep, int(master_seed), p, reps)


def table_csv(results: list[StudyResult]) -> str:
    """Rows per scenario, columns M_clus / ASW / Dunn (percentages)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["Simulation"] + [INDEX_HEADERS[i] for i in INDICES])
    for res in results:
        writer.writerow([res.scenario.upper()] + [f"{res.p[i]:g}" for i in INDICES])
    return buf.getvalue()


def write_table_csv(results: list[StudyResult], path) -> None:
    Path(path).write_text(table_csv(results), encoding="utf-8")
