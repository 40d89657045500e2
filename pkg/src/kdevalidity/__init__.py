"""Cluster validity from kernel density modes of interpoint distances.

Each member is scored by comparing the most likely distance to its own
cluster with the most likely distance to the nearest other cluster, both
taken as modes of Gaussian kernel density estimates.  The package also
provides the silhouette and Dunn indices, the distances and clustering
algorithms they are usually paired with, and a simulation harness.
"""
from .clustering import hierarchical, kmeans, kmedoids, make_clusterer, pam
from .distances import cid, euclidean, gower_extended, pairwise_matrix
from .errors import ValidityError
from .io import ingest_csv, read_labels, write_labels
from .kde import KdeConfig, estimate_mode, kde_evaluate, silverman_bandwidth
from .types import Clustering, DataSet
from .validity import asw, dunn, estimate_k, evaluate, mclus

__version__ = "0.1.0"

__all__ = [
    "Clustering",
    "DataSet",
    "KdeConfig",
    "ValidityError",
    "asw",
    "cid",
    "dunn",
    "estimate_k",
    "estimate_mode",
    "euclidean",
    "evaluate",
    "gower_extended",
    "hierarchical",
    "ingest_csv",
    "kde_evaluate",
    "kmeans",
    "kmedoids",
    "make_clusterer",
    "mclus",
    "pairwise_matrix",
    "pam",
    "read_labels",
    "silverman_bandwidth",
    "write_labels",
]
