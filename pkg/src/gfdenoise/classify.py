"""Nearest-class-mean and 1-nearest-neighbor classifiers."""

from dataclasses import dataclass

import numpy as np

from .data import LabeledFeatures, class_index_map
from .errors import DimensionMismatch, EmptyClass

METRICS = ("euclidean", "cosine")


@dataclass
class NcmModel:
    """One centroid per class; class_ids are sorted labels."""

    centroids: np.ndarray  # (c, d)
    class_ids: np.ndarray  # (c,)
    metric: str = "euclidean"


def _unit_rows(A: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(A, axis=1)
    safe = np.where(norms == 0.0, 1.0, norms)
    return A / safe[:, None]


def pairwise_distances(A: np.ndarray, B: np.ndarray, metric: str) -> np.ndarray:
    """Distance matrix between the rows of A and the rows of B.

    Cosine distance is 1 - cosine similarity; zero-norm rows are treated
    as orthogonal to everything.
    """
    if A.shape[1] != B.shape[1]:
        raise DimensionMismatch(f"dimension mismatch: {A.shape[1]} vs {B.shape[1]}")
    if metric == "euclidean":
        sq = (
            np.sum(A * A, axis=1)[:, None]
            + np.sum(B * B, axis=1)[None, :]
            - 2.0 * (A @ B.T)
        )
        return np.sqrt(np.clip(sq, 0.0, None))
    if metric == "cosine":
        return 1.0 - _unit_rows(A) @ _unit_rows(B).T
    raise ValueError(f"unknown metric {metric!r}, expected one of {METRICS}")


def ncm_fit(train: LabeledFeatures, metric: str = "euclidean") -> NcmModel:
    """Compute the per-class arithmetic-mean centroids."""
    if train.n == 0:
        raise EmptyClass("cannot fit on an empty training set")
    index = class_index_map(train.labels)
    class_ids = np.asarray(list(index), dtype=np.str_)
    centroids = np.stack([train.features[idx].mean(axis=0) for idx in index.values()])
    return NcmModel(centroids=centroids, class_ids=class_ids, metric=metric)


def ncm_predict(model: NcmModel, query: np.ndarray) -> np.ndarray:
    """Label each query row by its nearest centroid (ties: lowest class
    index)."""
    query = np.asarray(query, dtype=np.float64)
    dist = pairwise_distances(query, model.centroids, model.metric)
    return model.class_ids[np.argmin(dist, axis=1)]


def nn1_predict(
    train: LabeledFeatures, query: np.ndarray, metric: str = "euclidean"
) -> np.ndarray:
    """Label each query row by its single nearest training row (ties:
    lowest training index)."""
    if train.n == 0:
        raise EmptyClass("cannot predict from an empty training set")
    query = np.asarray(query, dtype=np.float64)
    dist = pairwise_distances(query, train.features, metric)
    return train.labels[np.argmin(dist, axis=1)]
