"""
Seeded k-means: k-means++ initialization followed by Lloyd iterations
"""
from typing import List

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict
from sklearn.cluster import kmeans_plusplus

from wcgkit.config import pipeline_config
from wcgkit.exceptions import ClusteringError


class KMeansResult(BaseModel):
    """Cluster assignments with clusters ranked by lexicographic centroid order"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    labels: np.ndarray
    centroids: np.ndarray
    distortions: List[float]
    iterations: int

    @property
    def k(self) -> int:
        return int(self.centroids.shape[0])

    def members(self, rank: int) -> np.ndarray:
        return np.flatnonzero(self.labels == rank)


def _assign(points: np.ndarray, centroids: np.ndarray) -> tuple:
    distances = ((points[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
    labels = np.argmin(distances, axis=1)
    return labels, distances[np.arange(points.shape[0]), labels]


def _update(points: np.ndarray, labels: np.ndarray, centroids: np.ndarray, nearest: np.ndarray) -> np.ndarray:
    updated = centroids.copy()
    taken = set()
    for j in range(centroids.shape[0]):
        members = labels == j
        if members.any():
            updated[j] = points[members].mean(axis=0)
            continue
        # Empty cluster: move it onto the point farthest from its centroid
        order = np.argsort(-nearest, kind="stable")
        far = next(int(i) for i in order if int(i) not in taken)
        taken.add(far)
        updated[j] = points[far]
        logger.debug(f"Re-seeded empty cluster {j} at point {far}")
    return updated


def _rank_clusters(labels: np.ndarray, centroids: np.ndarray) -> tuple:
    order = np.lexsort(centroids.T[::-1])
    rank = np.empty_like(order)
    rank[order] = np.arange(order.size)
    return rank[labels], centroids[order]


def kmeans(points: np.ndarray, k: int, seed: int) -> KMeansResult:
    """
    Cluster points into k groups, deterministically for a given seed

    Args:
        points: (M, d) feature vectors
        k: Cluster count
        seed: 64-bit seed of the k-means++ initialization

    Returns:
        KMeansResult with labels ranked by centroid order

    Raises:
        ClusteringError: k exceeds the number of distinct points, or distortion grew
    """
    points = np.asarray(points, dtype=np.float64)
    if points.ndim == 1:
        points = points[:, None]
    if points.ndim != 2 or points.shape[0] == 0:
        raise ClusteringError(f"Expected a non-empty (M, d) array, got shape {points.shape}")
    if k < 1:
        raise ClusteringError(f"k must be positive, got {k}")
    distinct = np.unique(points, axis=0).shape[0]
    if k > distinct:
        raise ClusteringError(f"k={k} exceeds the {distinct} distinct points")

    random_state = np.random.RandomState(np.random.MT19937(int(seed)))
    centroids, _ = kmeans_plusplus(points, n_clusters=k, random_state=random_state)
    labels, nearest = _assign(points, centroids)
    distortions = [float(nearest.sum())]

    iterations = 0
    for iterations in range(1, pipeline_config.KMEANS_MAX_ITER + 1):
        centroids = _update(points, labels, centroids, nearest)
        new_labels, nearest = _assign(points, centroids)
        distortion = float(nearest.sum())
        if distortion > distortions[-1] * (1 + 1e-12) + 1e-15:
            raise ClusteringError(
                f"Distortion increased at iteration {iterations} ({distortions[-1]:.6g} -> {distortion:.6g})"
            )
        distortions.append(distortion)
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels

    # Centroids must be the means of their final members
    centroids = np.array([
        points[labels == j].mean(axis=0) if np.any(labels == j) else centroids[j] for j in range(k)
    ])
    labels, centroids = _rank_clusters(labels, centroids)
    return KMeansResult(labels=labels, centroids=centroids, distortions=distortions, iterations=iterations)
