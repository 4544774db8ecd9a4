'''
Function:
    Implementation of KMeans (k-means++ seeding + Lloyd iterations) and KMeansDetector
Author:
    adage developers
'''
import numpy as np
from ..graphs import Graph
from .base import BaseCommunityDetector, relabel


'''squareddistances'''
def squareddistances(points, centroids):
    return ((points[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)


'''KMeans'''
class KMeans():
    def __init__(self, k: int, seed: int = 0, max_iters: int = 100):
        if k < 1: raise ValueError(f'k must be >= 1, got {k}')
        if max_iters < 1: raise ValueError(f'max_iters must be >= 1, got {max_iters}')
        self.k = int(k)
        self.seed = seed
        self.max_iters = max_iters
        self.assignment, self.centroids, self.inertias, self.num_iters = None, None, [], 0
    '''seedcentroids'''
    def seedcentroids(self, points, rng):
        num_points = points.shape[0]
        chosen = [int(rng.integers(num_points))]
        closest = squareddistances(points, points[chosen]).min(axis=1)
        for _ in range(1, self.k):
            total = closest.sum()
            if total <= 0: index = int(rng.integers(num_points))
            else: index = int(rng.choice(num_points, p=closest / total))
            chosen.append(index)
            closest = np.minimum(closest, squareddistances(points, points[[index]])[:, 0])
        return points[chosen].copy()
    '''fit'''
    def fit(self, points):
        points = np.asarray(points, dtype=np.float64)
        if points.ndim != 2: raise ValueError(f'points must be a p x d matrix, got shape {points.shape}')
        if points.shape[0] < self.k:
            raise ValueError(f'need at least k={self.k} points, got {points.shape[0]}')
        rng = np.random.default_rng(self.seed)
        centroids, assignment, self.inertias = self.seedcentroids(points, rng), None, []
        for iteration in range(self.max_iters):
            distances = squareddistances(points, centroids)
            new_assignment = distances.argmin(axis=1)
            self.inertias.append(float(distances[np.arange(points.shape[0]), new_assignment].sum()))
            self.num_iters = iteration + 1
            if assignment is not None and np.array_equal(new_assignment, assignment): break
            assignment = new_assignment
            counts = np.bincount(assignment, minlength=self.k)
            for cluster in np.flatnonzero(counts):
                centroids[cluster] = points[assignment == cluster].mean(axis=0)
            empty = np.flatnonzero(counts == 0)
            if len(empty):
                # reseed each empty cluster at the point farthest from its own centroid
                farthest = np.argsort(-distances[np.arange(points.shape[0]), assignment], kind='stable')
                for cluster, index in zip(empty, farthest):
                    centroids[cluster] = points[index]
        else:
            # out of iterations: the last update moved the centroids, so assign once more
            distances = squareddistances(points, centroids)
            assignment = distances.argmin(axis=1)
            self.inertias.append(float(distances[np.arange(points.shape[0]), assignment].sum()))
        self.assignment, self.centroids = assignment.astype(np.int64), centroids
        return self


'''kmeans'''
def kmeans(points, k: int, seed: int = 0):
    model = KMeans(k=k, seed=seed).fit(points)
    return model.assignment, model.centroids


'''KMeansDetector'''
class KMeansDetector(BaseCommunityDetector):
    source = 'KMeansDetector'
    def __init__(self, k: int = None, **kwargs):
        super(KMeansDetector, self).__init__(**kwargs)
        self.k = k
    '''_detect'''
    def _detect(self, g: Graph):
        # clusters raw node features, so structure plays no role
        k = self.k if self.k is not None else max(1, int(round(np.sqrt(g.n))))
        assignment, _ = kmeans(g.features, min(k, g.n), seed=self.seed)
        return assignment
    '''detect'''
    def detect(self, g: Graph):
        return relabel(self._detect(g))
