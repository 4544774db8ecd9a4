'''
Function:
    Implementation of CommunityModel and the helpers that build it (modularity, centroids, exact-K enforcement)
Author:
    adage developers
'''
import numpy as np
from dataclasses import dataclass
from ..graphs import Graph
from .kmeans import kmeans
from .base import relabel
from ..utils import ArtifactFormatError, formatrow, readdatalines, writetextatomic


'''COMMUNITIES_HEADER'''
COMMUNITIES_HEADER = '#adage-communities v1'


'''modularity'''
def modularity(g: Graph, assignment):
    assignment = np.asarray(assignment, dtype=np.int64).ravel()
    if assignment.shape[0] != g.n:
        raise ValueError(f'assignment has length {assignment.shape[0]}, graph has {g.n} nodes')
    if g.numedges == 0:
        raise ValueError('modularity is undefined on an edgeless graph')
    m = float(g.numedges)
    num_communities = int(assignment.max()) + 1
    left, right = assignment[g.edges[:, 0]], assignment[g.edges[:, 1]]
    intra = np.bincount(left[left == right], minlength=num_communities).astype(np.float64)
    degree_sums = np.bincount(assignment, weights=g.degrees().astype(np.float64), minlength=num_communities)
    return float(np.sum(intra / m - (degree_sums / (2.0 * m)) ** 2))


'''computecentroids'''
def computecentroids(assignment, embeddings, num_communities: int = None):
    assignment = np.asarray(assignment, dtype=np.int64).ravel()
    embeddings = np.asarray(embeddings, dtype=np.float64)
    if embeddings.ndim != 2 or embeddings.shape[0] != assignment.shape[0]:
        raise ValueError(f'assignment length {assignment.shape[0]} does not match embedding rows {embeddings.shape}')
    if num_communities is None: num_communities = int(assignment.max()) + 1
    counts = np.bincount(assignment, minlength=num_communities)
    if np.any(counts == 0):
        raise ValueError(f'communities {np.flatnonzero(counts == 0).tolist()} have no members')
    sums = np.zeros((num_communities, embeddings.shape[1]))
    np.add.at(sums, assignment, embeddings)
    return sums / counts[:, None]


'''enforcek'''
def enforcek(g: Graph, assignment, embeddings, k_target: int, seed: int = 0):
    assignment = np.array(assignment, dtype=np.int64).ravel()
    embeddings = np.asarray(embeddings, dtype=np.float64)
    if assignment.shape[0] != g.n or embeddings.shape[0] != g.n:
        raise ValueError(f'assignment and embeddings must both cover the {g.n} graph nodes')
    if not (1 <= k_target <= g.n):
        raise ValueError(f'k_target must lie in 1..{g.n}, got {k_target}')
    labels = np.unique(assignment)
    if not np.array_equal(labels, np.arange(len(labels))): assignment = relabel(assignment)
    num_communities = int(assignment.max()) + 1
    # merge the pair of communities whose centroids are closest
    while num_communities > k_target:
        centroids = computecentroids(assignment, embeddings, num_communities)
        distances = np.sqrt(((centroids[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2))
        distances[np.tril_indices(num_communities)] = np.inf
        keep, drop = np.unravel_index(int(np.argmin(distances)), distances.shape)
        assignment[assignment == drop] = keep
        assignment[assignment > drop] -= 1
        num_communities -= 1
    # split the largest community in two by kmeans on its members
    num_splits = 0
    while num_communities < k_target:
        counts = np.bincount(assignment, minlength=num_communities)
        largest = int(np.argmax(counts))
        members = np.flatnonzero(assignment == largest)
        halves, _ = kmeans(embeddings[members], 2, seed=seed + num_splits)
        if halves.min() == halves.max():
            halves = (np.arange(len(members)) >= len(members) // 2).astype(np.int64)
        assignment[members[halves == 1]] = num_communities
        num_communities += 1
        num_splits += 1
    return assignment


'''CommunityModel'''
@dataclass
class CommunityModel:
    assignment: np.ndarray
    k: int
    centroids: np.ndarray
    def __post_init__(self):
        self.assignment = np.asarray(self.assignment, dtype=np.int64).ravel()
        self.centroids = np.asarray(self.centroids, dtype=np.float64)
        self.k = int(self.k)
        if self.centroids.shape[0] != self.k:
            raise ValueError(f'expected {self.k} centroid rows, got {self.centroids.shape[0]}')
        if self.assignment.size and (self.assignment.min() < 0 or self.assignment.max() >= self.k):
            raise ValueError(f'assignment values must lie in 0..{self.k - 1}')
        if np.any(np.bincount(self.assignment, minlength=self.k) == 0):
            raise ValueError('every community must have at least one member')
        self.assignment.setflags(write=False)
        self.centroids.setflags(write=False)
    '''d'''
    @property
    def d(self):
        return self.centroids.shape[1]
    '''sizes'''
    def sizes(self):
        return np.bincount(self.assignment, minlength=self.k)
    '''fromassignment'''
    @classmethod
    def fromassignment(cls, assignment, embeddings):
        assignment = np.asarray(assignment, dtype=np.int64).ravel()
        k = int(assignment.max()) + 1
        return cls(assignment=assignment, k=k, centroids=computecentroids(assignment, embeddings, k))
    '''save'''
    def save(self, path: str):
        lines = [COMMUNITIES_HEADER, f'K={self.k}']
        lines.extend(str(value) for value in self.assignment.tolist())
        lines.extend(formatrow(row) for row in self.centroids)
        writetextatomic(path, '\n'.join(lines) + '\n')
    '''load'''
    @classmethod
    def load(cls, path: str):
        lines = list(readdatalines(path, COMMUNITIES_HEADER))
        if not lines or not lines[0][1].startswith('K='):
            raise ArtifactFormatError(f'{path}: missing "K=<int>" line')
        try:
            k = int(lines[0][1][2:])
        except ValueError:
            raise ArtifactFormatError(f'{path}:{lines[0][0]}: malformed "{lines[0][1]}"')
        body = lines[1:]
        if k < 1 or len(body) < k:
            raise ArtifactFormatError(f'{path}: expected {k} centroid rows after the assignment')
        assignment_lines, centroid_lines = body[:-k], body[-k:]
        try:
            assignment = [int(line) for _, line in assignment_lines]
            centroids = [[float(value) for value in line.split(',')] for _, line in centroid_lines]
        except ValueError as err:
            raise ArtifactFormatError(f'{path}: {err}')
        try:
            return cls(assignment=assignment, k=k, centroids=np.array(centroids, dtype=np.float64))
        except ValueError as err:
            raise ArtifactFormatError(f'{path}: {err}')
