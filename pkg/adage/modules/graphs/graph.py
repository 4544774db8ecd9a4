'''
Function:
    Implementation of Graph, the attributed undirected graph every other module works on
Author:
    adage developers
'''
import threading
import numpy as np
import scipy.sparse as sp
from dataclasses import dataclass
from ..utils import GraphFormatError, formatrow, readdatalines, writetextatomic


'''GRAPH_HEADER'''
GRAPH_HEADER = '#adage-graph v1'
CLASSES_PREFIX = '#classes='


'''canonicaledges'''
def canonicaledges(edges, n: int):
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if edges.size and (edges.min() < 0 or edges.max() >= n):
        raise ValueError(f'edge references a node id outside 0..{n - 1}')
    if np.any(edges[:, 0] == edges[:, 1]):
        raise ValueError('self-loops are not allowed in the stored edge list')
    edges = np.sort(edges, axis=1)
    order = np.lexsort((edges[:, 1], edges[:, 0]))
    edges = edges[order]
    if len(edges) > 1 and np.any(np.all(edges[1:] == edges[:-1], axis=1)):
        raise ValueError('duplicate undirected edges are not allowed')
    return edges


'''Graph'''
class Graph():
    def __init__(self, n: int, edges, features, labels=None, class_count: int = None, node_ids=None):
        n = int(n)
        if n < 0: raise ValueError(f'node count must be non-negative, got {n}')
        features = np.array(features, dtype=np.float64)
        if features.ndim != 2 or features.shape[0] != n:
            raise ValueError(f'features must be an {n}xm matrix, got shape {features.shape}')
        self.n = n
        self.edges = canonicaledges(edges, n)
        self.features = features
        self.labels, self.class_count = None, class_count
        if labels is not None:
            labels = np.array(labels, dtype=np.int64).ravel()
            if labels.shape[0] != n:
                raise ValueError(f'labels must have length {n}, got {labels.shape[0]}')
            if class_count is None:
                class_count = int(labels.max()) + 1 if n else 0
            if n and (labels.min() < 0 or labels.max() >= class_count):
                raise ValueError(f'labels must lie in 0..{class_count - 1}')
            self.labels, self.class_count = labels, int(class_count)
        self.node_ids = np.arange(n, dtype=np.int64) if node_ids is None else np.array(node_ids, dtype=np.int64)
        for array in (self.edges, self.features, self.labels, self.node_ids):
            if array is not None: array.setflags(write=False)
        # reentrant: propagated() builds through the cached adjacency
        self._cache, self._cache_lock = {}, threading.RLock()
    '''m'''
    @property
    def m(self):
        return self.features.shape[1]
    '''numedges'''
    @property
    def numedges(self):
        return int(self.edges.shape[0])
    '''degrees'''
    def degrees(self):
        return np.bincount(self.edges.ravel(), minlength=self.n).astype(np.int64)
    '''neighbors'''
    def neighbors(self):
        return self._cached('neighbors', self._buildneighbors)
    '''_buildneighbors'''
    def _buildneighbors(self):
        neighbors = [[] for _ in range(self.n)]
        for u, v in self.edges.tolist():
            neighbors[u].append(v)
            neighbors[v].append(u)
        return neighbors
    '''adjacency'''
    @property
    def adjacency(self):
        return self._cached('adjacency', lambda: normalizedadjacency(self))
    '''propagated'''
    def propagated(self, k: int):
        # \hat{A}^k X, shared by every encoder that uses k propagation steps
        def _compute():
            hidden = self.features
            for _ in range(int(k)): hidden = self.adjacency @ hidden
            hidden = np.ascontiguousarray(hidden)
            hidden.setflags(write=False)
            return hidden
        return self._cached(('propagated', int(k)), _compute)
    '''_cached'''
    def _cached(self, key, builder):
        with self._cache_lock:
            if key not in self._cache:
                self._cache[key] = builder()
            return self._cache[key]
    '''subgraph'''
    def subgraph(self, nodes):
        nodes = np.asarray(nodes, dtype=np.int64).ravel()
        if len(np.unique(nodes)) != len(nodes):
            raise ValueError('subgraph nodes must be distinct')
        remap = np.full(self.n, -1, dtype=np.int64)
        remap[nodes] = np.arange(len(nodes))
        mapped = remap[self.edges] if self.numedges else np.zeros((0, 2), dtype=np.int64)
        keep = np.all(mapped >= 0, axis=1) if len(mapped) else np.zeros(0, dtype=bool)
        return Graph(
            n=len(nodes), edges=mapped[keep], features=self.features[nodes],
            labels=None if self.labels is None else self.labels[nodes], class_count=self.class_count, node_ids=self.node_ids[nodes],
        )
    '''__repr__'''
    def __repr__(self):
        return f'Graph(n={self.n}, edges={self.numedges}, m={self.m}, classes={self.class_count})'


'''SplitSpec'''
@dataclass(frozen=True)
class SplitSpec:
    train_frac: float = 0.3
    query_frac: float = 0.4
    seed: int = 0
    def __post_init__(self):
        if not (0 < self.train_frac < 1 and 0 < self.query_frac < 1):
            raise ValueError(f'split fractions must lie in (0, 1), got {self.train_frac}, {self.query_frac}')
        if self.train_frac + self.query_frac >= 1:
            raise ValueError('train_frac + query_frac must be < 1 so the test partition is non-empty')


'''normalizedadjacency'''
def normalizedadjacency(g: Graph):
    # D^{-1/2} (A + I) D^{-1/2}
    loops = np.arange(g.n, dtype=np.int64)
    rows = np.concatenate([g.edges[:, 0], g.edges[:, 1], loops])
    cols = np.concatenate([g.edges[:, 1], g.edges[:, 0], loops])
    degrees = np.bincount(rows, minlength=g.n).astype(np.float64)
    inv_sqrt = 1.0 / np.sqrt(degrees)
    data = inv_sqrt[rows] * inv_sqrt[cols]
    return sp.csr_matrix((data, (rows, cols)), shape=(g.n, g.n))


'''splitgraph'''
def splitgraph(g: Graph, spec: SplitSpec):
    rng = np.random.default_rng(spec.seed)
    permutation = rng.permutation(g.n)
    # tiny epsilon so that e.g. 0.3 * 10 floors to 3
    n_train = int(np.floor(spec.train_frac * g.n + 1e-9))
    n_query = int(np.floor(spec.query_frac * g.n + 1e-9))
    parts = [permutation[:n_train], permutation[n_train:n_train + n_query], permutation[n_train + n_query:]]
    for name, part in zip(('train', 'query', 'test'), parts):
        if len(part) == 0:
            raise ValueError(f'{name} partition is empty for n={g.n} with fractions ({spec.train_frac}, {spec.query_frac})')
    train, query, test = (g.subgraph(np.sort(part)) for part in parts)
    return train, query, test


'''readclasscount'''
def readclasscount(label_path: str):
    # None when the file carries no "#classes=" line, labels then decide
    with open(label_path, 'r', encoding='utf-8') as fp:
        for lineno, line in enumerate(fp, start=1):
            line = line.strip()
            if not line.startswith(CLASSES_PREFIX): continue
            value = line[len(CLASSES_PREFIX):]
            if not value.isdigit():
                raise GraphFormatError(f'{label_path}:{lineno}: malformed class count "{line}"')
            return int(value)
    return None


'''loadgraph'''
def loadgraph(edge_path: str, feature_path: str, label_path: str = None):
    rows, width = [], None
    for lineno, line in readdatalines(feature_path, GRAPH_HEADER):
        try:
            row = [float(value) for value in line.split(',')]
        except ValueError:
            raise GraphFormatError(f'{feature_path}:{lineno}: malformed feature row "{line}"')
        if width is None: width = len(row)
        if len(row) != width:
            raise GraphFormatError(f'{feature_path}:{lineno}: expected {width} values, got {len(row)}')
        rows.append(row)
    n = len(rows)
    features = np.array(rows, dtype=np.float64).reshape(n, width or 0)
    edges, seen = [], {}
    for lineno, line in readdatalines(edge_path, GRAPH_HEADER):
        tokens = line.split()
        if len(tokens) != 2 or not all(token.isdigit() for token in tokens):
            raise GraphFormatError(f'{edge_path}:{lineno}: malformed edge line "{line}"')
        u, v = int(tokens[0]), int(tokens[1])
        if u >= n or v >= n:
            raise GraphFormatError(f'{edge_path}:{lineno}: node id out of range in "{line}" (feature file has {n} rows)')
        if u == v:
            raise GraphFormatError(f'{edge_path}:{lineno}: self-loop "{line}"')
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f'{edge_path}:{lineno}: duplicate edge "{line}" (first seen on line {seen[key]})')
        seen[key] = lineno
        edges.append(key)
    labels, class_count = None, None
    if label_path is not None:
        labels, class_count = [], readclasscount(label_path)
        for lineno, line in readdatalines(label_path, GRAPH_HEADER):
            if not line.isdigit():
                raise GraphFormatError(f'{label_path}:{lineno}: malformed label "{line}"')
            labels.append(int(line))
        if len(labels) != n:
            raise GraphFormatError(f'{label_path}: {len(labels)} labels for {n} feature rows')
    return Graph(n=n, edges=np.array(edges, dtype=np.int64).reshape(-1, 2), features=features, labels=labels, class_count=class_count)


'''savegraph'''
def savegraph(g: Graph, edge_path: str, feature_path: str, label_path: str = None):
    writetextatomic(edge_path, '\n'.join([GRAPH_HEADER] + [f'{u} {v}' for u, v in g.edges.tolist()]) + '\n')
    writetextatomic(feature_path, '\n'.join([GRAPH_HEADER] + [formatrow(row) for row in g.features]) + '\n')
    if label_path is not None:
        if g.labels is None: raise ValueError('graph has no labels to save')
        writetextatomic(label_path, '\n'.join([GRAPH_HEADER, f'{CLASSES_PREFIX}{g.class_count}'] + [str(label) for label in g.labels.tolist()]) + '\n')
