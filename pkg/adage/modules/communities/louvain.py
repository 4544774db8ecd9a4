'''
Function:
    Implementation of LouvainDetector: local modularity moves followed by graph coarsening
Author:
    adage developers
'''
import numpy as np
from ..graphs import Graph
from .base import BaseCommunityDetector, relabel


'''LouvainDetector'''
class LouvainDetector(BaseCommunityDetector):
    source = 'LouvainDetector'
    # a move must beat staying put by more than this (in edge-weight units)
    GAIN_TOLERANCE = 1e-10
    def __init__(self, max_levels: int = 64, **kwargs):
        super(LouvainDetector, self).__init__(**kwargs)
        self.max_levels = max_levels
        self.move_gains = []
    '''_detect'''
    def _detect(self, g: Graph):
        rng = np.random.default_rng(self.seed)
        self.move_gains = []
        adjacency = [dict() for _ in range(g.n)]
        for u, v in g.edges.tolist():
            adjacency[u][v] = adjacency[u].get(v, 0.0) + 1.0
            adjacency[v][u] = adjacency[v].get(u, 0.0) + 1.0
        loops, membership, two_m = [0.0] * g.n, np.arange(g.n, dtype=np.int64), 2.0 * g.numedges
        for _ in range(self.max_levels):
            communities, moved = self._movenodes(adjacency, loops, two_m, rng)
            if not moved: break
            communities = relabel(communities)
            membership = communities[membership]
            adjacency, loops = self._aggregate(adjacency, loops, communities)
        return membership
    '''_movenodes'''
    def _movenodes(self, adjacency, loops, two_m, rng):
        num_nodes = len(adjacency)
        degrees = [sum(neighbors.values()) + 2.0 * loop for neighbors, loop in zip(adjacency, loops)]
        communities, totals, moved = list(range(num_nodes)), list(degrees), False
        while True:
            num_moves = 0
            for u in rng.permutation(num_nodes).tolist():
                current, k_u = communities[u], degrees[u]
                links = {}
                for v, weight in adjacency[u].items():
                    links[communities[v]] = links.get(communities[v], 0.0) + weight
                totals[current] -= k_u
                stay_gain = links.get(current, 0.0) - totals[current] * k_u / two_m
                best, best_gain = current, -np.inf
                # ascending order so equal gains resolve to the lower community index
                for candidate in sorted(links.keys()):
                    if candidate == current: continue
                    gain = links[candidate] - totals[candidate] * k_u / two_m
                    if gain > best_gain: best, best_gain = candidate, gain
                if best != current and best_gain > stay_gain + self.GAIN_TOLERANCE:
                    self.move_gains.append(2.0 * (best_gain - stay_gain) / two_m)
                    communities[u] = best
                    num_moves += 1
                totals[communities[u]] += k_u
            if num_moves == 0: return communities, moved
            moved = True
    '''_aggregate'''
    @staticmethod
    def _aggregate(adjacency, loops, communities):
        num_communities = int(communities.max()) + 1
        new_adjacency, new_loops = [dict() for _ in range(num_communities)], [0.0] * num_communities
        for u, neighbors in enumerate(adjacency):
            cu = int(communities[u])
            new_loops[cu] += loops[u]
            for v, weight in neighbors.items():
                cv = int(communities[v])
                # intra-community edges are seen from both endpoints
                if cu == cv: new_loops[cu] += weight / 2.0
                else: new_adjacency[cu][cv] = new_adjacency[cu].get(cv, 0.0) + weight
        return new_adjacency, new_loops


'''louvain'''
def louvain(g: Graph, seed: int = 0):
    return LouvainDetector(seed=seed).detect(g)
