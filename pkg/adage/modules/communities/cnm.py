'''
Function:
    Implementation of CNMDetector, Clauset-Newman-Moore greedy modularity agglomeration
Author:
    adage developers
'''
import numpy as np
import networkx as nx
from ..graphs import Graph
from .base import BaseCommunityDetector


'''CNMDetector'''
class CNMDetector(BaseCommunityDetector):
    source = 'CNMDetector'
    '''_detect'''
    def _detect(self, g: Graph):
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(g.n))
        nx_graph.add_edges_from(g.edges.tolist())
        assignment = np.full(g.n, -1, dtype=np.int64)
        for index, members in enumerate(nx.community.greedy_modularity_communities(nx_graph)):
            assignment[sorted(members)] = index
        return assignment


'''cnmgreedy'''
def cnmgreedy(g: Graph):
    return CNMDetector().detect(g)
