'''initialize'''
from .generators import generatesbm, blocksizes
from .graph import Graph, SplitSpec, GRAPH_HEADER, normalizedadjacency, splitgraph, loadgraph, savegraph
