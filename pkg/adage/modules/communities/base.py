'''
Function:
    Implementation of BaseCommunityDetector
Author:
    adage developers
'''
import numpy as np
from ..graphs import Graph
from ..utils import LoggerHandle


'''relabel'''
def relabel(assignment):
    # dense 0..K-1 labels in order of first appearance
    assignment = np.asarray(assignment, dtype=np.int64).ravel()
    _, first_index, inverse = np.unique(assignment, return_index=True, return_inverse=True)
    order = np.argsort(first_index, kind='stable')
    rank = np.empty_like(order)
    rank[order] = np.arange(len(order))
    return rank[inverse].astype(np.int64)


'''BaseCommunityDetector'''
class BaseCommunityDetector():
    source = 'BaseCommunityDetector'
    def __init__(self, seed: int = 0, logger_handle: LoggerHandle = None, disable_print: bool = True):
        self.seed = seed
        self.logger_handle = logger_handle if logger_handle else LoggerHandle()
        self.disable_print = disable_print
    '''_detect'''
    def _detect(self, g: Graph):
        raise NotImplementedError('not be implemented')
    '''detect'''
    def detect(self, g: Graph):
        if g.numedges == 0:
            self.logger_handle.info(f'{self.source}.detect >>> edgeless graph, every node is its own community', disable_print=self.disable_print)
            return np.arange(g.n, dtype=np.int64)
        assignment = relabel(self._detect(g))
        self.logger_handle.info(f'{self.source}.detect >>> {int(assignment.max()) + 1} communities on {g}', disable_print=self.disable_print)
        return assignment
