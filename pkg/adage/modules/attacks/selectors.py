'''
Function:
    Implementation of the query-node selection strategies (diverse random sampling vs community-concentrated sampling)
Author:
    adage developers
'''
import numpy as np
from ..graphs import Graph
from .plan import KnowledgeProfile, querybudget
from ..utils import LoggerHandle, BaseModuleBuilder
from ..defenses import nearestcommunity
from ..models import EncoderParams, encode
from ..communities import CommunityModel, BuildCommunityDetector, enforcek


'''BaseQuerySelector'''
class BaseQuerySelector():
    source = 'BaseQuerySelector'
    def __init__(self, seed: int = 0, logger_handle: LoggerHandle = None, disable_print: bool = True):
        self.seed = seed
        self.logger_handle = logger_handle if logger_handle else LoggerHandle()
        self.disable_print = disable_print
    '''select'''
    def select(self, query_graph: Graph, delta: float):
        raise NotImplementedError('not be implemented')


'''RandomSelector'''
class RandomSelector(BaseQuerySelector):
    source = 'RandomSelector'
    '''select'''
    def select(self, query_graph: Graph, delta: float):
        budget = querybudget(query_graph.n, delta)
        rng = np.random.default_rng(self.seed)
        return rng.choice(query_graph.n, size=budget, replace=False).astype(np.int64)


'''ConcentratedSelector'''
class ConcentratedSelector(BaseQuerySelector):
    source = 'ConcentratedSelector'
    def __init__(self, profile: KnowledgeProfile = None, true_k: int = None, true_algorithm: str = 'louvain', communities: CommunityModel = None, encoder: EncoderParams = None, **kwargs):
        super(ConcentratedSelector, self).__init__(**kwargs)
        self.profile = profile if profile else KnowledgeProfile.fromname('PA')
        self.true_k = true_k
        self.true_algorithm = true_algorithm
        self.communities = communities
        self.encoder = encoder
    '''communityview'''
    def communityview(self, query_graph: Graph):
        if self.profile.knows_train_graph:
            if self.communities is None or self.encoder is None:
                raise ValueError('a perfect attacker needs the defender community model and target encoder')
            embeddings = encode(self.encoder, query_graph)
            return np.array([nearestcommunity(row, self.communities.centroids) for row in embeddings], dtype=np.int64)
        if self.profile.knows_k:
            if self.true_k is None: raise ValueError('knows_k is set but the true K was not given')
            k = self.true_k
        else:
            k = int(round(np.sqrt(query_graph.n)))
        k = max(1, min(int(k), query_graph.n))
        if not self.profile.knows_algorithm:
            return BuildCommunityDetector({'type': 'kmeans', 'k': k, 'seed': self.seed}).detect(query_graph)
        assignment = BuildCommunityDetector({'type': 'cnm' if self.true_algorithm == 'cnm' else 'louvain', 'seed': self.seed}).detect(query_graph)
        # the attacker pins the count in raw feature space, it has no access to target embeddings
        return enforcek(query_graph, assignment, query_graph.features, k, seed=self.seed)
    '''select'''
    def select(self, query_graph: Graph, delta: float):
        budget = querybudget(query_graph.n, delta)
        view = self.communityview(query_graph)
        if view.size == 0:
            raise ValueError('community view of the query graph is empty')
        rng = np.random.default_rng(self.seed)
        labels, sizes = np.unique(view, return_counts=True)
        # largest community first, lower label on ties
        order = labels[np.lexsort((labels, -sizes))]
        selected = []
        for label in order:
            members = np.flatnonzero(view == label)
            selected.extend(rng.permutation(members)[:budget - len(selected)].tolist())
            if len(selected) >= budget: break
        self.logger_handle.info(f'{self.source}.select >>> {budget} nodes from {len(np.unique(view[selected]))} communities ({self.profile.name})', disable_print=self.disable_print)
        return np.array(selected, dtype=np.int64)


'''QuerySelectorBuilder'''
class QuerySelectorBuilder(BaseModuleBuilder):
    REGISTERED_MODULES = {
        'random': RandomSelector, 'concentrated': ConcentratedSelector,
    }


'''BuildQuerySelector'''
BuildQuerySelector = QuerySelectorBuilder().build


'''selectrandom'''
def selectrandom(query_graph: Graph, delta: float, seed: int = 0):
    return RandomSelector(seed=seed).select(query_graph, delta)


'''selectconcentrated'''
def selectconcentrated(query_graph: Graph, delta: float, profile: KnowledgeProfile, true_k: int = None, true_algorithm: str = 'louvain', seed: int = 0, communities: CommunityModel = None, encoder: EncoderParams = None):
    selector = ConcentratedSelector(profile=profile, true_k=true_k, true_algorithm=true_algorithm, communities=communities, encoder=encoder, seed=seed)
    return selector.select(query_graph, delta)
