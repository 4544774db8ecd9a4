'''
Function:
    Implementation of BaseDefense, the query-serving front of the target model
Author:
    adage developers
'''
import numpy as np
from dataclasses import dataclass
from ..graphs import Graph
from .config import DefenseConfig
from ..utils import LoggerHandle
from ..communities import CommunityModel
from .accounts import AccountRegistry, AccountState
from .perturbation import deterministicnoiserng, queryfingerprint
from ..models import EncoderParams, HeadParams, ProjectionHead, encoderow, classify, project


'''SETUP_KINDS'''
SETUP_KINDS = {'A': 'probabilities', 'B': 'embedding', 'C': 'projection'}


'''Response'''
@dataclass(frozen=True)
class Response:
    kind: str
    values: np.ndarray
    community: int = -1
    tau: float = 0.0
    def __post_init__(self):
        if self.kind not in SETUP_KINDS.values():
            raise ValueError(f'unknown response kind "{self.kind}"')
        if self.kind == 'probabilities' and abs(float(np.sum(self.values)) - 1.0) > 1e-9:
            raise ValueError('probability response does not sum to 1')


'''nearestcommunity'''
def nearestcommunity(embedding, centroids):
    embedding, centroids = np.asarray(embedding, dtype=np.float64).ravel(), np.asarray(centroids, dtype=np.float64)
    if centroids.ndim != 2 or centroids.shape[1] != embedding.shape[0]:
        raise ValueError(f'embedding width {embedding.shape[0]} does not match centroids {centroids.shape}')
    if not np.all(np.isfinite(embedding)):
        raise ValueError('embedding contains non-finite entries')
    # argmin returns the first minimum, so ties resolve to the lowest index
    return int(np.argmin(((centroids - embedding) ** 2).sum(axis=1)))


'''BaseDefense'''
class BaseDefense():
    source = 'BaseDefense'
    def __init__(self, encoder: EncoderParams, head: HeadParams, communities: CommunityModel, graph: Graph, projection: ProjectionHead = None,
                 config: DefenseConfig = None, registry: AccountRegistry = None, logger_handle: LoggerHandle = None, disable_print: bool = True):
        if communities.d != encoder.d:
            raise ValueError(f'centroids have width {communities.d}, encoder produces {encoder.d}')
        self.encoder = encoder
        self.head = head
        self.communities = communities
        self.graph = graph
        self.projection = projection
        self.config = config if config else DefenseConfig(mode='none')
        self.registry = registry if registry else AccountRegistry(k=communities.k, master_seed=self.config.master_seed)
        self.logger_handle = logger_handle if logger_handle else LoggerHandle()
        self.disable_print = disable_print
    '''respond'''
    def respond(self, account_id, query_node: int, setup: str, graph: Graph = None) -> Response:
        if setup not in SETUP_KINDS:
            raise ValueError(f'unknown setup "{setup}", choose from {list(SETUP_KINDS.keys())}')
        if setup == 'C' and self.projection is None:
            raise ValueError('setup C needs a projection head')
        graph = graph if graph is not None else self.graph
        embedding = encoderow(self.encoder, graph, query_node)
        if not np.all(np.isfinite(embedding)):
            raise ValueError(f'non-finite embedding for node {query_node}')
        account = self.registry.get(account_id)
        with account.lock:
            community = nearestcommunity(embedding, self.communities.centroids)
            tau = account.recordquery(community)
            rng = self.noiserng(account, graph, query_node)
            values = self.perturb(setup, embedding, tau, account, rng)
        return Response(kind=SETUP_KINDS[setup], values=values, community=community, tau=tau)
    '''rawoutput'''
    def rawoutput(self, setup: str, embedding):
        if setup == 'A': return classify(self.head, embedding[None, :])[0]
        if setup == 'B': return embedding.copy()
        return project(self.projection, embedding[None, :])[0]
    '''noiserng'''
    def noiserng(self, account: AccountState, graph: Graph, query_node: int):
        if self.config.deterministic_noise:
            return deterministicnoiserng(account.account_id, queryfingerprint(graph.features[int(query_node)]))
        return account.noise_rng
    '''perturb'''
    def perturb(self, setup: str, embedding, tau: float, account: AccountState, rng):
        raise NotImplementedError('not be implemented')
    '''tau'''
    def tau(self, account_id):
        return self.registry.get(account_id).tau
    '''saveaccounts'''
    def saveaccounts(self, directory: str):
        self.registry.save(directory)
        self.logger_handle.info(f'{self.source}.saveaccounts >>> {len(self.registry)} accounts written to {directory}', disable_print=self.disable_print)
