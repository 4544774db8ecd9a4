'''
Function:
    Implementation of surrogate training from query responses for the three response setups
Author:
    adage developers
'''
import numpy as np
from ..graphs import Graph
from ..utils import LoggerHandle
from ..models import NodeClassifier, fitclassifier, fithead, fitregression, onehot, represent


'''querysubgraph'''
def querysubgraph(query_graph: Graph, queries, responses, num_classes: int):
    queries = np.asarray(queries, dtype=np.int64).ravel()
    responses = np.asarray(responses, dtype=np.float64)
    if responses.ndim != 2 or responses.shape[0] != queries.shape[0]:
        raise ValueError(f'{responses.shape[0] if responses.ndim else 0} response rows for {queries.shape[0]} queries')
    if queries.shape[0] < num_classes:
        raise ValueError(f'need at least {num_classes} queries to steal a {num_classes}-class model, got {queries.shape[0]}')
    # rows of the induced subgraph follow the query order, so responses stay aligned
    return query_graph.subgraph(queries), responses


'''stealsetupa'''
def stealsetupa(query_graph: Graph, queries, responses, d: int = 16, k: int = 2, lr: float = 0.05, epochs: int = 200, seed: int = 0, history: list = None, logger_handle: LoggerHandle = None, disable_print: bool = True):
    responses = np.asarray(responses, dtype=np.float64)
    subgraph, responses = querysubgraph(query_graph, queries, responses, responses.shape[1] if responses.ndim == 2 else 0)
    encoder, head = fitclassifier(
        subgraph, responses, d=d, k=k, lr=lr, epochs=epochs, seed=seed, tag='surrogate-A', history=history,
        logger_handle=logger_handle, disable_print=disable_print,
    )
    return NodeClassifier(encoder, head)


'''stealfromrepresentations'''
def stealfromrepresentations(query_graph: Graph, queries, responses, query_labels, num_classes: int = None, d: int = 16, k: int = 2, lr: float = 0.05, epochs: int = 200, seed: int = 0,
                             history: list = None, head_history: list = None, logger_handle: LoggerHandle = None, disable_print: bool = True):
    query_labels = np.asarray(query_labels, dtype=np.int64).ravel()
    if num_classes is None:
        num_classes = query_graph.class_count if query_graph.class_count else int(query_labels.max()) + 1
    subgraph, responses = querysubgraph(query_graph, queries, responses, num_classes)
    if query_labels.shape[0] != subgraph.n:
        raise ValueError(f'{query_labels.shape[0]} labels for {subgraph.n} queries')
    # phase 1: regress the returned representations
    encoder, output_map = fitregression(
        subgraph, responses, d=d, k=k, lr=lr, epochs=epochs, seed=seed, history=history, logger_handle=logger_handle, disable_print=disable_print,
    )
    # phase 2: freeze the representation and fit a head on the attacker's labels
    head = fithead(
        represent(encoder, subgraph, output_map), onehot(query_labels, num_classes), lr=lr, epochs=epochs, seed=seed + 1, history=head_history,
        logger_handle=logger_handle, disable_print=disable_print,
    )
    return NodeClassifier(encoder, head, output_map=output_map)


'''stealsetupb'''
def stealsetupb(query_graph: Graph, queries, responses, query_labels, **kwargs):
    return stealfromrepresentations(query_graph, queries, responses, query_labels, **kwargs)


'''stealsetupc'''
def stealsetupc(query_graph: Graph, queries, responses, query_labels, **kwargs):
    responses = np.asarray(responses, dtype=np.float64)
    if responses.ndim != 2 or responses.shape[1] != 2:
        raise ValueError(f'setup C responses must be 2-D projections, got shape {responses.shape}')
    return stealfromrepresentations(query_graph, queries, responses, query_labels, **kwargs)
