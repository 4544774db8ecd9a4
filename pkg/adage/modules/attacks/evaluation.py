'''
Function:
    Implementation of surrogate evaluation (accuracy, fidelity) and per-community downstream accuracy
Author:
    adage developers
'''
import numpy as np
from ..graphs import Graph
from ..communities import CommunityModel
from ..defenses import BaseDefense, nearestcommunity, servedkind
from ..models import EncoderParams, NodeClassifier, encode


'''evaluate'''
def evaluate(surrogate: NodeClassifier, target: NodeClassifier, test: Graph):
    if test.n == 0: raise ValueError('cannot evaluate on an empty test graph')
    if test.labels is None: raise ValueError('test graph has no labels')
    predictions = surrogate.predict(test)
    accuracy = float(np.mean(predictions == test.labels))
    fidelity = float(np.mean(predictions == target.predict(test)))
    return accuracy, fidelity


'''communitymembership'''
def communitymembership(encoder: EncoderParams, test: Graph, communities: CommunityModel):
    # test nodes join the community of their nearest centroid under the defender's encoder
    return np.array([nearestcommunity(row, communities.centroids) for row in encode(encoder, test)], dtype=np.int64)


'''downstreameval'''
def downstreameval(model: NodeClassifier, test: Graph, communities: CommunityModel, community_ids, encoder: EncoderParams, membership=None):
    if test.labels is None: raise ValueError('test graph has no labels')
    membership = communitymembership(encoder, test, communities) if membership is None else np.asarray(membership, dtype=np.int64)
    correct = model.predict(test) == test.labels
    accuracies = {}
    for community in community_ids:
        members = membership == int(community)
        if not members.any():
            raise ValueError(f'community {community} has no member in the test graph')
        accuracies[int(community)] = float(np.mean(correct[members]))
    return accuracies


'''servedpredictions'''
def servedpredictions(defense: BaseDefense, account_id, test: Graph, nodes, setup: str, class_centroids=None):
    '''
    Labels a legitimate user derives from defended responses on the given test nodes.
    A reads the argmax; B applies the target head re-expressed in the account's frame;
    C picks the nearest class centroid in the account's 2-D frame (class_centroids are given in the untransformed frame).
    '''
    nodes = np.asarray(nodes, dtype=np.int64).ravel()
    responses = np.array([defense.respond(account_id, node, setup, graph=test).values for node in nodes])
    if setup == 'A': return responses.argmax(axis=1)
    transform = None
    if defense.config.mode == 'adage' and defense.config.transform != 'none':
        transform = defense.registry.get(account_id).transform(responses.shape[1], servedkind(defense.config.transform, setup))
    if setup == 'B':
        W2, b2 = (defense.head.W2, defense.head.b2) if transform is None else transform.adaptlinear(defense.head.W2, defense.head.b2)
        return (responses @ W2 + b2).argmax(axis=1)
    if class_centroids is None: raise ValueError('setup C needs per-class centroids in the projection plane')
    centroids = np.asarray(class_centroids, dtype=np.float64)
    if transform is not None: centroids = transform.apply(centroids)
    return np.array([nearestcommunity(row, centroids) for row in responses], dtype=np.int64)


'''servedaccuracy'''
def servedaccuracy(defense: BaseDefense, account_id, test: Graph, nodes, setup: str, class_centroids=None):
    nodes = np.asarray(nodes, dtype=np.int64).ravel()
    if nodes.size == 0: raise ValueError('no test nodes to query')
    predictions = servedpredictions(defense, account_id, test, nodes, setup, class_centroids)
    return float(np.mean(predictions == test.labels[nodes]))
