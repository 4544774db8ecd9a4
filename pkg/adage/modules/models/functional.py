'''
Function:
    Implementation of the pure forward computations: encoder, softmax head, losses and the linear 2-D projection
Author:
    adage developers
'''
import numpy as np
from ..graphs import Graph
from .params import EncoderParams, HeadParams, ProjectionHead


'''LOG_FLOOR'''
LOG_FLOOR = 1e-12


'''relu'''
def relu(x):
    return np.maximum(x, 0.0)


'''encode'''
def encode(params: EncoderParams, g: Graph, nodes=None):
    if g.m != params.m:
        raise ValueError(f'graph has {g.m} features per node, encoder expects {params.m}')
    propagated = g.propagated(params.k)
    if nodes is not None: propagated = propagated[np.asarray(nodes, dtype=np.int64)]
    return relu(propagated @ params.W1)


'''encoderow'''
def encoderow(params: EncoderParams, g: Graph, node: int):
    if not (0 <= int(node) < g.n):
        raise ValueError(f'node {node} is outside 0..{g.n - 1}')
    return encode(params, g, [int(node)])[0]


'''softmax'''
def softmax(logits):
    logits = np.asarray(logits, dtype=np.float64)
    shifted = logits - logits.max(axis=-1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=-1, keepdims=True)


'''classify'''
def classify(head: HeadParams, embeddings):
    embeddings = np.atleast_2d(np.asarray(embeddings, dtype=np.float64))
    if embeddings.shape[1] != head.d:
        raise ValueError(f'embeddings have width {embeddings.shape[1]}, head expects {head.d}')
    return softmax(embeddings @ head.W2 + head.b2)


'''crossentropy'''
def crossentropy(targets, preds):
    targets, preds = np.asarray(targets, dtype=np.float64), np.asarray(preds, dtype=np.float64)
    if targets.shape != preds.shape:
        raise ValueError(f'shape mismatch: targets {targets.shape} vs preds {preds.shape}')
    return float(np.mean(-np.sum(targets * np.log(preds + LOG_FLOOR), axis=-1)))


'''rmse'''
def rmse(a, b):
    a, b = np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f'shape mismatch: {a.shape} vs {b.shape}')
    return float(np.sqrt(np.mean((a - b) ** 2)))


'''onehot'''
def onehot(labels, num_classes: int):
    labels = np.asarray(labels, dtype=np.int64).ravel()
    targets = np.zeros((labels.shape[0], num_classes))
    targets[np.arange(labels.shape[0]), labels] = 1.0
    return targets


'''fitprojection'''
def fitprojection(embeddings) -> ProjectionHead:
    embeddings = np.asarray(embeddings, dtype=np.float64)
    if embeddings.ndim != 2 or embeddings.shape[0] < 3:
        raise ValueError(f'need at least 3 embedding rows, got shape {embeddings.shape}')
    mean = embeddings.mean(axis=0)
    _, singular_values, vt = np.linalg.svd(embeddings - mean, full_matrices=False)
    tolerance = max(embeddings.shape) * np.finfo(np.float64).eps * (singular_values[0] if len(singular_values) else 0.0)
    if len(singular_values) < 2 or singular_values[1] <= tolerance:
        raise ValueError('centered embeddings have rank < 2, no 2-D projection exists')
    P = vt[:2].T.copy()
    # sign convention: the largest-magnitude entry of each column is positive
    for column in range(2):
        if P[np.argmax(np.abs(P[:, column])), column] < 0: P[:, column] = -P[:, column]
    return ProjectionHead(P=P, mean=mean)


'''project'''
def project(head: ProjectionHead, embeddings):
    embeddings = np.atleast_2d(np.asarray(embeddings, dtype=np.float64))
    if embeddings.shape[1] != head.d:
        raise ValueError(f'embeddings have width {embeddings.shape[1]}, projection expects {head.d}')
    return (embeddings - head.mean) @ head.P
