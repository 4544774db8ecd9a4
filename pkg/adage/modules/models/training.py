'''
Function:
    Implementation of the trainers: target training, frozen-encoder head fitting and embedding regression
Author:
    adage developers
'''
import numpy as np
from ..graphs import Graph
from ..utils import LoggerHandle
from .params import EncoderParams, HeadParams
from .functional import encode, classify, onehot
from .optim import GradientDescent, crossentropyobjective, headobjective, regressionobjective


'''initweights'''
def initweights(rng, fan_in: int, fan_out: int):
    return rng.standard_normal((fan_in, fan_out)) / np.sqrt(fan_in)


'''represent'''
def represent(encoder: EncoderParams, g: Graph, output_map=None, nodes=None):
    embeddings = encode(encoder, g, nodes)
    if output_map is None: return embeddings
    return embeddings @ output_map[0] + output_map[1]


'''NodeClassifier'''
class NodeClassifier():
    def __init__(self, encoder: EncoderParams, head: HeadParams, output_map=None):
        width = encoder.d if output_map is None else np.asarray(output_map[0]).shape[1]
        if width != head.d:
            raise ValueError(f'representation width {width} does not match head width {head.d}')
        self.encoder = encoder
        self.head = head
        # optional (Wo, bo) applied after the encoder, the head then reads its output
        self.output_map = output_map
    '''embed'''
    def embed(self, g: Graph, nodes=None):
        return represent(self.encoder, g, self.output_map, nodes)
    '''probabilities'''
    def probabilities(self, g: Graph, nodes=None):
        return classify(self.head, self.embed(g, nodes))
    '''predict'''
    def predict(self, g: Graph, nodes=None):
        return self.probabilities(g, nodes).argmax(axis=1)
    '''__iter__'''
    def __iter__(self):
        return iter((self.encoder, self.head))


'''fitclassifier'''
def fitclassifier(g: Graph, targets, d: int, k: int, lr: float, epochs: int, seed: int, tag: str = 'classifier', history: list = None, logger_handle: LoggerHandle = None, disable_print: bool = True):
    targets = np.asarray(targets, dtype=np.float64)
    if targets.shape[0] != g.n:
        raise ValueError(f'{targets.shape[0]} target rows for {g.n} nodes')
    rng = np.random.default_rng(seed)
    init = {'W1': initweights(rng, g.m, d), 'W2': initweights(rng, d, targets.shape[1]), 'b2': np.zeros(targets.shape[1])}
    optimizer = GradientDescent(lr=lr, epochs=epochs, tag=tag, logger_handle=logger_handle, disable_print=disable_print)
    params = optimizer.minimize(crossentropyobjective(g.propagated(k), targets), init)
    if history is not None: history.extend(optimizer.history)
    return EncoderParams(W1=params['W1'], k=k), HeadParams(W2=params['W2'], b2=params['b2'])


'''traintarget'''
def traintarget(train: Graph, d: int = 16, k: int = 2, lr: float = 0.05, epochs: int = 200, seed: int = 0, history: list = None, logger_handle: LoggerHandle = None, disable_print: bool = True):
    if train.labels is None:
        raise ValueError('target training needs a labelled graph')
    logger_handle = logger_handle if logger_handle else LoggerHandle()
    logger_handle.info(f'Start to train the target model on {train} (d={d}, k={k}, lr={lr}, epochs={epochs})', disable_print=disable_print)
    encoder, head = fitclassifier(
        train, onehot(train.labels, train.class_count), d=d, k=k, lr=lr, epochs=epochs, seed=seed, tag='target',
        history=history, logger_handle=logger_handle, disable_print=disable_print,
    )
    accuracy = float(np.mean(classify(head, encode(encoder, train)).argmax(axis=1) == train.labels))
    logger_handle.info(f'Finished training the target model, train accuracy {accuracy:.4f}', disable_print=disable_print)
    return encoder, head


'''fithead'''
def fithead(embeddings, targets, lr: float, epochs: int, seed: int, history: list = None, logger_handle: LoggerHandle = None, disable_print: bool = True):
    embeddings, targets = np.asarray(embeddings, dtype=np.float64), np.asarray(targets, dtype=np.float64)
    rng = np.random.default_rng(seed)
    init = {'W2': initweights(rng, embeddings.shape[1], targets.shape[1]), 'b2': np.zeros(targets.shape[1])}
    optimizer = GradientDescent(lr=lr, epochs=epochs, tag='head', logger_handle=logger_handle, disable_print=disable_print)
    params = optimizer.minimize(headobjective(embeddings, targets), init)
    if history is not None: history.extend(optimizer.history)
    return HeadParams(W2=params['W2'], b2=params['b2'])


'''reviveunits'''
def reviveunits(propagated, W1):
    # a unit whose pre-activation is <= 0 on every row gets no gradient; flip it to face the data
    dead = np.all(propagated @ W1 <= 0, axis=0)
    W1[:, dead] = -W1[:, dead]
    return W1


'''activesetinit'''
def activesetinit(propagated, responses, W1):
    # rows where a response unit is active are linear in W1, so least squares on them recovers exact relu targets
    for unit in range(W1.shape[1]):
        active = responses[:, unit] > 0
        if active.sum() < propagated.shape[1]: continue
        W1[:, unit] = np.linalg.lstsq(propagated[active], responses[active, unit], rcond=None)[0]
    return W1


'''fitregression'''
def fitregression(g: Graph, responses, d: int, k: int, lr: float, epochs: int, seed: int, history: list = None, logger_handle: LoggerHandle = None, disable_print: bool = True):
    '''
    Fit relu(S W1) (optionally followed by a linear map with bias) to the returned response rows.
    A map is trained whenever the response width differs from d; otherwise the encoder output is matched directly.
    Returns (EncoderParams, (Wo, bo) or None).
    '''
    responses = np.asarray(responses, dtype=np.float64)
    if responses.ndim != 2 or responses.shape[0] != g.n:
        raise ValueError(f'need one response row per node ({g.n}), got shape {responses.shape}')
    propagated, with_map = g.propagated(k), responses.shape[1] != d
    rng = np.random.default_rng(seed)
    W1 = reviveunits(propagated, initweights(rng, g.m, d))
    init = {'W1': W1}
    if with_map: init['Wo'], init['bo'] = initweights(rng, d, responses.shape[1]), np.zeros(responses.shape[1])
    objective = regressionobjective(propagated, responses, with_map)
    # history starts at the random initialization, the warm start counts as the first step
    initial_loss = objective(init)[0]
    if with_map:
        features = np.hstack([np.maximum(propagated @ W1, 0.0), np.ones((g.n, 1))])
        solution = np.linalg.lstsq(features, responses, rcond=None)[0]
        init['Wo'], init['bo'] = solution[:-1], solution[-1]
    else:
        init['W1'] = activesetinit(propagated, responses, W1.copy())
    optimizer = GradientDescent(lr=lr, epochs=epochs, tag='regression', logger_handle=logger_handle, disable_print=disable_print)
    params = optimizer.minimize(objective, init)
    if history is not None: history.extend([initial_loss] + optimizer.history)
    output_map = (params['Wo'], params['bo']) if with_map else None
    return EncoderParams(W1=params['W1'], k=k), output_map
