'''
Function:
    Implementation of the Sybil remapper: learn a map between two accounts' transformed responses from shared queries
Author:
    adage developers
'''
import numpy as np
from ..utils import LoggerHandle
from ..models import GradientDescent


'''cosinedistances'''
def cosinedistances(a, b):
    a, b = np.atleast_2d(np.asarray(a, dtype=np.float64)), np.atleast_2d(np.asarray(b, dtype=np.float64))
    norms = np.linalg.norm(a, axis=1) * np.linalg.norm(b, axis=1)
    similarity = np.where(norms > 0, (a * b).sum(axis=1) / np.where(norms > 0, norms, 1.0), 0.0)
    distances = 1.0 - similarity
    # two zero vectors coincide
    both_zero = (np.linalg.norm(a, axis=1) == 0) & (np.linalg.norm(b, axis=1) == 0)
    distances[both_zero] = 0.0
    return distances


'''SybilMapper'''
class SybilMapper():
    def __init__(self, A1, c1, A2, c2):
        self.A1, self.c1, self.A2, self.c2 = A1, c1, A2, c2
    '''__call__'''
    def __call__(self, responses):
        return (np.asarray(responses, dtype=np.float64) @ self.A1 + self.c1) @ self.A2 + self.c2
    '''aslinear'''
    def aslinear(self):
        # two stacked linear maps collapse to one
        return self.A1 @ self.A2, self.c1 @ self.A2 + self.c2


'''remapobjective'''
def remapobjective(source, target):
    num_entries = target.size
    def _objective(params):
        hidden = source @ params['A1'] + params['c1']
        residual = hidden @ params['A2'] + params['c2'] - target
        dY = 2.0 * residual / num_entries
        dH = dY @ params['A2'].T
        grads = {'A1': source.T @ dH, 'c1': dH.sum(axis=0), 'A2': hidden.T @ dY, 'c2': dY.sum(axis=0)}
        return float(np.mean(residual ** 2)), grads
    return _objective


'''sybilsplit'''
def sybilsplit(num_rows: int, overlap_fraction: float, seed: int = 0, test_fraction: float = 0.2):
    if not (0 < overlap_fraction <= 1):
        raise ValueError(f'overlap fraction must lie in (0, 1], got {overlap_fraction}')
    order = np.random.default_rng(seed).permutation(num_rows)
    num_test = max(1, int(round(test_fraction * num_rows)))
    pool, test = order[:num_rows - num_test], order[num_rows - num_test:]
    # prefixes of one pool, so a larger overlap always contains a smaller one
    num_overlap = int(np.ceil(overlap_fraction * len(pool) - 1e-9))
    if num_overlap < 2:
        raise ValueError(f'overlap of {num_overlap} shared queries is too small to fit a remapping')
    return pool[:num_overlap], test


'''sybilremap'''
def sybilremap(responses1, responses2, overlap_fraction: float, seed: int = 0, lr: float = 0.05, epochs: int = 200, logger_handle: LoggerHandle = None, disable_print: bool = True):
    '''
    responses1/responses2 are row-aligned answers for the same queries from two accounts.
    Fits account-2 -> account-1 on the overlapping rows and scores cosine distance on held-out rows.
    Returns (SybilMapper, per-row cosine distances on the held-out rows).
    '''
    responses1, responses2 = np.asarray(responses1, dtype=np.float64), np.asarray(responses2, dtype=np.float64)
    if responses1.shape != responses2.shape or responses1.ndim != 2:
        raise ValueError(f'responses must be aligned matrices, got {responses1.shape} and {responses2.shape}')
    overlap, test = sybilsplit(responses1.shape[0], overlap_fraction, seed=seed)
    source, target = responses2[overlap], responses1[overlap]
    # layer 1 starts at the least-squares fit, layer 2 at the identity
    solution = np.linalg.lstsq(np.hstack([source, np.ones((len(overlap), 1))]), target, rcond=None)[0]
    width = target.shape[1]
    init = {'A1': solution[:-1], 'c1': solution[-1], 'A2': np.eye(width), 'c2': np.zeros(width)}
    optimizer = GradientDescent(lr=lr, epochs=epochs, tag='sybil-remap', logger_handle=logger_handle, disable_print=disable_print)
    params = optimizer.minimize(remapobjective(source, target), init)
    mapper = SybilMapper(params['A1'], params['c1'], params['A2'], params['c2'])
    return mapper, cosinedistances(responses1[test], mapper(responses2[test]))
