'''
Function:
    Implementation of output perturbations: label swap, Gaussian embedding noise, and query-keyed deterministic noise
Author:
    adage developers
'''
import numpy as np
from ..utils import stablehash


'''perturbprobabilities'''
def perturbprobabilities(probabilities, rho, rng):
    probabilities = np.array(probabilities, dtype=np.float64).ravel()
    if not (0.0 <= rho <= 1.0):
        raise ValueError(f'flip probability must lie in [0, 1], got {rho}')
    num_classes = probabilities.shape[0]
    if num_classes < 2: return probabilities
    if rng.random() >= rho: return probabilities
    predicted = int(np.argmax(probabilities))
    # j is uniform over the other classes so every fired flip changes the prediction slot
    other = int(rng.integers(0, num_classes - 1))
    if other >= predicted: other += 1
    probabilities[[predicted, other]] = probabilities[[other, predicted]]
    return probabilities


'''perturbembedding'''
def perturbembedding(embedding, sigma, rng):
    embedding = np.array(embedding, dtype=np.float64)
    if sigma < 0: raise ValueError(f'sigma must be >= 0, got {sigma}')
    if sigma == 0: return embedding
    return embedding + sigma * rng.standard_normal(embedding.shape)


'''queryfingerprint'''
def queryfingerprint(feature_row) -> bytes:
    return np.ascontiguousarray(feature_row, dtype='<f8').tobytes()


'''deterministicnoiserng'''
def deterministicnoiserng(account_id, fingerprint: bytes):
    return np.random.default_rng(stablehash('adage-query-noise', str(account_id), bytes(fingerprint)))
