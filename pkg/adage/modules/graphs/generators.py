'''
Function:
    Implementation of the stochastic-block-model generator used as the desk-scale benchmark graph
Author:
    adage developers
'''
import numpy as np
from .graph import Graph


'''blocksizes'''
def blocksizes(n: int, blocks: int):
    base, extra = divmod(int(n), int(blocks))
    return [base + (1 if b < extra else 0) for b in range(blocks)]


'''generatesbm'''
def generatesbm(n: int, blocks: int, p_in: float, p_out: float, m: int, feature_shift: float, seed: int = 0) -> Graph:
    if blocks < 2:
        raise ValueError(f'blocks must be >= 2, got {blocks}')
    if not (0 <= p_out < p_in <= 1):
        raise ValueError(f'need 0 <= p_out < p_in <= 1, got p_in={p_in}, p_out={p_out}')
    if n < blocks or m < 1:
        raise ValueError(f'need n >= blocks and m >= 1, got n={n}, blocks={blocks}, m={m}')
    rng = np.random.default_rng(seed)
    labels = np.repeat(np.arange(blocks), blocksizes(n, blocks))
    # one uniform draw per unordered pair (upper triangle, row-major)
    upper_u, upper_v = np.triu_indices(n, k=1)
    draws = rng.random(upper_u.shape[0])
    same_block = labels[upper_u] == labels[upper_v]
    keep = draws < np.where(same_block, p_in, p_out)
    edges = np.stack([upper_u[keep], upper_v[keep]], axis=1)
    # block indicator tiled over the m feature dimensions: dim j belongs to block j % blocks
    indicator = (np.arange(m)[None, :] % blocks == labels[:, None]).astype(np.float64)
    features = rng.standard_normal((n, m)) + feature_shift * indicator
    return Graph(n=n, edges=edges, features=features, labels=labels, class_count=blocks)
