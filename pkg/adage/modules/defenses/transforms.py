'''
Function:
    Implementation of AccountTransform, the fixed per-account invertible map applied to returned embeddings
Author:
    adage developers
'''
import numpy as np


'''TRANSFORM_KINDS'''
TRANSFORM_KINDS = ('none', 'affine', 'shuffle', 'affine_shuffle')
# setup-C answers only ever see a proper rotation, chosen by servedkind
ROTATION = 'rotation'


'''AccountTransform'''
class AccountTransform():
    def __init__(self, d: int, kind: str = 'none', seed: int = 0):
        if kind not in TRANSFORM_KINDS + (ROTATION,):
            raise ValueError(f'unknown transform kind "{kind}", choose from {TRANSFORM_KINDS}')
        self.d, self.kind, self.seed = int(d), kind, seed
        rng = np.random.default_rng(seed)
        self.permutation = rng.permutation(self.d) if 'shuffle' in kind else np.arange(self.d)
        self.Q, self.b = np.eye(self.d), np.zeros(self.d)
        self.linear = 'affine' in kind or kind == ROTATION
        if self.linear:
            Q, R = np.linalg.qr(rng.standard_normal((self.d, self.d)))
            Q = Q * np.sign(np.diag(R))
            if np.linalg.det(Q) < 0: Q[:, 0] = -Q[:, 0]
            self.Q = Q
            if kind != ROTATION: self.b = 0.1 * rng.standard_normal(self.d)
    '''apply'''
    def apply(self, embeddings):
        embeddings = np.asarray(embeddings, dtype=np.float64)
        if self.kind == 'none': return embeddings.copy()
        transformed = embeddings @ self.Q.T + self.b if self.linear else embeddings.copy()
        return transformed[..., self.permutation]
    '''inverse'''
    def inverse(self, transformed):
        transformed = np.asarray(transformed, dtype=np.float64)
        if self.kind == 'none': return transformed.copy()
        unshuffled = np.empty_like(transformed)
        unshuffled[..., self.permutation] = transformed
        return (unshuffled - self.b) @ self.Q if self.linear else unshuffled
    '''adaptlinear'''
    def adaptlinear(self, W, c):
        # (W', c') with apply(E) @ W' + c' == E @ W + c
        W, c = np.asarray(W, dtype=np.float64), np.asarray(c, dtype=np.float64)
        QW = self.Q @ W
        return QW[self.permutation], c - self.b @ QW


'''servedkind'''
def servedkind(kind: str, setup: str):
    # shuffling or shifting the two projection coordinates would be a reflection or a translation, not a rotation
    if kind == 'none' or setup != 'C': return kind
    return ROTATION


'''accounttransform'''
def accounttransform(state, embedding, kind: str, setup: str = 'B'):
    return state.transform(np.asarray(embedding).shape[-1], servedkind(kind, setup)).apply(embedding)
