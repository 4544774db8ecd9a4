'''
Function:
    Implementation of the parameter containers for encoder, classification head and 2-D projection head
Author:
    adage developers
'''
import numpy as np
from dataclasses import dataclass


'''freeze'''
def freeze(array, name: str, ndim: int):
    array = np.array(array, dtype=np.float64)
    if array.ndim != ndim:
        raise ValueError(f'{name} must have {ndim} dimensions, got shape {array.shape}')
    if not np.all(np.isfinite(array)):
        raise ValueError(f'{name} contains non-finite entries')
    array.setflags(write=False)
    return array


'''EncoderParams'''
@dataclass(frozen=True)
class EncoderParams:
    W1: np.ndarray
    k: int = 2
    def __post_init__(self):
        object.__setattr__(self, 'W1', freeze(self.W1, 'W1', 2))
        object.__setattr__(self, 'k', int(self.k))
        if self.k < 0: raise ValueError(f'propagation steps must be >= 0, got {self.k}')
        if self.d < 2: raise ValueError(f'embedding width must be >= 2, got {self.d}')
    '''m'''
    @property
    def m(self):
        return self.W1.shape[0]
    '''d'''
    @property
    def d(self):
        return self.W1.shape[1]


'''HeadParams'''
@dataclass(frozen=True)
class HeadParams:
    W2: np.ndarray
    b2: np.ndarray
    def __post_init__(self):
        object.__setattr__(self, 'W2', freeze(self.W2, 'W2', 2))
        object.__setattr__(self, 'b2', freeze(self.b2, 'b2', 1))
        if self.b2.shape[0] != self.W2.shape[1]:
            raise ValueError(f'b2 has length {self.b2.shape[0]}, W2 has {self.W2.shape[1]} columns')
    '''d'''
    @property
    def d(self):
        return self.W2.shape[0]
    '''num_classes'''
    @property
    def num_classes(self):
        return self.W2.shape[1]


'''ProjectionHead'''
@dataclass(frozen=True)
class ProjectionHead:
    P: np.ndarray
    mean: np.ndarray
    def __post_init__(self):
        object.__setattr__(self, 'P', freeze(self.P, 'P', 2))
        object.__setattr__(self, 'mean', freeze(self.mean, 'mean', 1))
        if self.P.shape != (self.mean.shape[0], 2):
            raise ValueError(f'P must be {self.mean.shape[0]}x2, got {self.P.shape}')
        if not np.allclose(self.P.T @ self.P, np.eye(2), atol=1e-6):
            raise ValueError('projection columns must be orthonormal')
    '''d'''
    @property
    def d(self):
        return self.P.shape[0]
