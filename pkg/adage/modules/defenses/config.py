'''
Function:
    Implementation of DefenseConfig and its flat key=value loader
Author:
    adage developers
'''
from dataclasses import dataclass, asdict
from .transforms import TRANSFORM_KINDS
from ..utils import ConfigError, readkeyvalues, applyschema


'''DEFENSE_MODES'''
DEFENSE_MODES = ('none', 'static_noise', 'adage')


'''DEFENSE_SCHEMA'''
DEFENSE_SCHEMA = {
    'mode': (str, 'adage'), 'eta': (float, 10.0), 'alpha': (float, 1.0), 'beta': (float, 0.5), 'lam': (float, 1e-6),
    'sigma': (float, 5.0), 'deterministic_noise': (bool, False), 'transform': (str, 'none'), 'master_seed': (int, 0),
}


'''DefenseConfig'''
@dataclass(frozen=True)
class DefenseConfig:
    mode: str = 'adage'
    eta: float = 10.0
    alpha: float = 1.0
    beta: float = 0.5
    lam: float = 1e-6
    sigma: float = 5.0
    deterministic_noise: bool = False
    transform: str = 'none'
    master_seed: int = 0
    def __post_init__(self):
        if self.mode not in DEFENSE_MODES:
            raise ConfigError(f'unknown defense mode "{self.mode}", choose from {DEFENSE_MODES}')
        if self.transform not in TRANSFORM_KINDS:
            raise ConfigError(f'unknown transform "{self.transform}", choose from {TRANSFORM_KINDS}')
        if self.eta <= 0 or self.alpha <= 0:
            raise ConfigError(f'eta and alpha must be > 0, got eta={self.eta}, alpha={self.alpha}')
        if not (0 < self.beta <= 1):
            raise ConfigError(f'beta must lie in (0, 1], got {self.beta}')
        if not (0 < self.lam < 1) or self.lam >= self.alpha:
            raise ConfigError(f'lam must lie in (0, 1) and below alpha, got {self.lam}')
        if self.sigma < 0:
            raise ConfigError(f'sigma must be >= 0, got {self.sigma}')
    '''replace'''
    def replace(self, **kwargs):
        values = asdict(self)
        values.update(kwargs)
        return DefenseConfig(**values)
    '''load'''
    @classmethod
    def load(cls, path: str):
        return cls(**applyschema(readkeyvalues(path), DEFENSE_SCHEMA, source=path))
