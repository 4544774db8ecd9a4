'''
Function:
    Implementation of AttackPlan and KnowledgeProfile
Author:
    adage developers
'''
import numpy as np
from dataclasses import dataclass


'''SETUPS'''
SETUPS = ('A', 'B', 'C')


'''querybudget'''
def querybudget(num_nodes: int, delta: float):
    if not (0 < delta <= 1):
        raise ValueError(f'query rate must lie in (0, 1], got {delta}')
    budget = int(np.floor(delta * num_nodes + 1e-9))
    if budget < 1:
        raise ValueError(f'query rate {delta} selects no node out of {num_nodes}')
    return budget


'''KnowledgeProfile'''
@dataclass(frozen=True)
class KnowledgeProfile:
    knows_train_graph: bool = False
    knows_k: bool = False
    knows_algorithm: bool = False
    '''PROFILES'''
    PROFILES = {
        'PA': (True, True, True), 'KA_aa': (False, True, True), 'KA_ab': (False, True, False),
        'KA_ba': (False, False, True), 'KA_bb': (False, False, False),
    }
    '''fromname'''
    @classmethod
    def fromname(cls, name: str):
        if name not in cls.PROFILES:
            raise ValueError(f'unknown knowledge profile "{name}", choose from {list(cls.PROFILES.keys())}')
        return cls(*cls.PROFILES[name])
    '''name'''
    @property
    def name(self):
        if self.knows_train_graph: return 'PA'
        return 'KA_' + ('a' if self.knows_k else 'b') + ('a' if self.knows_algorithm else 'b')


'''AttackPlan'''
@dataclass(frozen=True)
class AttackPlan:
    setup: str = 'A'
    delta: float = 0.25
    strategy: str = 'random'
    rep: int = 1
    seed: int = 0
    knowledge: str = 'PA'
    def __post_init__(self):
        if self.setup not in SETUPS:
            raise ValueError(f'unknown setup "{self.setup}", choose from {SETUPS}')
        if not (0 < self.delta <= 1):
            raise ValueError(f'query rate must lie in (0, 1], got {self.delta}')
        if self.rep < 1:
            raise ValueError(f'REP must be >= 1, got {self.rep}')
        KnowledgeProfile.fromname(self.knowledge)
    '''profile'''
    @property
    def profile(self):
        return KnowledgeProfile.fromname(self.knowledge)
    '''budget'''
    def budget(self, num_query_nodes: int):
        return querybudget(num_query_nodes, self.delta)
