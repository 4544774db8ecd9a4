'''
Function:
    Implementation of AccountState and AccountRegistry, the per-account query-diversity bookkeeping
Author:
    adage developers
'''
import os
import glob
import threading
import numpy as np
from dataclasses import dataclass, field
from .transforms import AccountTransform
from ..utils import ArtifactFormatError, safefilename, stablehash, touchdir, writetextatomic


'''ACCOUNT_HEADER'''
ACCOUNT_HEADER = '#adage-account v1'


'''AccountState'''
@dataclass
class AccountState:
    account_id: str
    k: int
    transform_seed: int
    noise_seed: int = 0
    occupied: set = field(default_factory=set)
    query_count: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)
    def __post_init__(self):
        if self.k < 1: raise ValueError(f'community count must be >= 1, got {self.k}')
        self.noise_rng = np.random.default_rng(self.noise_seed)
        self._transforms = {}
    '''tau'''
    @property
    def tau(self):
        return len(self.occupied) / self.k
    '''recordquery'''
    def recordquery(self, index: int, k: int = None):
        if k is not None and int(k) != self.k:
            raise ValueError(f'account {self.account_id} tracks K={self.k}, got K={k}')
        index = int(index)
        if not (0 <= index < self.k):
            raise ValueError(f'community index {index} is outside 0..{self.k - 1}')
        self.occupied.add(index)
        self.query_count += 1
        return self.tau
    '''transform'''
    def transform(self, d: int, kind: str):
        key = (int(d), kind)
        if key not in self._transforms:
            self._transforms[key] = AccountTransform(d=d, kind=kind, seed=self.transform_seed)
        return self._transforms[key]


'''AccountRegistry'''
class AccountRegistry():
    def __init__(self, k: int, master_seed: int = 0):
        self.k = int(k)
        self.master_seed = master_seed
        self.accounts = {}
        self.lock = threading.Lock()
    '''create'''
    def create(self, account_id: str, transform_seed: int = None):
        if transform_seed is None:
            transform_seed = stablehash('adage-transform', self.master_seed, account_id) >> 1
        noise_seed = stablehash('adage-noise', self.master_seed, account_id) >> 1
        return AccountState(account_id=account_id, k=self.k, transform_seed=transform_seed, noise_seed=noise_seed)
    '''get'''
    def get(self, account_id):
        account_id = str(account_id)
        with self.lock:
            if account_id not in self.accounts:
                self.accounts[account_id] = self.create(account_id)
            return self.accounts[account_id]
    '''__contains__'''
    def __contains__(self, account_id):
        return str(account_id) in self.accounts
    '''__len__'''
    def __len__(self):
        return len(self.accounts)
    '''save'''
    def save(self, directory: str):
        touchdir(directory)
        with self.lock: accounts = list(self.accounts.values())
        for account in accounts:
            with account.lock:
                lines = [ACCOUNT_HEADER, f'#account={account.account_id}', str(account.transform_seed)]
                lines.extend(str(index) for index in sorted(account.occupied))
            writetextatomic(os.path.join(directory, f'{safefilename(account.account_id)}.state'), '\n'.join(lines) + '\n')
    '''load'''
    def load(self, directory: str):
        for path in sorted(glob.glob(os.path.join(directory, '*.state'))):
            account = self.readaccount(path)
            with self.lock: self.accounts[account.account_id] = account
        return self
    '''readaccount'''
    def readaccount(self, path: str):
        with open(path, 'r', encoding='utf-8') as fp:
            lines = [line.strip() for line in fp if line.strip()]
        if not lines or lines[0] != ACCOUNT_HEADER:
            raise ArtifactFormatError(f'{path}:1: expected header "{ACCOUNT_HEADER}"')
        account_id = os.path.splitext(os.path.basename(path))[0]
        values = []
        for lineno, line in enumerate(lines[1:], start=2):
            if line.startswith('#account='): account_id = line[len('#account='):]
            elif line.startswith('#'): continue
            elif not line.lstrip('-').isdigit(): raise ArtifactFormatError(f'{path}:{lineno}: expected an integer, got "{line}"')
            else: values.append(int(line))
        if not values:
            raise ArtifactFormatError(f'{path}: missing transform seed')
        account = self.create(account_id, transform_seed=values[0])
        for index in values[1:]:
            if not (0 <= index < self.k):
                raise ArtifactFormatError(f'{path}: community index {index} is outside 0..{self.k - 1}')
            account.occupied.add(index)
        return account
