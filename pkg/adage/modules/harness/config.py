'''
Function:
    Implementation of ExperimentConfig, the flat dotted key=value experiment description
Author:
    adage developers
'''
import itertools
from ..graphs import SplitSpec
from ..attacks import SETUPS, AttackPlan, KnowledgeProfile, QuerySelectorBuilder
from ..defenses import DefenseConfig, DEFENSE_MODES, TRANSFORM_KINDS
from ..utils import ConfigError, readkeyvalues, loadoverrides, applyschema, formatfloat


'''EXPERIMENT_SCHEMA'''
EXPERIMENT_SCHEMA = {
    # run
    'experiment': (str, 'adage'), 'seed': (int, 0), 'trials': (int, 5), 'output_dir': (str, 'adage_outputs'),
    'num_threadings': (int, 1), 'record_latency': (bool, False),
    # graph
    'graph.source': (str, 'sbm'), 'graph.n': (int, 900), 'graph.blocks': (int, 3), 'graph.p_in': (float, 0.05), 'graph.p_out': (float, 0.002),
    'graph.m': (int, 12), 'graph.feature_shift': (float, 5.0), 'graph.edges': (str, ''), 'graph.features': (str, ''), 'graph.labels': (str, ''),
    # split
    'split.train_frac': (float, 0.3), 'split.query_frac': (float, 0.4),
    # target and surrogate models
    'model.d': (int, 16), 'model.k': (int, 2), 'model.lr': (float, 0.05), 'model.epochs': (int, 200),
    'surrogate.d': (int, 0), 'surrogate.lr': (float, 0.05), 'surrogate.epochs': (int, 200),
    # communities
    'communities.algorithm': (str, 'louvain'), 'communities.k_target': (int, 30),
    # defense
    'defense.modes': (('list', str), ['none', 'adage']), 'defense.eta': (float, 10.0), 'defense.alpha': (float, 1.0), 'defense.beta': (float, 0.5),
    'defense.lam': (float, 1e-6), 'defense.sigma': (float, 5.0), 'defense.deterministic_noise': (bool, False), 'defense.transform': (str, 'none'),
    # attack
    'attack.setups': (('list', str), ['A', 'B', 'C']), 'attack.deltas': (('list', float), [0.25]), 'attack.strategies': (('list', str), ['random']),
    'attack.reps': (('list', int), [1]), 'attack.knowledge': (str, 'PA'),
    # experiments besides run
    'downstream.communities': (int, 3), 'diversity.k_values': (('list', int), []),
    'bench.calls': (int, 10000), 'bench.setup': (str, 'B'), 'bench.k_target': (int, 300),
    'sybil.overlaps': (('list', float), [0.2, 0.4, 0.6, 0.8, 1.0]), 'sybil.transforms': (('list', str), ['affine', 'shuffle', 'affine_shuffle']), 'sybil.setup': (str, 'B'),
    'sybil.noise': (bool, False),
}


'''ExperimentConfig'''
class ExperimentConfig():
    def __init__(self, entries: dict = None, source: str = '<config>'):
        self.source = source
        self.values = applyschema(dict(entries or {}), EXPERIMENT_SCHEMA, source=source)
        self.validate()
    '''load'''
    @classmethod
    def load(cls, path: str = None, overrides: str = None):
        entries = readkeyvalues(path) if path else {}
        entries.update(loadoverrides(overrides))
        return cls(entries, source=path or '<defaults>')
    '''__getitem__'''
    def __getitem__(self, key):
        return self.values[key]
    '''get'''
    def get(self, key, default=None):
        return self.values.get(key, default)
    '''replace'''
    def replace(self, **kwargs):
        entries = {key: value for key, value in self.values.items()}
        entries.update({key.replace('__', '.'): value for key, value in kwargs.items()})
        return ExperimentConfig(entries, source=self.source)
    '''validate'''
    def validate(self):
        values = self.values
        if values['trials'] < 1: raise ConfigError(f'trials must be >= 1, got {values["trials"]}')
        if values['num_threadings'] < 1: raise ConfigError(f'num_threadings must be >= 1, got {values["num_threadings"]}')
        if values['graph.source'] not in ('sbm', 'files'):
            raise ConfigError(f'graph.source must be "sbm" or "files", got "{values["graph.source"]}"')
        if values['graph.source'] == 'files' and not (values['graph.edges'] and values['graph.features']):
            raise ConfigError('graph.source=files needs graph.edges and graph.features')
        if values['communities.algorithm'] not in ('louvain', 'cnm'):
            raise ConfigError(f'communities.algorithm must be "louvain" or "cnm", got "{values["communities.algorithm"]}"')
        if values['communities.k_target'] < 1: raise ConfigError('communities.k_target must be >= 1')
        if values['surrogate.d'] < 0: raise ConfigError('surrogate.d must be >= 0 (0 means the target width)')
        if values['downstream.communities'] < 0: raise ConfigError('downstream.communities must be >= 0')
        for mode in values['defense.modes']:
            if mode not in DEFENSE_MODES: raise ConfigError(f'unknown defense mode "{mode}", choose from {DEFENSE_MODES}')
        for setup in values['attack.setups'] + [values['bench.setup'], values['sybil.setup']]:
            if setup not in SETUPS: raise ConfigError(f'unknown setup "{setup}", choose from {SETUPS}')
        for strategy in values['attack.strategies']:
            if strategy not in QuerySelectorBuilder.names(): raise ConfigError(f'unknown strategy "{strategy}", choose from {QuerySelectorBuilder.names()}')
        for kind in values['sybil.transforms'] + [values['defense.transform']]:
            if kind not in TRANSFORM_KINDS: raise ConfigError(f'unknown transform "{kind}", choose from {TRANSFORM_KINDS}')
        for overlap in values['sybil.overlaps']:
            if not (0 < overlap <= 1): raise ConfigError(f'sybil overlaps must lie in (0, 1], got {overlap}')
        for name in ('defense.modes', 'attack.setups', 'attack.deltas', 'attack.strategies', 'attack.reps'):
            if not values[name]: raise ConfigError(f'{name} must not be empty')
        try:
            KnowledgeProfile.fromname(values['attack.knowledge'])
            self.splitspec()
            self.defenseconfig(values['defense.modes'][0])
            list(self.plans())
        except ValueError as err:
            raise ConfigError(f'{self.source}: {err}')
    '''splitspec'''
    def splitspec(self, seed: int = 0):
        return SplitSpec(train_frac=self['split.train_frac'], query_frac=self['split.query_frac'], seed=seed)
    '''defenseconfig'''
    def defenseconfig(self, mode: str, master_seed: int = 0, **kwargs):
        config = DefenseConfig(
            mode=mode, eta=self['defense.eta'], alpha=self['defense.alpha'], beta=self['defense.beta'], lam=self['defense.lam'], sigma=self['defense.sigma'],
            deterministic_noise=self['defense.deterministic_noise'], transform=self['defense.transform'], master_seed=master_seed,
        )
        return config.replace(**kwargs) if kwargs else config
    '''surrogatewidth'''
    def surrogatewidth(self):
        return self['surrogate.d'] or self['model.d']
    '''plans'''
    def plans(self, seed: int = 0):
        # (mode, AttackPlan) for every grid cell, in a fixed order
        grid = itertools.product(self['defense.modes'], self['attack.setups'], self['attack.deltas'], self['attack.strategies'], self['attack.reps'])
        for mode, setup, delta, strategy, rep in grid:
            yield mode, AttackPlan(setup=setup, delta=delta, strategy=strategy, rep=rep, seed=seed, knowledge=self['attack.knowledge'])
    '''todict'''
    def todict(self):
        return {key: (list(value) if isinstance(value, list) else value) for key, value in self.values.items()}
    '''totext'''
    def totext(self):
        def _format(value):
            if isinstance(value, bool): return 'true' if value else 'false'
            if isinstance(value, float): return formatfloat(value)
            if isinstance(value, list): return ','.join(_format(item) for item in value)
            return str(value)
        return '\n'.join(f'{key}={_format(value)}' for key, value in self.values.items()) + '\n'
