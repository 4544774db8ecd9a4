'''
Function:
    Implementation of the Sybil sweep: remapping distance between two accounts per transform kind and query overlap
Author:
    adage developers
'''
import numpy as np
from .runner import ExperimentRunner
from ..defenses import servedkind
from ..attacks import averagingattack, sybilremap


'''SYBIL_COLUMNS'''
SYBIL_COLUMNS = ('transform', 'overlap', 'mean_cosine_distance')


'''sybilresponses'''
def sybilresponses(runner: ExperimentRunner, context, kind: str, nodes, setup: str = 'B', noise: bool = False):
    if noise:
        # end to end: both accounts go through the full defense with this transform
        defense = runner.builddefense(context, 'adage', transform=kind)
        return [averagingattack(defense, f'sybil-{index}', nodes, setup) for index in (1, 2)]
    # transform only: one clean answer set, re-expressed in each account's frame
    defense = runner.builddefense(context, 'none')
    clean = averagingattack(defense, 'sybil-clean', nodes, setup)
    return [defense.registry.get(f'sybil-{index}').transform(clean.shape[1], servedkind(kind, setup)).apply(clean) for index in (1, 2)]


'''sybilsweep'''
def sybilsweep(runner: ExperimentRunner, transforms=None, overlaps=None, setup: str = None, noise: bool = None, trial: int = 0):
    cfg = runner.config
    transforms = list(transforms or cfg['sybil.transforms'])
    overlaps = sorted(overlaps or cfg['sybil.overlaps'])
    setup = setup or cfg['sybil.setup']
    noise = cfg['sybil.noise'] if noise is None else noise
    if setup == 'A': raise ValueError('the Sybil remapping works on representations, use setup B or C')
    context = runner.preparetrial(trial, save_artifacts=False)
    nodes = np.arange(context.query.n)
    runner.logger_handle.info(f'Start to remap Sybil accounts over {transforms} x overlaps {overlaps} ({setup}, noise={noise}).', disable_print=runner.disable_print)
    rows = []
    for kind in transforms:
        responses1, responses2 = sybilresponses(runner, context, kind, nodes, setup=setup, noise=noise)
        for overlap in overlaps:
            _, distances = runner.stage(
                'sybil', sybilremap, responses1, responses2, overlap, seed=runner.seed('sybil', trial), lr=cfg['surrogate.lr'], epochs=cfg['surrogate.epochs'],
            )
            rows.append((kind, float(overlap), float(np.mean(distances))))
    runner.logger_handle.info(f'Finished the Sybil sweep with {len(rows)} (transform, overlap) points.', disable_print=runner.disable_print)
    return rows
