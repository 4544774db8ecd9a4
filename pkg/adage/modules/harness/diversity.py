'''
Function:
    Implementation of the community-count sweep: tau trajectories of a diverse attacker stream vs a single-community user stream
Author:
    adage developers
'''
import dataclasses
import numpy as np
from .runner import ExperimentRunner, TrialContext
from ..models import encode
from ..attacks import RandomSelector, communitymembership


'''DIVERSITY_COLUMNS'''
DIVERSITY_COLUMNS = ('trial', 'k', 'stream', 'query', 'tau')


'''DIVERSITY_SUMMARY_COLUMNS'''
DIVERSITY_SUMMARY_COLUMNS = ('trial', 'k', 'attacker_tau', 'downstream_tau', 'relative_difference')


'''tautrajectory'''
def tautrajectory(defense, account_id, nodes, setup: str = 'B', graph=None):
    return [defense.respond(account_id, node, setup, graph=graph).tau for node in np.asarray(nodes, dtype=np.int64).tolist()]


'''relativedifference'''
def relativedifference(attacker_tau: float, downstream_tau: float):
    return (attacker_tau - downstream_tau) / attacker_tau if attacker_tau > 0 else 0.0


'''downstreamstream'''
def downstreamstream(membership, length: int, seed: int = 0):
    # a user who stays in the largest test community, cycling it to match the attacker's length
    labels, sizes = np.unique(membership, return_counts=True)
    community = int(labels[np.lexsort((labels, -sizes))][0])
    members = np.random.default_rng(seed).permutation(np.flatnonzero(membership == community))
    return community, np.resize(members, length)


'''diversitysweep'''
def diversitysweep(runner: ExperimentRunner, k_values=None, delta: float = None, setup: str = 'B', trial: int = 0):
    cfg = runner.config
    delta = cfg['attack.deltas'][0] if delta is None else delta
    base = runner.preparetrial(trial, save_artifacts=False)
    k_values = list(k_values or cfg['diversity.k_values'] or [cfg['communities.k_target']])
    embeddings = encode(base.target.encoder, base.train)
    attacker_nodes = RandomSelector(seed=runner.seed('select', trial)).select(base.query, delta)
    rows, summary = [], []
    runner.logger_handle.info(f'Start to sweep community counts {k_values} on {base.train}.', disable_print=runner.disable_print)
    for k in k_values:
        communities = runner.stage('communities', runner.buildcommunities, base.train, embeddings, k, trial)
        context: TrialContext = dataclasses.replace(base, communities=communities, membership=communitymembership(base.target.encoder, base.test, communities))
        defense = runner.builddefense(context, 'none')
        attacker = tautrajectory(defense, 'attacker', attacker_nodes, setup)
        _, user_nodes = downstreamstream(context.membership, len(attacker_nodes), seed=runner.seed('downstream', trial))
        user = tautrajectory(defense, 'downstream', user_nodes, setup, graph=context.test)
        for stream, trajectory in (('attacker', attacker), ('downstream', user)):
            rows.extend((trial, k, stream, index, tau) for index, tau in enumerate(trajectory))
        summary.append((trial, k, attacker[-1], user[-1], relativedifference(attacker[-1], user[-1])))
    best = max(summary, key=lambda row: row[-1])
    runner.logger_handle.info(f'Finished the community-count sweep, best K={best[1]} (relative difference {best[-1]:.4f}).', disable_print=runner.disable_print)
    return rows, summary, best[1]

