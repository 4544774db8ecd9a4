'''
Function:
    Implementation of the per-query latency benchmark (undefended passthrough vs the adage defense)
Author:
    adage developers
'''
import time
import numpy as np
from .runner import ExperimentRunner


'''BENCH_COLUMNS'''
BENCH_COLUMNS = ('mode', 'setup', 'k', 'calls', 'mean_us', 'p99_us', 'increase_pct')


'''timecalls'''
def timecalls(defense, account_id, nodes, setup: str, warmup: int = 100):
    nodes = np.asarray(nodes, dtype=np.int64).tolist()
    # warm the account and the propagation cache before timing
    for node in nodes[:warmup]: defense.respond(account_id, node, setup)
    latencies = np.empty(len(nodes), dtype=np.float64)
    for index, node in enumerate(nodes):
        start = time.perf_counter_ns()
        defense.respond(account_id, node, setup)
        latencies[index] = (time.perf_counter_ns() - start) / 1e3
    return latencies


'''summarizelatencies'''
def summarizelatencies(latencies):
    latencies = np.asarray(latencies, dtype=np.float64)
    if latencies.size == 0: raise ValueError('no latencies to summarize')
    return float(latencies.mean()), float(np.percentile(latencies, 99))


'''benchlatency'''
def benchlatency(runner: ExperimentRunner, calls: int = None, setup: str = None, k_target: int = None, trial: int = 0, modes=('none', 'adage')):
    cfg = runner.config
    calls = cfg['bench.calls'] if calls is None else int(calls)
    setup = cfg['bench.setup'] if setup is None else setup
    k_target = cfg['bench.k_target'] if k_target is None else int(k_target)
    if calls < 1: raise ValueError(f'need at least one call to time, got {calls}')
    num_train = int(np.floor(cfg['split.train_frac'] * runner.loadgraph().n + 1e-9))
    if k_target > num_train:
        runner.logger_handle.warning(f'bench.k_target={k_target} exceeds the {num_train} training nodes, using K={num_train}', disable_print=runner.disable_print)
        k_target = num_train
    context = runner.preparetrial(trial, k_target=k_target, save_artifacts=False)
    nodes = np.resize(np.random.default_rng(runner.seed('bench', trial)).permutation(context.query.n), calls)
    runner.logger_handle.info(f'Start to time {calls} {setup} calls per mode with K={context.communities.k}.', disable_print=runner.disable_print)
    stats = {}
    for mode in modes:
        defense = runner.builddefense(context, mode)
        stats[mode] = summarizelatencies(timecalls(defense, 'bench', nodes, setup))
    baseline = stats[modes[0]][0]
    rows = []
    for mode in modes:
        mean_us, p99_us = stats[mode]
        increase_pct = (mean_us - baseline) / baseline * 100.0 if baseline > 0 else 0.0
        rows.append((mode, setup, context.communities.k, calls, mean_us, p99_us, increase_pct))
    runner.logger_handle.info(f'Finished timing, {modes[-1]} adds {rows[-1][-1]:.2f}% to the mean latency.', disable_print=runner.disable_print)
    return rows
