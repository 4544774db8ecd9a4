'''
Function:
    Tests for the experiment config, metrics files, the trial runner and the side experiments (calibration, diversity, bench, sybil, report)
Author:
    adage developers
'''
import os
import pytest
import numpy as np
from adage.modules.utils import ArtifactFormatError, ConfigError, StageError
from adage.modules.harness import (
    BENCH_COLUMNS, METRICS_COLUMNS, ExperimentConfig, ExperimentRunner, MetricsRow, MetricsWriter, benchlatency, calibrationcurves, diversitysweep,
    formatreport, parsetriples, readmanifest, readmetrics, relativedifference, summarizemetrics, sybilsweep, tausamples, writecalibration, writereport,
)


'''SMALL_ENTRIES'''
SMALL_ENTRIES = {
    'experiment': 'smoke', 'trials': '2', 'graph.n': '150', 'graph.p_in': '0.1', 'graph.p_out': '0.005', 'graph.m': '8', 'model.d': '8',
    'model.epochs': '60', 'surrogate.epochs': '60', 'communities.k_target': '8', 'defense.modes': 'none,adage', 'attack.setups': 'A,B,C',
}


'''smallconfig'''
def smallconfig(**kwargs):
    return ExperimentConfig(SMALL_ENTRIES).replace(**kwargs) if kwargs else ExperimentConfig(SMALL_ENTRIES)


'''smallrunner'''
def smallrunner(tmp_path, name='run', **kwargs):
    return ExperimentRunner(smallconfig(**kwargs), output_dir=str(tmp_path / name), version='test', disable_print=True)


'''test_config_defaults'''
def test_config_defaults():
    cfg = ExperimentConfig()
    assert cfg['trials'] == 5 and cfg['communities.k_target'] == 30
    assert cfg['defense.modes'] == ['none', 'adage'] and cfg['attack.setups'] == ['A', 'B', 'C']
    assert cfg['diversity.k_values'] == [] and cfg['sybil.noise'] is False
    assert cfg.surrogatewidth() == cfg['model.d']
    assert len(list(cfg.plans())) == 6


'''test_config_overrides'''
def test_config_overrides(tmp_path):
    path = tmp_path / 'experiment.txt'
    path.write_text('# smoke test\ntrials = 3\nattack.setups = A\ndefense.eta = 5\n')
    cfg = ExperimentConfig.load(str(path), '{"trials": 1, "attack.deltas": [0.1, 0.5], "defense.deterministic_noise": true}')
    assert cfg['trials'] == 1 and cfg['attack.setups'] == ['A'] and cfg['attack.deltas'] == [0.1, 0.5]
    defense = cfg.defenseconfig('adage', master_seed=7)
    assert (defense.eta, defense.deterministic_noise, defense.master_seed) == (5.0, True, 7)
    assert cfg.replace(defense__eta=2.0)['defense.eta'] == 2.0
    assert [plan.delta for _, plan in cfg.plans()] == [0.1, 0.5, 0.1, 0.5]


'''test_config_text_roundtrip'''
def test_config_text_roundtrip(tmp_path):
    cfg = smallconfig(defense__lam=1e-7, diversity__k_values=[4, 8])
    path = tmp_path / 'config.txt'
    path.write_text(cfg.totext())
    assert ExperimentConfig.load(str(path)).values == cfg.values


'''test_config_validates'''
@pytest.mark.parametrize('entries', [
    {'trials': '0'}, {'graph.source': 'files'}, {'graph.source': 'csv'}, {'communities.algorithm': 'leiden'}, {'attack.setups': 'D'},
    {'attack.strategies': 'greedy'}, {'sybil.overlaps': '0'}, {'attack.knowledge': 'god'}, {'split.train_frac': '0.6', 'split.query_frac': '0.5'},
    {'defense.beta': '0'}, {'attack.deltas': '0'}, {'attack.reps': ''}, {'num_threadings': 'many'}, {'colour': 'red'},
])
def test_config_validates(entries):
    with pytest.raises(ConfigError):
        ExperimentConfig(entries)


'''test_metricsrow'''
def test_metricsrow():
    row = MetricsRow(experiment='e', trial=0, setup='A', mode='none', delta=0.25, rep=1, strategy='random', surr_acc=0.5, surr_fid=1.0)
    assert row.torecord() == 'e,0,A,none,0.25,1,random,0.5,1.0,,,,0.0,0.0'
    with pytest.raises(ValueError):
        MetricsRow(experiment='e', trial=0, setup='A', mode='none', delta=0.25, rep=1, strategy='random', surr_acc=1.5, surr_fid=1.0)


'''test_metricswriter_and_report'''
def test_metricswriter_and_report(tmp_path, monkeypatch):
    monkeypatch.setenv('COLUMNS', '400')
    path = str(tmp_path / 'metrics.csv')
    common = dict(experiment='e', setup='A', mode='adage', delta=0.25, rep=1, strategy='random', surr_fid=0.9)
    with MetricsWriter(path) as writer:
        writer.append(MetricsRow(trial=0, surr_acc=0.5, **common))
        writer.append(MetricsRow(trial=1, surr_acc=0.7, c1_acc=0.8, **common))
        writer.append(MetricsRow(trial=0, surr_acc=0.9, **dict(common, mode='none')))
    assert writer.num_rows == 3
    records = readmetrics(path)
    assert len(records) == 3 and records[0]['c1_acc'] == ''
    rows = summarizemetrics(records)
    assert [(row['mode'], row['trials']) for row in rows] == [('adage', 2), ('none', 1)]
    assert rows[0]['surr_acc_mean'] == pytest.approx(0.6)
    assert rows[0]['surr_acc_std'] == pytest.approx(np.sqrt(0.02))
    assert rows[0]['c1_acc_mean'] == pytest.approx(0.8) and rows[0]['c1_acc_std'] == 0.0
    assert rows[1]['c1_acc_mean'] is None and rows[1]['surr_acc_std'] == 0.0
    assert '0.6000±0.1414' in formatreport(rows)
    writereport(str(tmp_path / 'report.csv'), rows)
    assert open(tmp_path / 'report.csv', encoding='utf-8').readline().startswith('experiment,setup,mode,delta,rep,strategy,trials,surr_acc_mean')


'''test_readmetrics_rejects_foreign_files'''
def test_readmetrics_rejects_foreign_files(tmp_path):
    path = tmp_path / 'metrics.csv'
    path.write_text('a,b\n1,2\n')
    with pytest.raises(ArtifactFormatError):
        readmetrics(str(path))
    path.write_text(','.join(METRICS_COLUMNS) + '\ne,0\n')
    with pytest.raises(ArtifactFormatError):
        readmetrics(str(path))


'''test_calibration'''
def test_calibration(tmp_path):
    assert tausamples(101)[50] == 0.5 and tausamples(101)[90] == 0.9
    rows = calibrationcurves(etas=(1.0, 10.0), noise_params=((1.0, 0.5, 1e-6),), ab_params=((-20.0, 10.0),), num_samples=11)
    assert len(rows) == 44
    assert {row[0] for row in rows} == {'flip', 'noise', 'flip_ab'}
    assert rows[0] == ('flip', 'eta=1.0', 0.0, pytest.approx(0.2689414213699951))
    path = writecalibration(str(tmp_path / 'calibration.csv'), rows)
    with open(path, encoding='utf-8') as fp:
        lines = fp.read().splitlines()
    assert lines[0] == 'curve,params,tau,value' and len(lines) == 45
    assert parsetriples('1,0.5,1e-6; 1,0.9,1e-6', 3) == [(1.0, 0.5, 1e-6), (1.0, 0.9, 1e-6)]
    with pytest.raises(ValueError):
        parsetriples('1,2', 3)
    with pytest.raises(ValueError):
        tausamples(1)


'''test_run_writes_metrics_and_manifest'''
def test_run_writes_metrics_and_manifest(tmp_path):
    runner = smallrunner(tmp_path)
    path = runner.run()
    with open(path, encoding='utf-8') as fp:
        lines = fp.read().splitlines()
    assert lines[0] == ','.join(METRICS_COLUMNS) and len(lines) == 13
    records = readmetrics(path)
    assert [(r['trial'], r['mode'], r['setup']) for r in records[:6]] == [
        ('0', 'none', 'A'), ('0', 'none', 'B'), ('0', 'none', 'C'), ('0', 'adage', 'A'), ('0', 'adage', 'B'), ('0', 'adage', 'C'),
    ]
    for record in records:
        for metric in ('surr_acc', 'surr_fid', 'final_tau'):
            assert 0.0 <= float(record[metric]) <= 1.0
        assert record['latency_us'] == '0.0'
    # undefended queries still have their diversity tracked
    assert all(float(r['final_tau']) > 0 for r in records)
    manifest = readmanifest(os.path.join(runner.output_dir, 'manifest.json'))
    assert manifest['status'] == 'completed' and manifest['error'] is None and manifest['version'] == 'test'
    assert {'graph/0', 'split/0', 'split/1', 'target/1', 'select/1'} <= set(manifest['seeds'])
    assert sorted(manifest['target_accuracy']) == ['0', '1']
    assert manifest['config']['communities.k_target'] == 8
    for name in ('config.txt', 'models/target-trial1.model', 'communities/trial0.communities'):
        assert os.path.exists(os.path.join(runner.output_dir, name))
    assert len(os.listdir(os.path.join(runner.output_dir, 'transcripts'))) == 12


'''test_run_is_reproducible_across_threads'''
def test_run_is_reproducible_across_threads(tmp_path):
    first = smallrunner(tmp_path, 'first').run()
    second = smallrunner(tmp_path, 'second').run()
    threaded = smallrunner(tmp_path, 'threaded', num_threadings=2).run()
    with open(first, 'rb') as fp: expected = fp.read()
    for path in (second, threaded):
        with open(path, 'rb') as fp: assert fp.read() == expected


'''test_failed_stage_leaves_a_failed_manifest'''
def test_failed_stage_leaves_a_failed_manifest(tmp_path):
    missing = str(tmp_path / 'missing.txt')
    runner = smallrunner(tmp_path, graph__source='files', graph__edges=missing, graph__features=missing)
    with pytest.raises(StageError) as info:
        runner.run()
    assert info.value.stage == 'graph'
    with open(os.path.join(runner.output_dir, 'metrics.csv'), encoding='utf-8') as fp:
        assert fp.read() == ','.join(METRICS_COLUMNS) + '\n'
    manifest = readmanifest(os.path.join(runner.output_dir, 'manifest.json'))
    assert manifest['status'] == 'failed' and 'graph' in manifest['error']


'''test_readmanifest_rejects_other_json'''
def test_readmanifest_rejects_other_json(tmp_path):
    path = tmp_path / 'manifest.json'
    path.write_text('{"experiment": "x"}')
    with pytest.raises(ArtifactFormatError):
        readmanifest(str(path))


'''test_diversitysweep'''
def test_diversitysweep(tmp_path):
    runner = smallrunner(tmp_path)
    rows, summary, best_k = diversitysweep(runner, k_values=[4, 8], delta=0.5)
    num_queries = int(0.5 * runner.preparetrial(0, save_artifacts=False).query.n)
    assert len(rows) == 2 * 2 * num_queries and len(summary) == 2
    for trial, k, attacker_tau, downstream_tau, difference in summary:
        assert downstream_tau == pytest.approx(1.0 / k)
        assert attacker_tau >= 2 * downstream_tau
        assert difference == pytest.approx(relativedifference(attacker_tau, downstream_tau))
    assert best_k in (4, 8)
    trajectory = [row[-1] for row in rows if row[1] == 8 and row[2] == 'attacker']
    assert all(later >= earlier for earlier, later in zip(trajectory, trajectory[1:]))
    assert relativedifference(0.0, 0.0) == 0.0


'''test_benchlatency'''
def test_benchlatency(tmp_path):
    runner = smallrunner(tmp_path)
    rows = benchlatency(runner, calls=50, setup='B', k_target=8)
    assert [row[0] for row in rows] == ['none', 'adage'] and len(rows[0]) == len(BENCH_COLUMNS)
    assert rows[0][-1] == 0.0 and all(row[4] > 0 and row[5] > 0 for row in rows)
    capped = benchlatency(runner, calls=5, setup='A', k_target=10000, modes=('none',))
    assert capped[0][2] == 45


'''test_sybilsweep'''
def test_sybilsweep(tmp_path):
    runner = smallrunner(tmp_path)
    rows = sybilsweep(runner, transforms=['affine', 'shuffle'], overlaps=[1.0, 0.5], setup='B')
    assert [(kind, overlap) for kind, overlap, _ in rows] == [('affine', 0.5), ('affine', 1.0), ('shuffle', 0.5), ('shuffle', 1.0)]
    assert all(distance < 1e-3 for _, _, distance in rows)
    with pytest.raises(ValueError):
        sybilsweep(runner, setup='A')
