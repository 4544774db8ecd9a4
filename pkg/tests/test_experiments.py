'''
Function:
    Desk-scale experiment checks on the default 900-node SBM: attacker damage, downstream utility, the static-noise baseline and latency overhead
Author:
    adage developers
'''
import os
import pytest
import numpy as np
from adage.modules.harness import ExperimentConfig, ExperimentRunner, benchlatency, readmanifest, readmetrics


'''runexperiment'''
def runexperiment(output_dir, **kwargs):
    config = ExperimentConfig().replace(**kwargs) if kwargs else ExperimentConfig()
    runner = ExperimentRunner(config, output_dir=str(output_dir), version='test', disable_print=True)
    records = readmetrics(runner.run())
    manifest = readmanifest(os.path.join(runner.output_dir, 'manifest.json'))
    return records, manifest


'''lookup'''
def lookup(records, trial, mode, setup):
    matches = [r for r in records if r['trial'] == str(trial) and r['mode'] == mode and r['setup'] == setup]
    assert len(matches) == 1
    return matches[0]


'''downstream'''
def downstream(record):
    return [float(record[name]) for name in ('c1_acc', 'c2_acc', 'c3_acc') if record[name] != '']


'''defaultrun'''
@pytest.fixture(scope='module')
def defaultrun(tmp_path_factory):
    # n=900, K=30, beta=0.5, delta=0.25, setups A/B/C, 5 trials
    return runexperiment(tmp_path_factory.mktemp('default'))


'''staticnoiseruns'''
@pytest.fixture(scope='module')
def staticnoiseruns(tmp_path_factory):
    runs = {}
    for sigma in (0.05, 5.0):
        runs[sigma] = runexperiment(
            tmp_path_factory.mktemp(f'static-{sigma}'), trials=2, attack__setups=['B', 'C'], defense__modes=['none', 'static_noise', 'adage'], defense__sigma=sigma,
        )[0]
    return runs


'''test_undefended_extraction_tracks_the_target'''
def test_undefended_extraction_tracks_the_target(defaultrun):
    records, manifest = defaultrun
    for setup in ('A', 'B', 'C'):
        close = [float(lookup(records, trial, 'none', setup)['surr_acc']) >= manifest['target_accuracy'][str(trial)] - 0.05 for trial in range(5)]
        assert sum(close) >= 4, setup


'''test_adage_degrades_extraction'''
@pytest.mark.parametrize('setup, drop', [('A', 0.30), ('B', 0.20), ('C', 0.30)])
def test_adage_degrades_extraction(defaultrun, setup, drop):
    records, _ = defaultrun
    degraded = [
        float(lookup(records, trial, 'adage', setup)['surr_acc']) <= float(lookup(records, trial, 'none', setup)['surr_acc']) - drop for trial in range(5)
    ]
    assert sum(degraded) >= 4


'''test_adage_keeps_downstream_accuracy'''
def test_adage_keeps_downstream_accuracy(defaultrun):
    records, _ = defaultrun
    for trial in range(5):
        for setup in ('A', 'B', 'C'):
            defended, undefended = downstream(lookup(records, trial, 'adage', setup)), downstream(lookup(records, trial, 'none', setup))
            assert len(defended) == len(undefended) == 3
            np.testing.assert_allclose(defended, undefended, atol=0.05)


'''test_small_static_noise_changes_nothing'''
def test_small_static_noise_changes_nothing(staticnoiseruns):
    records = staticnoiseruns[0.05]
    for trial in range(2):
        for setup in ('B', 'C'):
            noisy, clean = lookup(records, trial, 'static_noise', setup), lookup(records, trial, 'none', setup)
            assert float(noisy['surr_acc']) == pytest.approx(float(clean['surr_acc']), abs=0.05)
            np.testing.assert_allclose(downstream(noisy), downstream(clean), atol=0.05)


'''test_large_static_noise_hurts_downstream_users'''
def test_large_static_noise_hurts_downstream_users(staticnoiseruns):
    for setup in ('B', 'C'):
        small = np.mean([downstream(lookup(staticnoiseruns[0.05], trial, 'static_noise', setup)) for trial in range(2)])
        large = np.mean([downstream(lookup(staticnoiseruns[5.0], trial, 'static_noise', setup)) for trial in range(2)])
        assert large <= small - 0.05, setup


'''test_adage_matches_large_static_noise_against_the_attacker'''
def test_adage_matches_large_static_noise_against_the_attacker(staticnoiseruns):
    records = staticnoiseruns[5.0]
    for setup in ('B', 'C'):
        adage = np.mean([float(lookup(records, trial, 'adage', setup)['surr_acc']) for trial in range(2)])
        static = np.mean([float(lookup(records, trial, 'static_noise', setup)['surr_acc']) for trial in range(2)])
        assert adage <= static + 0.05, setup
        for trial in range(2):
            np.testing.assert_allclose(downstream(lookup(records, trial, 'adage', setup)), downstream(lookup(records, trial, 'none', setup)), atol=0.05)


'''test_adage_latency_overhead'''
def test_adage_latency_overhead(tmp_path):
    runner = ExperimentRunner(ExperimentConfig(), output_dir=str(tmp_path / 'bench'), version='test', disable_print=True)
    # K=300 is capped at the 270 training nodes
    rows = benchlatency(runner, calls=2000, setup='B', k_target=300)
    (none_mode, _, k, calls, none_mean, _, _), (adage_mode, _, _, _, adage_mean, _, _) = rows
    assert (none_mode, adage_mode, k, calls) == ('none', 'adage', 270, 2000)
    assert adage_mean <= 2.0 * none_mean
