'''
Function:
    Tests for the adage command line
Author:
    adage developers
'''
import os
import json
from click.testing import CliRunner
from adage import __version__
from adage.adage import AdageCMD


'''SMALL_OVERRIDES'''
SMALL_OVERRIDES = json.dumps({
    'trials': 1, 'graph.n': 150, 'graph.p_in': 0.1, 'graph.p_out': 0.005, 'graph.m': 8, 'model.d': 8, 'model.epochs': 60,
    'surrogate.epochs': 60, 'communities.k_target': 8, 'attack.setups': 'A,B',
})


'''test_version'''
def test_version():
    result = CliRunner().invoke(AdageCMD, ['--version'])
    assert result.exit_code == 0 and __version__ in result.output


'''test_calibrate_writes_all_curves'''
def test_calibrate_writes_all_curves(tmp_path):
    out = str(tmp_path / 'calibration.csv')
    result = CliRunner().invoke(AdageCMD, ['calibrate', '--out', out])
    assert result.exit_code == 0, result.output
    with open(out, encoding='utf-8') as fp:
        lines = fp.read().splitlines()
    # 4 etas and 2 noise triples, 101 samples each
    assert len(lines) == 1 + 6 * 101
    assert lines[1].startswith('flip,eta=1.0,0.0,')


'''test_calibrate_rejects_bad_triples'''
def test_calibrate_rejects_bad_triples(tmp_path):
    result = CliRunner().invoke(AdageCMD, ['calibrate', '--noise-params', '1,0.5', '--out', str(tmp_path / 'c.csv')])
    assert result.exit_code == 2


'''test_run_then_report'''
def test_run_then_report(tmp_path):
    output_dir = str(tmp_path / 'outputs')
    result = CliRunner().invoke(AdageCMD, ['run', '-o', SMALL_OVERRIDES, '--output-dir', output_dir])
    assert result.exit_code == 0, result.output
    metrics = os.path.join(output_dir, 'metrics.csv')
    with open(metrics, encoding='utf-8') as fp:
        assert len(fp.read().splitlines()) == 1 + 4
    result = CliRunner().invoke(AdageCMD, ['report', '-m', metrics])
    assert result.exit_code == 0, result.output
    assert os.path.exists(os.path.join(output_dir, 'report.csv'))


'''test_unknown_override_key_is_a_usage_error'''
def test_unknown_override_key_is_a_usage_error(tmp_path):
    result = CliRunner().invoke(AdageCMD, ['run', '-o', '{"defence.eta": 1}', '--output-dir', str(tmp_path)])
    assert result.exit_code == 2
    assert 'unknown keys' in result.output


'''test_attack_command'''
def test_attack_command(tmp_path):
    output_dir = str(tmp_path / 'outputs')
    result = CliRunner().invoke(AdageCMD, ['attack', '-o', SMALL_OVERRIDES, '--output-dir', output_dir, '--mode', 'none', '--setup', 'B', '--delta', '0.5'])
    assert result.exit_code == 0, result.output
    assert len(os.listdir(os.path.join(output_dir, 'transcripts'))) == 1


'''test_gen_graph_and_communities'''
def test_gen_graph_and_communities(tmp_path):
    output_dir = str(tmp_path / 'outputs')
    result = CliRunner().invoke(AdageCMD, ['gen-graph', '-o', SMALL_OVERRIDES, '--output-dir', output_dir])
    assert result.exit_code == 0, result.output
    for name in ('edges.txt', 'features.txt', 'labels.txt'):
        assert os.path.exists(os.path.join(output_dir, name))
    out = str(tmp_path / 'k6.communities')
    result = CliRunner().invoke(AdageCMD, ['communities', '-o', SMALL_OVERRIDES, '--output-dir', output_dir, '--k-target', '6', '--out', out])
    assert result.exit_code == 0, result.output
    assert 'K=6' in result.output and os.path.exists(out)
