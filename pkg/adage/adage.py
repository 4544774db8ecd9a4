'''
Function:
    Implementation of AdageClient and the adage command line
Author:
    adage developers
'''
import os
import click
import contextlib
import dataclasses
import numpy as np
if __name__ == '__main__':
    from __init__ import __version__
    from modules import (
        ExperimentConfig, ExperimentRunner, AttackPlan, MetricsRow, METRICS_COLUMNS, LoggerHandle, ConfigError, StageError, ArtifactFormatError, GraphFormatError,
        DIVERSITY_COLUMNS, DIVERSITY_SUMMARY_COLUMNS, BENCH_COLUMNS, SYBIL_COLUMNS, calibrationcurves, writecalibration, parsetriples, diversitysweep, benchlatency,
        sybilsweep, readmetrics, summarizemetrics, writereport, formatreport, writecsv, savegraph, savemodel, smarttrunctable, printtable, printfullline, colorize,
    )
else:
    from .__init__ import __version__
    from .modules import (
        ExperimentConfig, ExperimentRunner, AttackPlan, MetricsRow, METRICS_COLUMNS, LoggerHandle, ConfigError, StageError, ArtifactFormatError, GraphFormatError,
        DIVERSITY_COLUMNS, DIVERSITY_SUMMARY_COLUMNS, BENCH_COLUMNS, SYBIL_COLUMNS, calibrationcurves, writecalibration, parsetriples, diversitysweep, benchlatency,
        sybilsweep, readmetrics, summarizemetrics, writereport, formatreport, writecsv, savegraph, savemodel, smarttrunctable, printtable, printfullline, colorize,
    )


'''BASIC_INFO'''
BASIC_INFO = '''Function: Adage v%s, community-aware defense against graph model extraction
Experiment: %s
Outputs Save Path:
    %s (root dir is the current directory if using relative path).'''


'''AdageClient'''
class AdageClient():
    def __init__(self, config: ExperimentConfig = None, output_dir: str = None, disable_print: bool = False):
        self.config = config if config else ExperimentConfig()
        self.output_dir = output_dir if output_dir else self.config['output_dir']
        self.logger_handle = LoggerHandle()
        self.disable_print = disable_print
        self.runner = ExperimentRunner(self.config, output_dir=self.output_dir, version=__version__, logger_handle=self.logger_handle, disable_print=disable_print)
    '''path'''
    def path(self, name: str):
        return os.path.join(self.output_dir, name)
    '''run'''
    def run(self):
        if not self.disable_print:
            print(BASIC_INFO % (__version__, self.config['experiment'], self.output_dir))
            printfullline(ch='-')
        return self.runner.run()
    '''calibrate'''
    @staticmethod
    def calibrate(out: str, etas=(10.0,), noise_params=((1.0, 0.5, 1e-6),), ab_params=(), num_samples: int = 101):
        return writecalibration(out, calibrationcurves(etas=etas, noise_params=noise_params, ab_params=ab_params, num_samples=num_samples))
    '''diversity'''
    def diversity(self, k_values=None):
        rows, summary, best_k = diversitysweep(self.runner, k_values=k_values)
        writecsv(self.path('diversity.csv'), DIVERSITY_COLUMNS, rows)
        writecsv(self.path('diversity_summary.csv'), DIVERSITY_SUMMARY_COLUMNS, summary)
        self.runner.writemanifest(extra={'diversity': {'best_k': best_k}})
        return summary, best_k
    '''bench'''
    def bench(self, calls: int = None, setup: str = None, k_target: int = None):
        rows = benchlatency(self.runner, calls=calls, setup=setup, k_target=k_target)
        writecsv(self.path('bench.csv'), BENCH_COLUMNS, rows)
        self.runner.writemanifest(extra={'bench': {row[0]: {'mean_us': row[4], 'p99_us': row[5], 'increase_pct': row[6]} for row in rows}})
        return rows
    '''gengraph'''
    def gengraph(self, out_dir: str = None):
        out_dir = out_dir if out_dir else self.output_dir
        graph = self.runner.loadgraph()
        paths = [os.path.join(out_dir, name) for name in ('edges.txt', 'features.txt', 'labels.txt')]
        savegraph(graph, *paths)
        self.logger_handle.info(f'{graph} has been saved to {out_dir}', disable_print=self.disable_print)
        return graph, paths
    '''train'''
    def train(self, out: str = None, trial: int = 0):
        context = self.runner.preparetrial(trial, save_artifacts=False)
        out = out if out else self.path(os.path.join('models', f'target-trial{trial}.model'))
        savemodel(out, context.target.encoder, context.target.head, context.projection)
        return context, out
    '''communities'''
    def communities(self, out: str = None, k_target: int = None, trial: int = 0):
        context = self.runner.preparetrial(trial, k_target=k_target, save_artifacts=False)
        out = out if out else self.path(os.path.join('communities', f'trial{trial}.communities'))
        context.communities.save(out)
        return context, out
    '''attack'''
    def attack(self, mode: str, plan: AttackPlan, trial: int = 0) -> MetricsRow:
        context = self.runner.preparetrial(trial)
        plan = dataclasses.replace(plan, seed=self.runner.seed('select', trial))
        return self.runner.runcell(context, mode, plan)
    '''report'''
    @staticmethod
    def report(metrics_path: str, out: str = None):
        rows = summarizemetrics(readmetrics(metrics_path))
        out = out if out else os.path.join(os.path.dirname(os.path.abspath(metrics_path)), 'report.csv')
        writereport(out, rows)
        return rows, out
    '''sybil'''
    def sybil(self):
        rows = sybilsweep(self.runner)
        writecsv(self.path('sybil.csv'), SYBIL_COLUMNS, rows)
        return rows
    '''str'''
    def __str__(self):
        return f'Welcome to use adage v{__version__}!'


'''clierrors'''
@contextlib.contextmanager
def clierrors():
    try:
        yield
    except ConfigError as err:
        raise click.BadParameter(str(err))
    except StageError as err:
        raise click.ClickException(str(err))
    except (ArtifactFormatError, GraphFormatError, ValueError, OSError) as err:
        raise click.ClickException(f'{type(err).__name__}: {err}')


'''loadconfig'''
def loadconfig(config: str, overrides: str, **kwargs):
    with clierrors():
        cfg = ExperimentConfig.load(config, overrides)
        kwargs = {key: value for key, value in kwargs.items() if value is not None}
        return cfg.replace(**kwargs) if kwargs else cfg


'''parsefloats'''
def parsefloats(text: str, name: str):
    try:
        return [float(value) for value in text.replace(' ', '').split(',') if value]
    except ValueError:
        raise click.BadParameter(f'expected comma-separated numbers, got "{text}"', param_hint=name)


'''configoptions'''
def configoptions(func):
    func = click.option('-o', '--overrides', default=None, help='JSON string of dotted config keys to override, e.g. \'{"trials": 1, "attack.setups": "A"}\'.', type=str)(func)
    func = click.option('-c', '--config', default=None, help='Path to a key=value experiment config file.', type=click.Path(exists=True, dir_okay=False))(func)
    func = click.option('--output-dir', '--output_dir', default=None, help='Directory for all artifacts, overrides `output_dir` in the config.', type=str)(func)
    return func


'''AdageCMD'''
@click.group()
@click.version_option(version=__version__)
def AdageCMD():
    '''Adage: community-aware defense against graph model extraction, with the attacks and experiments to test it.'''


'''run'''
@AdageCMD.command('run')
@configoptions
def run(config: str, overrides: str, output_dir: str):
    '''Run the full trial grid and write metrics.csv plus the manifest.'''
    cfg = loadconfig(config, overrides, output_dir=output_dir)
    with clierrors():
        path = AdageClient(cfg).run()
    click.echo(path)


'''calibrate'''
@AdageCMD.command('calibrate')
@click.option('--etas', default='1,5,10,20', show_default=True, help='Comma-separated eta values for the flip curve.', type=str)
@click.option('--noise-params', '--noise_params', default='1,0.5,1e-6;1,0.9,1e-6', show_default=True, help='Semicolon-separated alpha,beta,lam triples for the noise curve.', type=str)
@click.option('--ab-params', '--ab_params', default='', show_default=True, help='Semicolon-separated a,b pairs for the general flip curve.', type=str)
@click.option('--samples', default=101, show_default=True, help='Number of evenly spaced tau samples in [0, 1].', type=int)
@click.option('--out', default='calibration.csv', show_default=True, help='Output CSV path.', type=str)
def calibrate(etas: str, noise_params: str, ab_params: str, samples: int, out: str):
    '''Sample the flip-probability and noise-scale curves over tau.'''
    etas = parsefloats(etas, '--etas')
    try:
        noise_params, ab_params = parsetriples(noise_params, 3), parsetriples(ab_params, 2)
    except ValueError as err:
        raise click.BadParameter(str(err))
    with clierrors():
        click.echo(AdageClient.calibrate(out, etas=etas, noise_params=noise_params, ab_params=ab_params, num_samples=samples))


'''diversity'''
@AdageCMD.command('diversity')
@configoptions
@click.option('--k-values', '--k_values', default=None, help='Comma-separated community counts to sweep, overrides `diversity.k_values`.', type=str)
def diversity(config: str, overrides: str, output_dir: str, k_values: str):
    '''Sweep the community count K and compare attacker vs user tau.'''
    cfg = loadconfig(config, overrides, output_dir=output_dir)
    k_values = [int(value) for value in parsefloats(k_values, '--k-values')] if k_values else None
    with clierrors():
        summary, best_k = AdageClient(cfg).diversity(k_values=k_values)
    print(smarttrunctable(DIVERSITY_SUMMARY_COLUMNS, [[f'{value:.4f}' if isinstance(value, float) else value for value in row] for row in summary]))
    click.echo(f'best K: {colorize(best_k, "highlight")}')


'''bench'''
@AdageCMD.command('bench')
@configoptions
@click.option('--calls', default=None, help='Timed calls per mode, overrides `bench.calls`.', type=int)
@click.option('--setup', default=None, help='Response setup to time, overrides `bench.setup`.', type=click.Choice(['A', 'B', 'C']))
@click.option('--k-target', '--k_target', default=None, help='Community count, overrides `bench.k_target`.', type=int)
def bench(config: str, overrides: str, output_dir: str, calls: int, setup: str, k_target: int):
    '''Time the defended query path against the passthrough.'''
    cfg = loadconfig(config, overrides, output_dir=output_dir)
    with clierrors():
        rows = AdageClient(cfg).bench(calls=calls, setup=setup, k_target=k_target)
    print(smarttrunctable(BENCH_COLUMNS, [[f'{value:.2f}' if isinstance(value, float) else value for value in row] for row in rows]))


'''gen-graph'''
@AdageCMD.command('gen-graph')
@configoptions
def gengraph(config: str, overrides: str, output_dir: str):
    '''Generate (or load) the configured graph and write it in the text graph format.'''
    cfg = loadconfig(config, overrides, output_dir=output_dir)
    with clierrors():
        _, paths = AdageClient(cfg).gengraph()
    click.echo('\n'.join(paths))


'''train'''
@AdageCMD.command('train')
@configoptions
@click.option('--out', default=None, help='Model file path, defaults to <output_dir>/models/target-trial0.model.', type=str)
def train(config: str, overrides: str, output_dir: str, out: str):
    '''Train the target model of trial 0 and save it with its 2-D projection.'''
    cfg = loadconfig(config, overrides, output_dir=output_dir)
    with clierrors():
        context, path = AdageClient(cfg).train(out=out)
    click.echo(f'target test accuracy: {context.target_accuracy:.4f}')
    click.echo(path)


'''communities'''
@AdageCMD.command('communities')
@configoptions
@click.option('--k-target', '--k_target', default=None, help='Community count, overrides `communities.k_target`.', type=int)
@click.option('--out', default=None, help='Communities file path, defaults to <output_dir>/communities/trial0.communities.', type=str)
def communities(config: str, overrides: str, output_dir: str, k_target: int, out: str):
    '''Detect the defender's communities on the training graph of trial 0.'''
    cfg = loadconfig(config, overrides, output_dir=output_dir)
    with clierrors():
        context, path = AdageClient(cfg).communities(out=out, k_target=k_target)
    sizes = context.communities.sizes()
    largest = np.argsort(-sizes, kind='stable')[:10]
    printtable(['community', 'size'], [[int(c), int(sizes[c])] for c in largest])
    click.echo(f'K={context.communities.k}, sizes min/median/max: {int(sizes.min())}/{int(np.median(sizes))}/{int(sizes.max())}')
    click.echo(path)


'''attack'''
@AdageCMD.command('attack')
@configoptions
@click.option('--mode', default='adage', show_default=True, help='Defense mode.', type=click.Choice(['none', 'static_noise', 'adage']))
@click.option('--setup', default='A', show_default=True, help='Response setup.', type=click.Choice(['A', 'B', 'C']))
@click.option('--delta', default=0.25, show_default=True, help='Query budget as a fraction of the query graph.', type=float)
@click.option('--strategy', default='random', show_default=True, help='Query selection strategy.', type=click.Choice(['random', 'concentrated']))
@click.option('--rep', default=1, show_default=True, help='Repeats per query, averaged.', type=int)
@click.option('--knowledge', default=None, help='Attacker knowledge profile, overrides `attack.knowledge`.', type=click.Choice(['PA', 'KA_aa', 'KA_ab', 'KA_ba', 'KA_bb']))
def attack(config: str, overrides: str, output_dir: str, mode: str, setup: str, delta: float, strategy: str, rep: int, knowledge: str):
    '''Run one attack cell on trial 0 and write its transcript.'''
    cfg = loadconfig(config, overrides, output_dir=output_dir)
    with clierrors():
        plan = AttackPlan(setup=setup, delta=delta, strategy=strategy, rep=rep, knowledge=knowledge or cfg['attack.knowledge'])
        row = AdageClient(cfg).attack(mode, plan)
    print(smarttrunctable(METRICS_COLUMNS, [row.torecord().split(',')]))


'''report'''
@AdageCMD.command('report')
@click.option('-m', '--metrics', 'metrics_path', required=True, help='metrics.csv written by `adage run`.', type=click.Path(exists=True, dir_okay=False))
@click.option('--out', default=None, help='Report CSV path, defaults to report.csv next to the metrics.', type=str)
def report(metrics_path: str, out: str):
    '''Aggregate metrics.csv into mean and standard deviation per cell.'''
    with clierrors():
        rows, path = AdageClient.report(metrics_path, out)
    print(formatreport(rows))
    click.echo(path)


'''sybil'''
@AdageCMD.command('sybil')
@configoptions
def sybil(config: str, overrides: str, output_dir: str):
    '''Sweep Sybil remapping distance over transform kinds and query overlap.'''
    cfg = loadconfig(config, overrides, output_dir=output_dir)
    with clierrors():
        rows = AdageClient(cfg).sybil()
    print(smarttrunctable(SYBIL_COLUMNS, [[kind, f'{overlap:.2f}', f'{distance:.6f}'] for kind, overlap, distance in rows]))


'''tests'''
if __name__ == '__main__':
    AdageCMD()
