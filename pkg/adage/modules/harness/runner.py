'''
Function:
    Implementation of ExperimentRunner, the seeded trial pipeline: graph -> split -> target -> communities -> attack grid -> metrics.csv
Author:
    adage developers
'''
import os
import time
import orjson
import threading
import json_repair
import numpy as np
from dataclasses import dataclass
from .config import ExperimentConfig
from concurrent.futures import ThreadPoolExecutor
from .metrics import METRICS_COLUMNS, MetricsRow, MetricsWriter
from rich.progress import Progress, TextColumn, BarColumn, MofNCompleteColumn, TimeRemainingColumn
from ..graphs import Graph, GRAPH_HEADER, generatesbm, loadgraph, splitgraph
from ..utils import ArtifactFormatError, LoggerHandle, StageError, childseed, safefilename, touchdir, writetextatomic
from ..communities import COMMUNITIES_HEADER, CommunityModel, BuildCommunityDetector, computecentroids, enforcek
from ..models import MODEL_HEADER, NodeClassifier, ProjectionHead, encode, fitprojection, project, savemodel, traintarget
from ..defenses import ACCOUNT_HEADER, BaseDefense, BuildDefense
from ..attacks import (
    AttackPlan, BuildQuerySelector, averagingattack, evaluate, savetranscript, servedaccuracy, stealsetupa, stealsetupb, stealsetupc, communitymembership,
)


'''TrialContext'''
@dataclass
class TrialContext:
    trial: int
    train: Graph
    query: Graph
    test: Graph
    target: NodeClassifier
    projection: ProjectionHead
    communities: CommunityModel
    target_accuracy: float
    class_centroids: np.ndarray
    membership: np.ndarray
    downstream_ids: tuple


'''ExperimentRunner'''
class ExperimentRunner():
    source = 'ExperimentRunner'
    def __init__(self, config: ExperimentConfig = None, output_dir: str = None, version: str = '', logger_handle: LoggerHandle = None, disable_print: bool = False):
        self.config = config if config else ExperimentConfig()
        self.output_dir = output_dir if output_dir else self.config['output_dir']
        self.version = version
        self.logger_handle = logger_handle if logger_handle else LoggerHandle()
        self.disable_print = disable_print
        self.seeds = {}
        self.target_accuracies = {}
        self.lock = threading.Lock()
        self._graph = None
    '''seed'''
    def seed(self, stage: str, trial: int = 0):
        seed = childseed(self.config['seed'], stage, trial)
        with self.lock: self.seeds[f'{stage}/{trial}'] = seed
        return seed
    '''stage'''
    def stage(self, name: str, builder, *args, **kwargs):
        try:
            return builder(*args, **kwargs)
        except StageError:
            raise
        except Exception as err:
            raise StageError(name, err) from err
    '''path'''
    def path(self, *parts):
        return os.path.join(self.output_dir, *parts)
    '''loadgraph'''
    def loadgraph(self) -> Graph:
        with self.lock:
            graph = self._graph
        if graph is None:
            graph = self.stage('graph', self._buildgraph)
            with self.lock:
                if self._graph is None: self._graph = graph
                graph = self._graph
        return graph
    '''_buildgraph'''
    def _buildgraph(self):
        cfg = self.config
        if cfg['graph.source'] == 'files':
            return loadgraph(cfg['graph.edges'], cfg['graph.features'], cfg['graph.labels'] or None)
        return generatesbm(
            n=cfg['graph.n'], blocks=cfg['graph.blocks'], p_in=cfg['graph.p_in'], p_out=cfg['graph.p_out'], m=cfg['graph.m'],
            feature_shift=cfg['graph.feature_shift'], seed=self.seed('graph'),
        )
    '''buildcommunities'''
    def buildcommunities(self, train: Graph, embeddings, k_target: int, trial: int = 0):
        detector = BuildCommunityDetector({
            'type': self.config['communities.algorithm'], 'seed': self.seed('communities', trial), 'logger_handle': self.logger_handle, 'disable_print': True,
        })
        assignment = detector.detect(train)
        self.logger_handle.info(
            f'{self.source}.buildcommunities >>> {self.config["communities.algorithm"]} found {int(assignment.max()) + 1} communities, pinning K={k_target}', disable_print=self.disable_print,
        )
        assignment = enforcek(train, assignment, embeddings, k_target, seed=self.seed('enforce_k', trial))
        return CommunityModel.fromassignment(assignment, embeddings)
    '''preparetrial'''
    def preparetrial(self, trial: int = 0, k_target: int = None, save_artifacts: bool = True) -> TrialContext:
        cfg = self.config
        graph = self.loadgraph()
        train, query, test = self.stage('split', splitgraph, graph, cfg.splitspec(seed=self.seed('split', trial)))
        encoder, head = self.stage(
            'target', traintarget, train, d=cfg['model.d'], k=cfg['model.k'], lr=cfg['model.lr'], epochs=cfg['model.epochs'], seed=self.seed('target', trial),
            logger_handle=self.logger_handle, disable_print=True,
        )
        target = NodeClassifier(encoder, head)
        train_embeddings = encode(encoder, train)
        projection = self.stage('projection', fitprojection, train_embeddings)
        k_target = cfg['communities.k_target'] if k_target is None else k_target
        communities = self.stage('communities', self.buildcommunities, train, train_embeddings, k_target, trial)
        # class centroids in the projection plane let setup-C users read a label off a 2-D answer
        class_centroids = self.stage('projection', computecentroids, train.labels, project(projection, train_embeddings), graph.class_count)
        target_accuracy = float(np.mean(target.predict(test) == test.labels))
        with self.lock: self.target_accuracies[str(trial)] = target_accuracy
        self.logger_handle.info(f'{self.source}.preparetrial >>> trial {trial}: target test accuracy {target_accuracy:.4f}, K={communities.k}', disable_print=self.disable_print)
        membership = communitymembership(encoder, test, communities)
        present = np.unique(membership)
        num_downstream = min(cfg['downstream.communities'], 3, len(present))
        rng = np.random.default_rng(self.seed('downstream', trial))
        downstream_ids = tuple(int(c) for c in np.sort(rng.choice(present, size=num_downstream, replace=False)))
        if save_artifacts:
            savemodel(self.path('models', f'target-trial{trial}.model'), encoder, head, projection)
            communities.save(self.path('communities', f'trial{trial}.communities'))
        return TrialContext(
            trial=trial, train=train, query=query, test=test, target=target, projection=projection, communities=communities, target_accuracy=target_accuracy,
            class_centroids=class_centroids, membership=membership, downstream_ids=downstream_ids,
        )
    '''builddefense'''
    def builddefense(self, context: TrialContext, mode: str, **kwargs) -> BaseDefense:
        config = self.config.defenseconfig(mode, master_seed=self.seed('defense', context.trial), **kwargs)
        return BuildDefense({
            'type': mode, 'encoder': context.target.encoder, 'head': context.target.head, 'communities': context.communities, 'graph': context.query,
            'projection': context.projection, 'config': config, 'logger_handle': self.logger_handle, 'disable_print': True,
        })
    '''selectqueries'''
    def selectqueries(self, context: TrialContext, plan: AttackPlan):
        selector_cfg = {'type': plan.strategy, 'seed': plan.seed, 'logger_handle': self.logger_handle, 'disable_print': True}
        if plan.strategy == 'concentrated':
            selector_cfg.update({
                'profile': plan.profile, 'true_k': context.communities.k, 'true_algorithm': self.config['communities.algorithm'],
                'communities': context.communities, 'encoder': context.target.encoder,
            })
        return BuildQuerySelector(selector_cfg).select(context.query, plan.delta)
    '''stealsurrogate'''
    def stealsurrogate(self, context: TrialContext, plan: AttackPlan, nodes, responses):
        cfg = self.config
        kwargs = {
            'd': cfg.surrogatewidth(), 'k': cfg['model.k'], 'lr': cfg['surrogate.lr'], 'epochs': cfg['surrogate.epochs'],
            'seed': self.seed('surrogate', context.trial), 'logger_handle': self.logger_handle, 'disable_print': True,
        }
        if plan.setup == 'A': return stealsetupa(context.query, nodes, responses, **kwargs)
        steal = stealsetupb if plan.setup == 'B' else stealsetupc
        return steal(context.query, nodes, responses, context.query.labels[nodes], num_classes=context.train.class_count, **kwargs)
    '''runcell'''
    def runcell(self, context: TrialContext, mode: str, plan: AttackPlan, save_artifacts: bool = True):
        cell = safefilename(f'{mode}-{plan.setup}-delta{plan.delta}-{plan.strategy}-rep{plan.rep}-trial{context.trial}')
        defense = self.builddefense(context, mode)
        nodes = self.stage('select', self.selectqueries, context, plan)
        start = time.perf_counter()
        responses = self.stage('query', averagingattack, defense, 'attacker', nodes, plan.setup, rep=plan.rep)
        elapsed = time.perf_counter() - start
        latency_us = elapsed / (len(nodes) * plan.rep) * 1e6 if self.config['record_latency'] else 0.0
        final_tau = defense.tau('attacker')
        surrogate = self.stage('surrogate', self.stealsurrogate, context, plan, nodes, responses)
        surr_acc, surr_fid = self.stage('evaluate', evaluate, surrogate, context.target, context.test)
        downstream = []
        for community in context.downstream_ids:
            members = np.flatnonzero(context.membership == community)
            downstream.append(self.stage(
                'downstream', servedaccuracy, defense, f'downstream-{community}', context.test, members, plan.setup, class_centroids=context.class_centroids,
            ))
        downstream = downstream + [None] * (3 - len(downstream))
        if save_artifacts:
            savetranscript(self.path('transcripts', f'{cell}.csv'), nodes, plan.setup, responses)
            defense.saveaccounts(self.path('accounts', cell))
        row = MetricsRow(
            experiment=self.config['experiment'], trial=context.trial, setup=plan.setup, mode=mode, delta=float(plan.delta), rep=plan.rep, strategy=plan.strategy,
            surr_acc=surr_acc, surr_fid=surr_fid, c1_acc=downstream[0], c2_acc=downstream[1], c3_acc=downstream[2], final_tau=final_tau, latency_us=latency_us,
        )
        self.logger_handle.info(f'{self.source}.runcell >>> {cell}: surr_acc={surr_acc:.4f}, surr_fid={surr_fid:.4f}, final_tau={final_tau:.4f}', disable_print=self.disable_print)
        return row
    '''runtrial'''
    def runtrial(self, trial: int):
        context = self.preparetrial(trial)
        plans = self.config.plans(seed=self.seed('select', trial))
        return [self.runcell(context, mode, plan) for mode, plan in plans]
    '''run'''
    def run(self):
        cfg, num_trials = self.config, self.config['trials']
        touchdir(self.output_dir, auto_sanitize=False)
        writetextatomic(self.path('config.txt'), cfg.totext())
        num_cells = len(list(cfg.plans()))
        self.logger_handle.info(f'Start to run experiment "{cfg["experiment"]}" with {num_trials} trials of {num_cells} cells each.', disable_print=self.disable_print)
        status, error = 'failed', None
        writer = MetricsWriter(self.path('metrics.csv'))
        try:
            columns = (TextColumn("{task.description}"), BarColumn(bar_width=None), MofNCompleteColumn(), TimeRemainingColumn())
            with Progress(*columns, disable=self.disable_print) as progress:
                progress_id = progress.add_task(f"{self.source}.run >>> completed (0/{num_trials})", total=num_trials)
                with ThreadPoolExecutor(max_workers=cfg['num_threadings']) as pool:
                    submitted_tasks = [pool.submit(self.runtrial, trial) for trial in range(num_trials)]
                    try:
                        # submission order keeps metrics.csv identical for any thread count
                        for task in submitted_tasks:
                            for row in task.result(): writer.append(row)
                            progress.advance(progress_id, 1)
                            progress.update(progress_id, description=f"{self.source}.run >>> completed ({int(progress.tasks[progress_id].completed)}/{num_trials})")
                    except BaseException:
                        for task in submitted_tasks: task.cancel()
                        raise
            status = 'completed'
        except StageError as err:
            error = str(err)
            self.logger_handle.error(f'{self.source}.run >>> {err}', disable_print=self.disable_print)
            raise
        finally:
            writer.close()
            self.writemanifest(status, error)
        self.logger_handle.info(f'Finished running experiment "{cfg["experiment"]}". {writer.num_rows} metric rows have been saved to {writer.path}.', disable_print=self.disable_print)
        return writer.path
    '''writemanifest'''
    def writemanifest(self, status: str = 'completed', error: str = None, extra: dict = None):
        with self.lock:
            seeds, accuracies = dict(sorted(self.seeds.items())), dict(sorted(self.target_accuracies.items(), key=lambda item: int(item[0])))
        manifest = {
            'experiment': self.config['experiment'], 'version': self.version, 'status': status, 'error': error, 'config': self.config.todict(),
            'seeds': seeds, 'target_accuracy': accuracies,
            'formats': {
                'graph': GRAPH_HEADER, 'model': MODEL_HEADER, 'communities': COMMUNITIES_HEADER, 'accounts': ACCOUNT_HEADER, 'metrics': ','.join(METRICS_COLUMNS),
            },
        }
        if extra: manifest.update(extra)
        writetextatomic(self.path('manifest.json'), orjson.dumps(manifest, option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS).decode('utf-8') + '\n')
        return manifest


'''readmanifest'''
def readmanifest(path: str):
    with open(path, 'r', encoding='utf-8') as fp:
        manifest = json_repair.loads(fp.read())
    if not isinstance(manifest, dict) or 'config' not in manifest or 'seeds' not in manifest:
        raise ArtifactFormatError(f'{path}: not a run manifest')
    return manifest
