'''initialize'''
from .graphs import Graph, SplitSpec, generatesbm, loadgraph, savegraph, splitgraph
from .communities import CommunityModel, BuildCommunityDetector, enforcek
from .models import NodeClassifier, traintarget, savemodel, loadmodel, fitprojection
from .defenses import DefenseConfig, BuildDefense, AccountRegistry
from .attacks import AttackPlan, KnowledgeProfile, averagingattack, savetranscript, loadtranscript
from .utils import LoggerHandle, ConfigError, StageError, ArtifactFormatError, GraphFormatError, smarttrunctable, printtable, printfullline, colorize
from .harness import (
    ExperimentConfig, ExperimentRunner, readmanifest, MetricsRow, METRICS_COLUMNS, calibrationcurves, writecalibration, parsetriples, diversitysweep, benchlatency,
    sybilsweep, readmetrics, summarizemetrics, writereport, formatreport, writecsv, DIVERSITY_COLUMNS, DIVERSITY_SUMMARY_COLUMNS, BENCH_COLUMNS, SYBIL_COLUMNS,
)
