'''initialize'''
from .bench import benchlatency, timecalls, summarizelatencies, BENCH_COLUMNS
from .sybilsweep import sybilsweep, sybilresponses, SYBIL_COLUMNS
from .runner import ExperimentRunner, TrialContext, readmanifest
from .config import ExperimentConfig, EXPERIMENT_SCHEMA
from .metrics import MetricsRow, MetricsWriter, METRICS_COLUMNS, writecsv
from .calibrate import calibrationcurves, writecalibration, tausamples, parsetriples, CALIBRATION_COLUMNS
from .report import readmetrics, summarizemetrics, writereport, formatreport, reportcolumns, REPORT_KEYS, REPORT_METRICS
from .diversity import (
    diversitysweep, tautrajectory, relativedifference, downstreamstream, DIVERSITY_COLUMNS, DIVERSITY_SUMMARY_COLUMNS,
)
