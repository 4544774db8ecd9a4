'''
Function:
    Implementation of the metrics report: mean and standard deviation per grid cell across trials
Author:
    adage developers
'''
import csv
import numpy as np
from .metrics import METRICS_COLUMNS, writecsv
from ..utils import ArtifactFormatError, formatfloat, smarttrunctable


'''REPORT_KEYS'''
REPORT_KEYS = ('experiment', 'setup', 'mode', 'delta', 'rep', 'strategy')


'''REPORT_METRICS'''
REPORT_METRICS = ('surr_acc', 'surr_fid', 'c1_acc', 'c2_acc', 'c3_acc', 'final_tau', 'latency_us')


'''readmetrics'''
def readmetrics(path: str):
    with open(path, 'r', encoding='utf-8', newline='') as fp:
        reader = csv.reader(fp)
        header = next(reader, None)
        if header is None or tuple(header) != METRICS_COLUMNS:
            raise ArtifactFormatError(f'{path}:1: expected header "{",".join(METRICS_COLUMNS)}"')
        records = []
        for lineno, record in enumerate(reader, start=2):
            if not record: continue
            if len(record) != len(METRICS_COLUMNS):
                raise ArtifactFormatError(f'{path}:{lineno}: expected {len(METRICS_COLUMNS)} fields, got {len(record)}')
            records.append(dict(zip(METRICS_COLUMNS, record)))
    return records


'''summarizemetrics'''
def summarizemetrics(records):
    cells = {}
    for record in records:
        cells.setdefault(tuple(record[key] for key in REPORT_KEYS), []).append(record)
    rows = []
    for key, members in cells.items():
        row = dict(zip(REPORT_KEYS, key))
        row['trials'] = len(members)
        for metric in REPORT_METRICS:
            values = np.array([float(member[metric]) for member in members if member[metric] != ''], dtype=np.float64)
            if values.size == 0:
                row[f'{metric}_mean'], row[f'{metric}_std'] = None, None
                continue
            row[f'{metric}_mean'] = float(values.mean())
            row[f'{metric}_std'] = float(values.std(ddof=1)) if values.size > 1 else 0.0
        rows.append(row)
    return rows


'''reportcolumns'''
def reportcolumns():
    return list(REPORT_KEYS) + ['trials'] + [f'{metric}_{stat}' for metric in REPORT_METRICS for stat in ('mean', 'std')]


'''writereport'''
def writereport(path: str, rows):
    columns = reportcolumns()
    return writecsv(path, columns, [[row[column] for column in columns] for row in rows])


'''formatreport'''
def formatreport(rows, metrics=('surr_acc', 'surr_fid', 'c1_acc', 'final_tau')):
    headers = list(REPORT_KEYS[1:]) + ['trials'] + list(metrics)
    items = []
    for row in rows:
        cells = [row[key] for key in REPORT_KEYS[1:]] + [str(row['trials'])]
        for metric in metrics:
            mean, std = row[f'{metric}_mean'], row[f'{metric}_std']
            cells.append('-' if mean is None else f'{mean:.4f}±{std:.4f}')
        items.append(cells)
    return smarttrunctable(headers, items, no_trunc_cols=[0, 1])
