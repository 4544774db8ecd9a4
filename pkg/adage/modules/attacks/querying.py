'''
Function:
    Implementation of the query loop (with REP-averaging) and CSV transcripts of query/response pairs
Author:
    adage developers
'''
import os
import csv
import numpy as np
from ..graphs import Graph
from ..defenses import BaseDefense
from ..utils import ArtifactFormatError, formatfloat, touchdir


'''averagingattack'''
def averagingattack(defense: BaseDefense, account_id, nodes, setup: str, rep: int = 1, graph: Graph = None):
    if rep < 1: raise ValueError(f'REP must be >= 1, got {rep}')
    rows = []
    for node in np.asarray(nodes, dtype=np.int64).tolist():
        repeats = np.array([defense.respond(account_id, node, setup, graph=graph).values for _ in range(rep)])
        # identical repeats (query-keyed noise) are returned as is, summing would perturb the last bits
        if np.all(repeats == repeats[0]):
            rows.append(repeats[0])
            continue
        mean = repeats.mean(axis=0)
        # swaps keep rows on the simplex, renormalizing only removes accumulated rounding
        if setup == 'A': mean = mean / mean.sum()
        rows.append(mean)
    return np.array(rows, dtype=np.float64)


'''savetranscript'''
def savetranscript(path: str, nodes, setup: str, responses):
    responses = np.asarray(responses, dtype=np.float64)
    directory = os.path.dirname(os.path.abspath(path))
    touchdir(directory, auto_sanitize=False)
    with open(path, 'w', encoding='utf-8', newline='') as fp:
        writer = csv.writer(fp, lineterminator='\n')
        writer.writerow(['node', 'setup'] + [f'v{index}' for index in range(responses.shape[1])])
        for node, row in zip(np.asarray(nodes, dtype=np.int64).tolist(), responses):
            writer.writerow([node, setup] + [formatfloat(value) for value in row])


'''loadtranscript'''
def loadtranscript(path: str):
    nodes, setups, rows = [], set(), []
    with open(path, 'r', encoding='utf-8', newline='') as fp:
        reader = csv.reader(fp)
        header = next(reader, None)
        if not header or header[:2] != ['node', 'setup']:
            raise ArtifactFormatError(f'{path}:1: expected a "node,setup,v0,..." header')
        for lineno, record in enumerate(reader, start=2):
            if len(record) != len(header):
                raise ArtifactFormatError(f'{path}:{lineno}: expected {len(header)} fields, got {len(record)}')
            try:
                nodes.append(int(record[0]))
                rows.append([float(value) for value in record[2:]])
            except ValueError:
                raise ArtifactFormatError(f'{path}:{lineno}: malformed record')
            setups.add(record[1])
    if len(setups) > 1:
        raise ArtifactFormatError(f'{path}: transcript mixes setups {sorted(setups)}')
    setup = setups.pop() if setups else None
    return np.array(nodes, dtype=np.int64), setup, np.array(rows, dtype=np.float64).reshape(len(rows), len(header) - 2)
