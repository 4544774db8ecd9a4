'''
Function:
    Implementation of model parameter persistence (structured text, bit-exact reload)
Author:
    adage developers
'''
import re
import numpy as np
from .params import EncoderParams, HeadParams, ProjectionHead
from ..utils import ArtifactFormatError, formatrow, readdatalines, writetextatomic


'''MODEL_HEADER'''
MODEL_HEADER = '#adage-model v1'


'''savemodel'''
def savemodel(path: str, encoder: EncoderParams, head: HeadParams, projection: ProjectionHead = None):
    lines = [MODEL_HEADER, f'dims m={encoder.m} d={encoder.d} k={encoder.k} classes={head.num_classes}']
    blocks = [('W1', encoder.W1), ('W2', head.W2), ('b2', head.b2[None, :])]
    if projection is not None: blocks += [('P', projection.P), ('mean', projection.mean[None, :])]
    for name, matrix in blocks:
        lines.append(f'[{name}]')
        lines.extend(formatrow(row) for row in matrix)
    writetextatomic(path, '\n'.join(lines) + '\n')


'''loadmodel'''
def loadmodel(path: str):
    lines = list(readdatalines(path, MODEL_HEADER))
    if not lines:
        raise ArtifactFormatError(f'{path}: empty model file')
    match = re.fullmatch(r'dims m=(\d+) d=(\d+) k=(\d+) classes=(\d+)', lines[0][1])
    if match is None:
        raise ArtifactFormatError(f'{path}:{lines[0][0]}: malformed dims line "{lines[0][1]}"')
    m, d, k, num_classes = (int(value) for value in match.groups())
    blocks, current = {}, None
    for lineno, line in lines[1:]:
        if line.startswith('[') and line.endswith(']'):
            current = line[1:-1]
            blocks[current] = []
            continue
        if current is None:
            raise ArtifactFormatError(f'{path}:{lineno}: data before the first block header')
        try:
            blocks[current].append([float(value) for value in line.split(',')])
        except ValueError:
            raise ArtifactFormatError(f'{path}:{lineno}: malformed row "{line}"')
    expected = {'W1': (m, d), 'W2': (d, num_classes), 'b2': (1, num_classes), 'P': (d, 2), 'mean': (1, d)}
    matrices = {}
    for name, rows in blocks.items():
        if name not in expected:
            raise ArtifactFormatError(f'{path}: unknown block [{name}]')
        matrix = np.array(rows, dtype=np.float64)
        if matrix.shape != expected[name]:
            raise ArtifactFormatError(f'{path}: block [{name}] has shape {matrix.shape}, expected {expected[name]}')
        matrices[name] = matrix
    for name in ('W1', 'W2', 'b2'):
        if name not in matrices: raise ArtifactFormatError(f'{path}: missing block [{name}]')
    if ('P' in matrices) != ('mean' in matrices):
        raise ArtifactFormatError(f'{path}: [P] and [mean] must appear together')
    encoder = EncoderParams(W1=matrices['W1'], k=k)
    head = HeadParams(W2=matrices['W2'], b2=matrices['b2'][0])
    projection = ProjectionHead(P=matrices['P'], mean=matrices['mean'][0]) if 'P' in matrices else None
    return encoder, head, projection
