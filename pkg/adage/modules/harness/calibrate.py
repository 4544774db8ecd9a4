'''
Function:
    Implementation of calibration-curve sampling (flip probability and noise scale over tau)
Author:
    adage developers
'''
import numpy as np
from .metrics import writecsv
from ..utils import formatfloat
from ..defenses import flipprobability, flipprobabilityab, noisesigma


'''CALIBRATION_COLUMNS'''
CALIBRATION_COLUMNS = ('curve', 'params', 'tau', 'value')


'''tausamples'''
def tausamples(num_samples: int = 101):
    if num_samples < 2: raise ValueError(f'need at least 2 tau samples, got {num_samples}')
    # i / (n - 1) keeps 0.5 and 0.9 exact for n = 101
    return [index / (num_samples - 1) for index in range(num_samples)]


'''calibrationcurves'''
def calibrationcurves(etas=(10.0,), noise_params=((1.0, 0.5, 1e-6),), ab_params=(), num_samples: int = 101):
    taus, rows = tausamples(num_samples), []
    for eta in etas:
        rows.extend(('flip', f'eta={formatfloat(eta)}', tau, flipprobability(tau, eta)) for tau in taus)
    for alpha, beta, lam in noise_params:
        params = f'alpha={formatfloat(alpha)};beta={formatfloat(beta)};lam={formatfloat(lam)}'
        rows.extend(('noise', params, tau, noisesigma(tau, alpha, beta, lam)) for tau in taus)
    for a, b in ab_params:
        rows.extend(('flip_ab', f'a={formatfloat(a)};b={formatfloat(b)}', tau, flipprobabilityab(tau, a, b)) for tau in taus)
    return rows


'''writecalibration'''
def writecalibration(path: str, rows):
    return writecsv(path, CALIBRATION_COLUMNS, rows)


'''parsetriples'''
def parsetriples(text: str, width: int):
    # "1,0.5,1e-6;1,0.9,1e-6" -> [(1.0, 0.5, 1e-06), (1.0, 0.9, 1e-06)]
    groups = []
    for chunk in (text or '').split(';'):
        chunk = chunk.strip()
        if not chunk: continue
        values = [float(value) for value in chunk.split(',')]
        if len(values) != width: raise ValueError(f'expected {width} comma-separated numbers in "{chunk}"')
        if not all(np.isfinite(values)): raise ValueError(f'non-finite value in "{chunk}"')
        groups.append(tuple(values))
    return groups
