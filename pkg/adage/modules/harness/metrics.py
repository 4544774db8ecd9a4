'''
Function:
    Implementation of MetricsRow and MetricsWriter (the single serialized appender of metrics.csv)
Author:
    adage developers
'''
import os
import csv
import threading
from dataclasses import dataclass, astuple
from ..utils import formatfloat, touchdir


'''METRICS_COLUMNS'''
METRICS_COLUMNS = (
    'experiment', 'trial', 'setup', 'mode', 'delta', 'rep', 'strategy', 'surr_acc', 'surr_fid', 'c1_acc', 'c2_acc', 'c3_acc', 'final_tau', 'latency_us',
)


'''MetricsRow'''
@dataclass(frozen=True)
class MetricsRow:
    experiment: str
    trial: int
    setup: str
    mode: str
    delta: float
    rep: int
    strategy: str
    surr_acc: float
    surr_fid: float
    c1_acc: float = None
    c2_acc: float = None
    c3_acc: float = None
    final_tau: float = 0.0
    latency_us: float = 0.0
    def __post_init__(self):
        for name in ('surr_acc', 'surr_fid', 'c1_acc', 'c2_acc', 'c3_acc', 'final_tau'):
            value = getattr(self, name)
            if value is not None and not (0.0 <= value <= 1.0):
                raise ValueError(f'{name} must lie in [0, 1], got {value}')
    '''torecord'''
    def torecord(self):
        def _format(value):
            if value is None: return ''
            if isinstance(value, float): return formatfloat(value)
            return str(value)
        return ','.join(_format(value) for value in astuple(self))


'''MetricsWriter'''
class MetricsWriter():
    def __init__(self, path: str):
        touchdir(os.path.dirname(os.path.abspath(path)), auto_sanitize=False)
        self.path = path
        self.lock = threading.Lock()
        self.num_rows = 0
        self.fp = open(path, 'w', encoding='utf-8', newline='\n')
        self.fp.write(','.join(METRICS_COLUMNS) + '\n')
        self.fp.flush()
    '''append'''
    def append(self, row: MetricsRow):
        with self.lock:
            self.fp.write(row.torecord() + '\n')
            self.fp.flush()
            self.num_rows += 1
    '''close'''
    def close(self):
        with self.lock:
            if not self.fp.closed: self.fp.close()
    '''__enter__'''
    def __enter__(self):
        return self
    '''__exit__'''
    def __exit__(self, exc_type, exc_value, traceback):
        self.close()


'''writecsv'''
def writecsv(path: str, columns, rows):
    touchdir(os.path.dirname(os.path.abspath(path)), auto_sanitize=False)
    with open(path, 'w', encoding='utf-8', newline='') as fp:
        writer = csv.writer(fp, lineterminator='\n')
        writer.writerow(columns)
        for row in rows:
            writer.writerow(['' if value is None else (formatfloat(value) if isinstance(value, float) else value) for value in row])
    return path
