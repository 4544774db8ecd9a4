'''
Function:
    Implementation of common utils
Author:
    adage developers
'''
import os
import errno
import shutil
import hashlib
import tempfile
import numpy as np
from pathvalidate import sanitize_filepath, sanitize_filename


'''GraphFormatError'''
class GraphFormatError(ValueError):
    pass


'''ArtifactFormatError'''
class ArtifactFormatError(ValueError):
    pass


'''ConfigError'''
class ConfigError(ValueError):
    pass


'''TrainingDivergedError'''
class TrainingDivergedError(RuntimeError):
    pass


'''StageError'''
class StageError(RuntimeError):
    def __init__(self, stage: str, cause: BaseException):
        super(StageError, self).__init__(f'stage "{stage}" failed: {type(cause).__name__}: {cause}')
        self.stage = stage
        self.cause = cause


'''touchdir'''
def touchdir(directory, exist_ok=True, mode=511, auto_sanitize=True):
    if auto_sanitize: directory = sanitize_filepath(directory)
    return os.makedirs(directory, exist_ok=exist_ok, mode=mode)


'''replacefile'''
def replacefile(src: str, dest: str):
    try:
        os.replace(src, dest)
    except OSError as exc:
        if exc.errno != errno.EXDEV: raise
        if os.path.exists(dest):
            if os.path.isdir(dest): raise
            os.remove(dest)
        shutil.move(src, dest)


'''writetextatomic'''
def writetextatomic(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    touchdir(directory, auto_sanitize=False)
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix='.adage-', suffix='.tmp')
    with os.fdopen(fd, 'w', encoding='utf-8', newline='\n') as fp:
        fp.write(text)
    replacefile(tmp_path, path)


'''safefilename'''
def safefilename(name) -> str:
    name = sanitize_filename(str(name), replacement_text='_')
    return name or '_'


'''stablehash'''
def stablehash(*parts) -> int:
    # 64-bit, independent of PYTHONHASHSEED
    digest = hashlib.blake2b(digest_size=8)
    for part in parts:
        data = part if isinstance(part, (bytes, bytearray)) else str(part).encode('utf-8')
        digest.update(len(data).to_bytes(8, 'little'))
        digest.update(data)
    return int.from_bytes(digest.digest(), 'little')


'''childseed'''
def childseed(master_seed: int, stage: str, trial: int = 0) -> int:
    return stablehash('adage-seed', int(master_seed), stage, int(trial)) >> 1


'''formatfloat'''
def formatfloat(value) -> str:
    return repr(float(value))


'''formatrow'''
def formatrow(values) -> str:
    return ','.join(formatfloat(v) for v in np.asarray(values, dtype=np.float64).ravel())


'''readdatalines'''
def readdatalines(path: str, header: str = None):
    # yields (lineno, stripped line), skipping blanks and the optional format header
    with open(path, 'r', encoding='utf-8') as fp:
        for lineno, line in enumerate(fp, start=1):
            line = line.strip()
            if not line: continue
            if line.startswith('#'):
                if header is not None and lineno == 1 and line != header and line.startswith('#adage-'):
                    raise ArtifactFormatError(f'{path}:{lineno}: expected header "{header}", got "{line}"')
                continue
            yield lineno, line
