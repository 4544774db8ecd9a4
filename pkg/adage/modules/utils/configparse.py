'''
Function:
    Implementation of the flat key=value config reader shared by defense and experiment configs
Author:
    adage developers
'''
import json_repair
from .misc import ConfigError


'''TRUE_STRINGS / FALSE_STRINGS'''
TRUE_STRINGS, FALSE_STRINGS = {'true', '1', 'yes', 'on'}, {'false', '0', 'no', 'off'}


'''readkeyvalues'''
def readkeyvalues(path: str):
    entries = {}
    with open(path, 'r', encoding='utf-8') as fp:
        for lineno, line in enumerate(fp, start=1):
            line = line.split('#', 1)[0].strip()
            if not line: continue
            if '=' not in line:
                raise ConfigError(f'{path}:{lineno}: expected "key=value", got "{line}"')
            key, value = line.split('=', 1)
            key, value = key.strip(), value.strip()
            if not key:
                raise ConfigError(f'{path}:{lineno}: empty key')
            if key in entries:
                raise ConfigError(f'{path}:{lineno}: duplicate key "{key}"')
            entries[key] = value
    return entries


'''loadoverrides'''
def loadoverrides(string):
    # tolerant JSON object from the command line, e.g. '{"defense.eta": 5}'
    if string is None or not str(string).strip(): return {}
    result = json_repair.loads(string) or {}
    if not isinstance(result, dict):
        raise ConfigError(f'overrides must be a JSON object, got {type(result).__name__}')
    return {str(key): tostring(value) for key, value in result.items()}


'''tostring'''
def tostring(value) -> str:
    if isinstance(value, str): return value
    if isinstance(value, bool): return 'true' if value else 'false'
    if isinstance(value, (list, tuple)): return ','.join(tostring(v) for v in value)
    return str(value)


'''coercevalue'''
def coercevalue(key: str, raw, kind):
    if not isinstance(raw, str): return raw
    try:
        if kind is bool:
            lowered = raw.strip().lower()
            if lowered in TRUE_STRINGS: return True
            if lowered in FALSE_STRINGS: return False
            raise ValueError(f'not a boolean: "{raw}"')
        if kind is int:
            return int(raw.strip())
        if kind is float:
            return float(raw.strip())
        if kind is str:
            return raw.strip()
        if isinstance(kind, tuple) and kind[0] == 'list':
            items = [item.strip() for item in raw.split(',') if item.strip()]
            return [coercevalue(key, item, kind[1]) for item in items]
    except ValueError as err:
        raise ConfigError(f'invalid value for "{key}": {err}')
    raise ConfigError(f'unsupported kind {kind} for "{key}"')


'''applyschema'''
def applyschema(entries: dict, schema: dict, source: str = '<config>'):
    unknown = sorted(set(entries.keys()) - set(schema.keys()))
    if unknown:
        raise ConfigError(f'{source}: unknown keys {unknown}')
    values = {}
    for key, (kind, default) in schema.items():
        values[key] = coercevalue(key, entries[key], kind) if key in entries else default
    return values
