# Payload loading and deterministic CSV / JSON writers.
# Floats are written with 17 significant digits (CSV) or repr (JSON), so the
# same job always produces the same bytes.

import csv
import json
import sys
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path
from typing import Optional

from ..core.config.cli_config import FLOAT_FORMAT, SCHEMA_VERSION
from ..core.errors import ConfigError


def load_payload(source: Optional[str]) -> dict:
    """JSON object from a file path, '-' (stdin) or an inline '{...}' string"""
    if not source:
        return {}
    try:
        if source == '-':
            text = sys.stdin.read()
        elif source.lstrip().startswith('{'):
            text = source
        else:
            text = Path(source).read_text(encoding='utf-8')
    except OSError as exc:
        raise ConfigError(f'cannot read input {source}: {exc}')
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f'input is not valid JSON: {exc}')
    if not isinstance(payload, dict):
        raise ConfigError('input must be a JSON object')
    return payload


def format_value(value) -> str:
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, (float, Fraction)):
        return format(float(value), FLOAT_FORMAT)
    return str(value)


def _jsonable(value):
    if isinstance(value, complex):
        return {'re': value.real, 'im': value.imag}
    if isinstance(value, Fraction):
        return str(value)
    if hasattr(value, 'to_dict'):
        return value.to_dict()
    if isinstance(value, (tuple, set)):
        return list(value)
    if hasattr(value, 'tolist'):
        return value.tolist()
    raise TypeError(f'{type(value).__name__} is not JSON serialisable')


def dumps(document: dict) -> str:
    return json.dumps(document, default=_jsonable, sort_keys=True, indent=2) + '\n'


@contextmanager
def open_output(path: Optional[str]):
    if not path or path == '-':
        yield sys.stdout
        return
    try:
        with open(path, 'w', encoding='utf-8', newline='') as handle:
            yield handle
    except OSError as exc:
        raise ConfigError(f'cannot write {path}: {exc}')


def write_csv(stream, columns: list, rows) -> None:
    stream.write(f'# bellshape schema {SCHEMA_VERSION}\n')
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(v) for v in row])


def write_json(stream, document: dict) -> None:
    stream.write(dumps({'schema_version': SCHEMA_VERSION, **document}))
