"""
Export rendering for command output: JSON documents carrying the schema
version, CSV tables through pandas, and plain-text tables.
"""
import json
import math
from typing import Iterable, List, Optional

import numpy as np
import pandas as pd

from topoising.constants import SCHEMA_VERSION
from topoising.exceptions import InvalidArgument

FORMAT_JSON = 'json'
FORMAT_CSV = 'csv'
FORMAT_TEXT = 'text'
FORMAT_JSONL = 'jsonl'
FORMATS = (FORMAT_JSON, FORMAT_CSV, FORMAT_TEXT, FORMAT_JSONL)


def _plain(value):
    """numpy scalars and arrays to builtins; NaN and infinities to None."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return None if math.isnan(value) or math.isinf(value) else value
    return value


def to_json(payload: dict) -> str:
    document = {'schema': SCHEMA_VERSION, **_plain(payload)}
    return json.dumps(document, sort_keys=True, indent=2)


def to_json_lines(records: Iterable[dict]) -> str:
    return '\n'.join(json.dumps({'schema': SCHEMA_VERSION, **_plain(r)}, sort_keys=True)
                     for r in records) + '\n'


def to_frame(rows: List[dict]) -> pd.DataFrame:
    df = pd.DataFrame([_plain(r) for r in rows])
    return df[sorted(df.columns)] if len(df.columns) else df


def to_csv(rows: List[dict]) -> str:
    return to_frame(rows).to_csv(index=False, lineterminator='\n')


def to_text(payload: dict, rows: Optional[List[dict]] = None) -> str:
    if rows:
        return to_frame(rows).to_string(index=False) + '\n'
    lines = []
    for key in sorted(payload):
        value = _plain(payload[key])
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        lines.append(f'{key}: {value}')
    return '\n'.join(lines) + '\n'


def render(payload: dict, fmt: str = FORMAT_JSON, rows: Optional[List[dict]] = None) -> str:
    """
    Render one command result.

    Args:
        payload: the full result document
        fmt: json, csv, text or jsonl
        rows: the tabular view used for csv, text and jsonl; csv and jsonl need it
    """
    if fmt == FORMAT_JSON:
        return to_json(payload) + '\n'
    if fmt == FORMAT_CSV:
        if rows is None:
            raise InvalidArgument("this command has no tabular output; use --format json or text")
        return to_csv(rows)
    if fmt == FORMAT_TEXT:
        return to_text(payload, rows)
    if fmt == FORMAT_JSONL:
        if rows is None:
            raise InvalidArgument("this command has no tabular output; use --format json or text")
        return to_json_lines(rows)
    raise InvalidArgument(f"unknown output format: {fmt}")
