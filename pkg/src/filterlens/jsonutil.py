"""Canonical JSON serialization.

Every payload the engine emits (API responses, CLI --json output, persisted
logs) goes through `canonical_dumps` so that byte-for-byte equality between
surfaces is a property of the data, not of the code path: keys sorted,
compact separators, UTF-8, floats rendered via Python's shortest repr,
NaN/Infinity rejected.
"""
from __future__ import annotations

import dataclasses
import json
from typing import Any

import numpy as np


def to_jsonable(obj: Any) -> Any:
    """Deep-convert to plain Python types that json.dumps handles natively.

    numpy scalars and arrays are converted; dataclasses with a
    ``to_jsonable`` method use it, other dataclasses are converted
    field-wise.  Anything unrecognized raises TypeError rather than
    serializing by accident.
    """
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        if not np.isfinite(obj):
            raise TypeError(f"non-finite float {obj!r} is not serializable")
        return obj
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return to_jsonable(float(obj))
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            if isinstance(k, (np.integer, int)) and not isinstance(k, bool):
                k = str(int(k))
            elif not isinstance(k, str):
                raise TypeError(f"non-string key {k!r} is not serializable")
            out[k] = to_jsonable(v)
        return out
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(v) for v in items]
    if hasattr(obj, "to_jsonable"):
        return to_jsonable(obj.to_jsonable())
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    raise TypeError(f"object of type {type(obj).__name__} is not serializable")


def canonical_dumps(obj: Any) -> str:
    return json.dumps(
        to_jsonable(obj),
        sort_keys=True,
        separators=(",", ":"),
        ensure_ascii=False,
        allow_nan=False,
    )


def canonical_bytes(obj: Any) -> bytes:
    return canonical_dumps(obj).encode("utf-8")
