"""
Miscellaneous helpers: tolerant comparisons, report records, JSON encoding, seeding.
"""

from __future__ import annotations

import hashlib
import json
import math
import zlib

import numpy as np


def leq(a, b, rel, abs_tol=0.0) -> bool:
    """
    a <= b up to a relative tolerance on the larger magnitude, plus an absolute slack.
    """
    scale = max(abs(a), abs(b))
    return bool(a <= b + rel * scale + abs_tol)


def close(a, b, rel, abs_tol=0.0) -> bool:
    scale = max(abs(a), abs(b))
    return bool(abs(a - b) <= rel * scale + abs_tol)


def make_record(check, inputs=None, values=None, flags=None, report_only=None, notes=None) -> dict:
    """
    Uniform report record: asserted flags live under "flags", measurements never asserted
    under "report_only".
    """

    record = {
        "check": check,
        "inputs": inputs or {},
        "values": values or {},
        "flags": {k: bool(v) for k, v in (flags or {}).items()},
        "report_only": {k: bool(v) for k, v in (report_only or {}).items()},
    }
    if notes:
        record["notes"] = list(notes)
    return record


def jsonable(value):
    """
    Convert numpy scalars/arrays and non-finite floats into JSON-safe values.
    """

    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    return value


def dumps(value) -> str:
    """
    Deterministic JSON text (sorted keys, fixed indent, trailing newline).
    """
    return json.dumps(jsonable(value), indent=2, sort_keys=True) + "\n"


def digest(value) -> str:
    """
    sha256 of the canonical JSON encoding.
    """
    text = json.dumps(jsonable(value), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def check_rng(root_seed: int, check: str, trial: int) -> np.random.Generator:
    """
    Counter-based stream per (check, trial): adding a check never shifts another check's draws.
    """
    seq = np.random.SeedSequence(int(root_seed), spawn_key=(zlib.crc32(check.encode("utf-8")), int(trial)))
    return np.random.default_rng(seq)
