"""JSON report serialization: 17 significant digits, fixed schema, atomic writes."""

from __future__ import annotations

import json
import math
import os
import tempfile

import numpy as np

__all__ = ["SCHEMA_VERSION", "REPORT_SCHEMA", "to_json", "write_report", "read_report", "finalize"]

SCHEMA_VERSION = "ifn-report/1"

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": SCHEMA_VERSION,
    "type": "object",
    "required": ["schema", "check_id", "params", "seed", "verdict", "profiles", "witnesses", "notes"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "check_id": {"type": "string",
                     "enum": ["axioms", "tnorm", "convergence", "continuity", "derivative",
                              "gateaux", "frechet", "theorems"]},
        "params": {
            "type": "object",
            "required": ["schedule", "t_grid", "alpha", "tail_window", "seed"],
            "properties": {
                "schedule": {"type": "object", "required": ["h0", "rho", "steps"]},
                "t_grid": {"type": "array", "minItems": 1, "items": {"type": "number", "exclusiveMinimum": 0}},
                "alpha": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
                "tail_window": {"type": "integer", "minimum": 1},
                "seed": {"type": "integer", "minimum": 0},
            },
        },
        "seed": {"type": "integer", "minimum": 0},
        "verdict": {"enum": ["pass", "fail"]},
        "inputs": {"type": "object"},
        "profiles": {"type": "array", "items": {"type": "object"}},
        "witnesses": {"type": "array", "items": {"type": "object"}},
        "notes": {"type": "array", "items": {"type": "string"}},
        "config": {"type": "object"},
    },
}


def _plain(obj):
    """Convert numpy scalars/arrays and tuples to plain JSON-able Python objects."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def _emit(obj, indent: int, level: int, out: list):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, v) in enumerate(obj.items()):
            out.append(f"{pad}{json.dumps(k)}: ")
            _emit(v, indent, level + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(end + "}")
    elif isinstance(obj, list):
        if not obj:
            out.append("[]")
        elif all(not isinstance(v, (dict, list)) for v in obj):
            out.append("[" + ", ".join(_scalar(v) for v in obj) + "]")
        else:
            out.append("[\n")
            for i, v in enumerate(obj):
                out.append(pad)
                _emit(v, indent, level + 1, out)
                out.append(",\n" if i < len(obj) - 1 else "\n")
            out.append(end + "]")
    else:
        out.append(_scalar(obj))


def _scalar(v) -> str:
    if isinstance(v, float):
        if not math.isfinite(v):
            return "null"
        s = "%.17g" % v
        # keep floats recognisable as floats after a round trip
        return s if ("." in s or "e" in s) else s + ".0"
    return json.dumps(v)


def to_json(doc: dict, indent: int = 1) -> str:
    out = []
    _emit(_plain(doc), indent, 0, out)
    return "".join(out) + "\n"


def finalize(doc: dict, config: dict | None = None) -> dict:
    """Stamp the schema version (and the resolved config echo) onto a report dict."""
    full = {"schema": SCHEMA_VERSION}
    full.update(doc)
    if config is not None:
        full["config"] = config
    return full


def write_report(path: str, doc: dict) -> str:
    """Serialize ``doc`` to ``path`` atomically (temp file in the same directory + rename)."""
    text = to_json(doc)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".ifn-", suffix=".json", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return text


def read_report(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
