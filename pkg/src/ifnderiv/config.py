"""Run configuration: a flat ``key = value`` document.

Example::

    # Gateaux check of poly2map at (1, 2)
    check = gateaux
    f = poly2map
    x0 = [1, 2]
    candidate = [[2, 0], [2, 1]]
    alpha = 1e-3

Values are numbers, bare words, vectors ``[1, 2]`` or matrices ``[[1, 2], [3, 4]]``.
"""

from __future__ import annotations

import dataclasses
import difflib
import json
import math
from dataclasses import dataclass, field
from typing import Optional

from . import battery
from .errors import ConfigError, ParameterError
from .params import CheckParams, LimitSchedule
from .theorems import THEOREM_IDS

__all__ = ["CHECKS", "RunConfig", "parse_config", "load_config", "config_from_report", "KEYS"]

CHECKS = ("axioms", "tnorm", "convergence", "continuity", "derivative", "gateaux", "frechet", "theorems")
NORMS = ("abs", "euclidean", "max", "weighted")
TNORM_NAMES = ("minimum", "product", "lukasiewicz")
TCONORM_NAMES = ("maximum", "probabilistic_sum", "bounded_sum")

_SCHEDULE_KEYS = ("h0", "rho", "steps")
_PARAM_TYPES = {
    "alpha": "real", "h0": "real", "rho": "real", "steps": "int", "tail_window": "int",
    "sample_count": "int", "seed": "int", "algebra_tol": "real", "custom_algebra_tol": "real",
    "limit_tol": "real", "strict_tol": "real", "continuity_step": "real",
    "continuity_bound": "real", "T_max": "real", "tail_slack": "real", "direction_count": "int",
    "t_grid": "vector", "axiom_t_grid": "vector",
}
_INPUT_TYPES = {
    "check": "word", "dim": "int", "norm": "word", "weights": "vector",
    "tnorm": "word", "tconorm": "word", "f": "word", "op": "word", "sequence": "word",
    "limit": "vector", "x0": "vector", "candidate": "matrix", "A": "matrix",
    "directions": "matrix", "points": "matrix", "theorem": "word", "out": "path",
}
KEYS = {**_INPUT_TYPES, **_PARAM_TYPES}


@dataclass
class RunConfig:
    check: str = "axioms"
    dim: Optional[int] = None
    norm: str = "euclidean"
    weights: Optional[list] = None
    tnorm: str = "minimum"
    tconorm: str = "maximum"
    params: CheckParams = field(default_factory=CheckParams)
    f: Optional[str] = None
    op: Optional[str] = None
    sequence: Optional[str] = None
    limit: Optional[list] = None
    x0: Optional[list] = None
    candidate: Optional[list] = None
    A: Optional[list] = None
    directions: Optional[list] = None
    points: Optional[list] = None
    theorem: str = "all"
    out: Optional[str] = None
    lines: dict = field(default_factory=dict, compare=False, repr=False)

    def to_dict(self) -> dict:
        """Input echo (everything except params and the output path)."""
        d = {}
        for f in dataclasses.fields(self):
            if f.name in ("params", "out", "lines"):
                continue
            value = getattr(self, f.name)
            if value is not None:
                d[f.name] = value
        return d

    def error(self, key: str, message: str) -> ConfigError:
        return ConfigError(f"{key}: {message}", field=key, line=self.lines.get(key))


# ---------------------------------------------------------------------------
# value parsing

def _number(text: str, key: str, line: int, kind: str):
    try:
        v = json.loads(text)
    except ValueError:
        try:
            v = float(text)
        except ValueError:
            raise ConfigError(f"{key}: expected {'an integer' if kind == 'int' else 'a real number'}, "
                              f"got {text!r}", field=key, line=line) from None
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{key}: expected a number, got {text!r}", field=key, line=line)
    if kind == "int":
        if isinstance(v, float) and not v.is_integer():
            raise ConfigError(f"{key}: expected an integer, got {text!r}", field=key, line=line)
        return int(v)
    if not math.isfinite(v):
        raise ConfigError(f"{key}: expected a finite real, got {text!r}", field=key, line=line)
    return float(v)


def _array(text: str, key: str, line: int, kind: str):
    if not text.startswith("["):
        if kind == "vector" and "," in text:
            text = f"[{text}]"
        else:
            return _number(text, key, line, "real")
    try:
        v = json.loads(text)
    except ValueError:
        raise ConfigError(f"{key}: malformed {kind} literal {text!r}", field=key, line=line) from None

    def is_num(x):
        return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)

    if isinstance(v, list) and v and all(is_num(x) for x in v):
        return [float(x) for x in v]
    if (kind == "matrix" and isinstance(v, list) and v
            and all(isinstance(r, list) and r and all(is_num(x) for x in r) for r in v)):
        if len({len(r) for r in v}) != 1:
            raise ConfigError(f"{key}: matrix rows have different lengths", field=key, line=line)
        return [[float(x) for x in r] for r in v]
    expected = "a non-empty list of numbers" if kind == "vector" else "a number, vector or matrix"
    raise ConfigError(f"{key}: expected {expected}, got {text!r}", field=key, line=line)


def _value(key: str, text: str, line: int):
    kind = KEYS[key]
    if kind in ("int", "real"):
        return _number(text, key, line, kind)
    if kind == "vector":
        v = _array(text, key, line, kind)
        return v if isinstance(v, list) else [v]
    if kind == "matrix":
        return _array(text, key, line, kind)
    if kind == "word":
        if not text or any(c.isspace() for c in text):
            raise ConfigError(f"{key}: expected a single name, got {text!r}", field=key, line=line)
        return text
    return text


def _nearest(name: str, choices) -> str:
    close = difflib.get_close_matches(name, list(choices), n=3, cutoff=0.5)
    return ", ".join(close) if close else ", ".join(sorted(choices))


# ---------------------------------------------------------------------------

def _build_params(raw: dict, lines: dict) -> CheckParams:
    kw = {k: v for k, v in raw.items() if k in _PARAM_TYPES and k not in _SCHEDULE_KEYS}
    sched = {k: raw[k] for k in _SCHEDULE_KEYS if k in raw}
    try:
        schedule = LimitSchedule(**sched)
    except ParameterError as exc:
        key = next((k for k in _SCHEDULE_KEYS if k in str(exc) and k in sched), next(iter(sched)))
        raise ConfigError(f"{key}: {exc}", field=key, line=lines.get(key)) from None
    try:
        return CheckParams(schedule=schedule, **kw)
    except ParameterError as exc:
        msg = str(exc)
        key = next((k for k in sorted(kw, key=len, reverse=True) if msg.startswith(k)
                    or f" {k} " in f" {msg} "), None)
        raise ConfigError(f"{key}: {msg}" if key else msg, field=key,
                          line=lines.get(key) if key else None) from None


def _validate(cfg: RunConfig) -> RunConfig:
    if cfg.check not in CHECKS:
        raise cfg.error("check", f"unknown check {cfg.check!r}; choose from {', '.join(CHECKS)}")
    if cfg.norm not in NORMS:
        raise cfg.error("norm", f"unknown norm {cfg.norm!r}; choose from {', '.join(NORMS)}")
    if cfg.norm == "weighted" and cfg.weights is None:
        raise cfg.error("norm", "weighted norm requires weights")
    if cfg.weights is not None and any(w <= 0 for w in cfg.weights):
        raise cfg.error("weights", "weights must be positive")
    if cfg.tnorm not in TNORM_NAMES:
        raise cfg.error("tnorm", f"unknown t-norm {cfg.tnorm!r}; nearest: {_nearest(cfg.tnorm, TNORM_NAMES)}")
    if cfg.tconorm not in TCONORM_NAMES:
        raise cfg.error("tconorm", f"unknown t-conorm {cfg.tconorm!r}; "
                                   f"nearest: {_nearest(cfg.tconorm, TCONORM_NAMES)}")
    if cfg.dim is not None and not 1 <= cfg.dim <= 8:
        raise cfg.error("dim", "dim must lie in 1..8")

    entries = {e.name: e for e in battery.registry()}

    def need(key):
        if getattr(cfg, key) is None:
            raise ConfigError(f"{key}: required for check={cfg.check}", field=key,
                              line=cfg.lines.get("check"))

    def function(key, kinds):
        need(key)
        name = getattr(cfg, key)
        pool = [n for n, e in entries.items() if e.kind in kinds]
        if name not in pool:
            raise cfg.error(key, f"unknown function {name!r}; nearest registry names: {_nearest(name, pool)}")
        return entries[name]

    c = cfg.check
    if c == "tnorm":
        need("op")
        if cfg.op not in TNORM_NAMES + TCONORM_NAMES:
            raise cfg.error("op", f"unknown operator {cfg.op!r}; nearest: "
                                  f"{_nearest(cfg.op, TNORM_NAMES + TCONORM_NAMES)}")
    elif c == "convergence":
        function("sequence", ("sequence",))
        if cfg.limit is None and battery.SEQUENCES[cfg.sequence][1] is None:
            raise ConfigError(f"limit: required: sequence {cfg.sequence!r} has no classical limit",
                              field="limit", line=cfg.lines.get("sequence"))
    elif c == "derivative":
        function("f", ("scalar",))
        need("x0")
        if isinstance(cfg.x0, list) and len(cfg.x0) != 1:
            raise cfg.error("x0", "derivative check needs a scalar x0")
        if isinstance(cfg.candidate, list) and len(_flat(cfg.candidate)) != 1:
            raise cfg.error("candidate", "derivative check needs a scalar candidate")
    elif c in ("continuity", "gateaux", "frechet"):
        kinds = ("scalar", "operator") if c == "continuity" else ("operator",)
        e = function("f", kinds)
        need("x0")
        if e.name == "linear":
            need("A")
        if e.kind == "operator" and e.domain_dim is not None and len(_flat(cfg.x0)) != e.domain_dim:
            raise cfg.error("x0", f"{e.name} is defined on R^{e.domain_dim}, x0 has "
                                  f"{len(_flat(cfg.x0))} entries")
        if e.kind == "scalar" and len(_flat(cfg.x0)) != 1:
            raise cfg.error("x0", f"{e.name} is a scalar function; x0 must be a single number")
    elif c == "theorems":
        if cfg.theorem != "all" and cfg.theorem not in THEOREM_IDS:
            raise cfg.error("theorem", f"unknown theorem {cfg.theorem!r}; nearest: "
                                       f"{_nearest(cfg.theorem, THEOREM_IDS)}")
    return cfg


def _flat(v):
    if isinstance(v, list):
        out = []
        for x in v:
            out.extend(_flat(x))
        return out
    return [v]


def _from_raw(raw: dict, lines: dict) -> RunConfig:
    inputs = {k: v for k, v in raw.items() if k in _INPUT_TYPES}
    cfg = RunConfig(params=_build_params(raw, lines), lines=lines, **inputs)
    return _validate(cfg)


def parse_config(text: str, overrides: Optional[dict] = None) -> RunConfig:
    """Parse a configuration document; ``overrides`` (e.g. CLI flags) win over its keys."""
    raw, lines = {}, {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"expected 'key = value', got {body!r}", line=lineno)
        key, value = (s.strip() for s in body.split("=", 1))
        if key not in KEYS:
            raise ConfigError(f"{key}: unknown key; nearest: {_nearest(key, KEYS)}", field=key, line=lineno)
        if key in raw:
            raise ConfigError(f"{key}: duplicate key (first set on line {lines[key]})", field=key, line=lineno)
        if not value:
            raise ConfigError(f"{key}: missing value", field=key, line=lineno)
        raw[key] = _value(key, value, lineno)
        lines[key] = lineno
    for key, value in (overrides or {}).items():
        if value is not None:
            raw[key] = value
            lines.pop(key, None)
    return _from_raw(raw, lines)


def load_config(path: str, overrides: Optional[dict] = None) -> RunConfig:
    """Read a config file, or re-create the config echoed in a JSON report."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".json"):
        try:
            doc = json.loads(text)
        except ValueError as exc:
            raise ConfigError(f"{path}: not a valid JSON report ({exc})") from None
        return config_from_report(doc, overrides)
    return parse_config(text, overrides)


def config_from_report(doc: dict, overrides: Optional[dict] = None) -> RunConfig:
    """Rebuild the run configuration echoed in a report (params, seed and inputs)."""
    if "config" not in doc or "params" not in doc:
        raise ConfigError("report has no config/params echo")
    raw = dict(doc["config"])
    params = dict(doc["params"])
    sched = params.pop("schedule", {})
    raw.update({k: v for k, v in params.items() if k in _PARAM_TYPES})
    raw.update({k: v for k, v in sched.items() if k in _SCHEDULE_KEYS})
    unknown = [k for k in raw if k not in KEYS]
    if unknown:
        raise ConfigError(f"{unknown[0]}: unknown key in report echo", field=unknown[0])
    for key, value in (overrides or {}).items():
        if value is not None:
            raw[key] = value
    return _from_raw(raw, {})
