"""``ifn`` command-line front end.

    ifn <check> --config <path> [--seed N] [--out <path>] [--alpha X] [--t-grid a,b,c]
    ifn list

Exit status 0 means the verdict is pass, 1 means fail, 2 means a usage,
validation or I/O error (no verdict).
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

import numpy as np

from . import battery
from .config import CHECKS, RunConfig, load_config
from .derivatives import (
    estimate_scalar_derivative,
    verify_frechet,
    verify_gateaux,
    verify_scalar_derivative,
)
from .errors import IFNError
from .limits import check_continuity, check_convergence
from .report import finalize, to_json, write_report
from .space import check_ifn_axioms, standard_space
from .theorems import run_all, run_theorem
from .tnorms import check_tconorm_axioms, check_tnorm_axioms, tconorm_by_name, tnorm_by_name

__all__ = ["main", "run", "list_registry", "build_parser", "EXIT_PASS", "EXIT_FAIL", "EXIT_USAGE"]

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def list_registry():
    return battery.registry()


def _space(cfg: RunConfig, dim: int):
    kind = cfg.norm
    weights = cfg.weights if kind == "weighted" else None
    if weights is not None and len(weights) != dim:
        raise cfg.error("weights", f"{len(weights)} weights given for a space of dimension {dim}")
    return standard_space(dim, kind, weights, tnorm_by_name(cfg.tnorm), tconorm_by_name(cfg.tconorm))


def _axiom_doc(check_id, inputs, passed, items, params, notes):
    witnesses = [dict(axiom=r["axiom"], **(r["witness"] or {})) for r in items if not r["passed"]]
    return {"check_id": check_id, "inputs": inputs, "verdict": "pass" if passed else "fail",
            "profiles": items, "witnesses": witnesses, "notes": notes,
            "seed": params.seed, "params": params.to_dict()}


def _operator(cfg: RunConfig):
    dim = len(cfg.x0)
    return battery.operator(cfg.f, dim, cfg.A)


def _matrix(value, rows: int, cols: int, cfg: RunConfig):
    M = np.atleast_2d(np.asarray(value, dtype=float))
    if M.shape == (1, rows * cols) and rows != 1:
        M = M.reshape(rows, cols)
    if M.shape != (rows, cols):
        raise cfg.error("candidate", f"expected a {rows}x{cols} matrix, got shape {M.shape}")
    return M


def execute(cfg: RunConfig) -> dict:
    """Run the selected check and return the (un-stamped) report dict."""
    p = cfg.params
    c = cfg.check
    if c == "axioms":
        dim = cfg.dim or (1 if cfg.norm == "abs" else len(cfg.weights or []) or 2)
        rep = check_ifn_axioms(_space(cfg, dim), p)
        return _axiom_doc(c, {"space": rep.space, "samples": rep.samples_used}, rep.passed,
                          [e.to_dict() for e in rep.entries], p,
                          ["heuristic entries are sampled limit checks, not proofs"])
    if c == "tnorm":
        if cfg.op in ("minimum", "product", "lukasiewicz"):
            rep = check_tnorm_axioms(tnorm_by_name(cfg.op), p)
        else:
            rep = check_tconorm_axioms(tconorm_by_name(cfg.op), p)
        notes = ["idempotency is reported but does not affect the verdict",
                 "continuity is a sampled modulus heuristic"]
        doc = _axiom_doc(c, {"operator": rep.operator, "samples": rep.samples_used}, rep.passed,
                         [r.to_dict() for r in rep.results], p, notes)
        doc["witnesses"] = [w for w in doc["witnesses"] if w["axiom"] != "idempotent"]
        doc["idempotent"] = rep.idempotent
        return doc
    if c == "convergence":
        fn, classical, _ = battery.SEQUENCES[cfg.sequence]
        limit = cfg.limit if cfg.limit is not None else [classical]
        dim = len(limit)
        seq = (lambda n: [fn(n)] * dim) if dim > 1 else fn
        return check_convergence(_space(cfg, dim), seq, limit, p).to_dict()
    if c == "continuity":
        entry = {e.name: e for e in battery.registry()}[cfg.f]
        if entry.kind == "scalar":
            f = battery.scalar(cfg.f)
            U = V = _space(cfg, 1)
            rep = check_continuity(lambda x: f(x[0]), cfg.x0, (U, V), p, cfg.directions)
        else:
            T = _operator(cfg)
            rep = check_continuity(T, cfg.x0, (_space(cfg, T.domain_dim), _space(cfg, T.codomain_dim)),
                                   p, cfg.directions)
        return rep.to_dict()
    if c == "derivative":
        f = battery.scalar(cfg.f)
        x0 = float(cfg.x0[0])
        U = _space(cfg, 1)
        if cfg.candidate is None:
            cand, rep = estimate_scalar_derivative(f, x0, p)
            doc = rep.to_dict()
            doc["notes"].append(f"candidate {float(cand)!r} estimated by Richardson extrapolation")
            return doc
        cand = float(np.ravel(cfg.candidate)[0])
        return verify_scalar_derivative(f, x0, cand, (U, U), p).to_dict()
    if c in ("gateaux", "frechet"):
        T = _operator(cfg)
        UV = (_space(cfg, T.domain_dim), _space(cfg, T.codomain_dim))
        x0 = np.asarray(cfg.x0, dtype=float)
        notes = []
        if cfg.candidate is None:
            if T.jacobian is None:
                raise cfg.error("candidate", f"required: {T.name} has no analytic Jacobian")
            G = np.atleast_2d(T.jacobian(x0))
            notes.append("candidate taken from the analytic Jacobian oracle")
        else:
            G = _matrix(cfg.candidate, T.codomain_dim, T.domain_dim, cfg)
        if c == "gateaux":
            rep = verify_gateaux(T, x0, G, UV, p, cfg.directions)
        else:
            rep = verify_frechet(T, x0, G, UV, p, cfg.directions, cfg.points)
        doc = rep.to_dict()
        doc["notes"].extend(notes)
        return doc
    if c == "theorems":
        t, s = tnorm_by_name(cfg.tnorm), tconorm_by_name(cfg.tconorm)
        rep = run_all(p, t, s) if cfg.theorem == "all" else run_theorem(cfg.theorem, p, t, s)
        return rep.to_dict()
    raise cfg.error("check", f"unknown check {c!r}")


def run(cfg: RunConfig, out: Optional[str] = None):
    """Execute ``cfg``; return ``(exit_status, report_dict, json_text)``.

    The report is written atomically to ``out`` (or ``cfg.out``) when given.
    """
    doc = execute(cfg)
    doc["check_id"] = cfg.check
    doc = finalize(doc, cfg.to_dict())
    target = out or cfg.out
    text = write_report(target, doc) if target else to_json(doc)
    return (EXIT_PASS if doc["verdict"] == "pass" else EXIT_FAIL), doc, text


def _t_grid(text: str):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated reals, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ifn", description="Intuitionistic fuzzy norm and derivative checks.")
    sub = ap.add_subparsers(dest="command", required=True)
    ls = sub.add_parser("list", help="print the function registry")
    ls.add_argument("--json", action="store_true", help="print as JSON")
    for check in CHECKS:
        sp = sub.add_parser(check, help=f"run the {check} check")
        sp.add_argument("--config", required=True, help="config file (key = value) or a JSON report to re-run")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--out", default=None, help="report path (default: print to stdout)")
        sp.add_argument("--alpha", type=float, default=None)
        sp.add_argument("--t-grid", type=_t_grid, default=None, dest="t_grid")
    return ap


def _print_registry(as_json: bool):
    entries = list_registry()
    if as_json:
        print(to_json({"registry": [e.to_dict() for e in entries]}), end="")
        return
    for e in entries:
        dims = "-" if e.domain_dim is None else f"{e.domain_dim}->{e.codomain_dim}"
        print(f"{e.name:16s} {e.kind:9s} {dims:6s} oracle={'yes' if e.has_classical_oracle else 'no':3s}  "
              f"{e.description}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list":
        _print_registry(args.json)
        return EXIT_PASS
    overrides = {"check": args.command, "seed": args.seed, "alpha": args.alpha, "t_grid": args.t_grid}
    try:
        cfg = load_config(args.config, overrides)
        status, doc, text = run(cfg, args.out)
    except (IFNError, OSError) as exc:
        print(f"ifn: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out or cfg.out:
        print(f"{doc['check_id']}: {doc['verdict']} -> {args.out or cfg.out}")
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
