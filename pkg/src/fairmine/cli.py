"""Batch CLI: run a full audit headlessly and write report files.

    fairmine audit --data d.csv --schema schema.json --pred rf=rf.csv \
        --pred xgb=xgb.csv --tau 0.25 --compare rf xgb --out results/

Exit codes: 0 success, 2 validation error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .causal import trace_as_json
from .data import apply_discretization, attach_predictions, discretize_all, load_dataset
from .discrimination import AnalysisConfig
from .errors import AuditError
from .exporters import (
    comparison_as_json,
    dumps,
    result_as_json,
    rules_as_csv,
    scatter_as_csv,
)
from .ripples import geometry_as_json
from .rules import extract_classification_rules
from .session import AuditEngine


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fairmine")
    sub = p.add_subparsers(dest="command", required=True)

    audit = sub.add_parser("audit", help="run a headless audit")
    audit.add_argument("--data", required=True, help="dataset CSV")
    audit.add_argument("--schema", required=True, help="schema sidecar JSON")
    audit.add_argument("--pred", action="append", default=[], metavar="ID=PATH",
                       help="prediction CSV for one model (repeatable)")
    audit.add_argument("--tau", type=float, default=0.25)
    audit.add_argument("--min-support", type=int, default=None)
    audit.add_argument("--min-group-support", type=int, default=5)
    audit.add_argument("--max-length", type=int, default=6)
    audit.add_argument("--resolving", nargs="*", default=None,
                       help="override the suggested resolving attributes")
    audit.add_argument("--proxy", action="append", default=[])
    audit.add_argument("--compare", nargs=2, metavar=("M1", "M2"), default=None)
    audit.add_argument("--allow-empty-resolving", action="store_true")
    audit.add_argument("--dump-rules", action="store_true",
                       help="also write the mined classification rules per model")
    audit.add_argument("--out", required=True, help="output directory")

    serve = sub.add_parser("serve", help="run the HTTP session service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8701)
    return p


def _read_prediction_column(path: str) -> list[str]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise AuditError(f"empty prediction file {path}")
    # A non-numeric first cell is treated as a header.
    start = 0
    head = rows[0][0].strip()
    if head not in ("0", "1"):
        try:
            float(head)
        except ValueError:
            start = 1
    return [r[0].strip() for r in rows[start:] if r]


def run_audit(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    with open(args.schema, encoding="utf-8") as fh:
        schema = json.load(fh)
    with open(args.data, "rb") as fh:
        dataset = load_dataset(fh, schema)

    cuts = discretize_all(dataset)
    ddata = apply_discretization(dataset, cuts)
    if not args.pred:
        raise AuditError("at least one --pred id=path is required")
    for spec in args.pred:
        if "=" not in spec:
            raise AuditError(f"--pred expects ID=PATH, got {spec!r}")
        model_id, path = spec.split("=", 1)
        ddata = attach_predictions(ddata, model_id, _read_prediction_column(path))

    config = AnalysisConfig(
        protected=dataset.protected_spec.name,
        protected_group_value=dataset.protected_spec.positive_value,
        tau=args.tau,
        proxies=frozenset(args.proxy),
        min_group_support=args.min_group_support)
    engine = AuditEngine(
        ddata, config,
        min_support=args.min_support, max_length=args.max_length,
        allow_empty_resolving=args.allow_empty_resolving,
        resolving_override=(frozenset(args.resolving)
                            if args.resolving is not None else None))

    summary_lines = []
    if engine.suggestion is not None:
        summary_lines.append(f"suggested resolving: {engine.suggestion.ordered}")
        (out_dir / "parents_trace.json").write_text(
            dumps({"target": engine.parent_set.target,
                   "parents": sorted(engine.parent_set.parents),
                   "trace": trace_as_json(engine.parent_set)}))
    summary_lines.append(f"resolving in effect: {sorted(engine.config.resolving)}")
    summary_lines.append(f"tau: {engine.config.tau}")

    for model_id in engine.models:
        result = engine.result(model_id)
        (out_dir / f"result_{model_id}.json").write_text(dumps(result_as_json(result)))
        (out_dir / f"scatter_{model_id}.csv").write_text(scatter_as_csv(result.itemsets))
        for idx in range(len(result.collections)):
            geo = engine.geometry(model_id, idx)
            (out_dir / f"geometry_{model_id}_{idx}.json").write_text(
                dumps(geometry_as_json(geo)))
        if args.dump_rules:
            rules = extract_classification_rules(
                engine.frequent_for(model_id), engine.ddata, model_id)
            (out_dir / f"rules_{model_id}.csv").write_text(rules_as_csv(rules))
        summary_lines.append(
            f"{model_id}: {len(result.itemsets)} discriminatory itemsets "
            f"in {len(result.collections)} collections")

    if args.compare:
        m1, m2 = args.compare
        cmp = engine.compare(m1, m2)
        (out_dir / f"compare_{m1}_vs_{m2}.json").write_text(dumps(comparison_as_json(cmp)))
        summary_lines.append(
            f"compare {m1} vs {m2}: {len(cmp.shared)} shared, "
            f"{len(cmp.unique_a)} only in {m1}, {len(cmp.unique_b)} only in {m2}")

    summary = "\n".join(summary_lines) + "\n"
    (out_dir / "summary.txt").write_text(summary)
    sys.stdout.write(summary)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .service import app
        uvicorn.run(app, host=args.host, port=args.port)
        return 0
    try:
        return run_audit(args)
    except (AuditError, FileNotFoundError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
