"""JSON/CSV serialization of analysis artifacts.

These dict shapes are the wire format of the HTTP service and the file
format of the CLI, so the two stay byte-identical by construction.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Sequence

from .discrimination import (
    AnalysisConfig,
    DiscriminatoryItemset,
    ItemsetCollection,
    ModelComparison,
)
from .mitigation import MitigationPlan, MitigationReport
from .rules import ClassificationRule
from .session import AnalysisResult


def config_as_json(config: AnalysisConfig) -> dict:
    return {
        "protected": config.protected,
        "protected_group": config.protected_group_value,
        "beneficial_class": config.beneficial_class,
        "tau": config.tau,
        "resolving": sorted(config.resolving),
        "proxies": sorted(config.proxies),
        "min_group_support": config.min_group_support,
        "model_id": config.model_id,
    }


def itemset_as_json(it: DiscriminatoryItemset) -> dict:
    return {
        "canonical_key": it.canonical_key,
        "literals": {name: label for (name, _), label
                     in zip(it.condition.literals, it.condition.labels)},
        "rd": it.rd,
        "p_protected": it.p_protected,
        "p_nonprotected": it.p_nonprotected,
        "sizes": {"protected": len(it.members_protected),
                  "nonprotected": len(it.members_nonprotected)},
        "context_attrs": sorted(it.context_attrs),
    }


def collection_as_json(coll: ItemsetCollection) -> dict:
    return {
        "resolving_key": coll.resolving_key,
        "total_items": coll.total_items,
        "itemsets": [itemset_as_json(it) for it in coll.itemsets],
        "hierarchy": [list(edge) for edge in coll.hierarchy],
        "row_order": list(coll.row_order),
    }


def result_as_json(result: AnalysisResult) -> dict:
    return {
        "config": config_as_json(result.config),
        "collections": [collection_as_json(c) for c in result.collections],
        "scatter": [{"canonical_key": it.canonical_key, "rd": it.rd, "size": it.size}
                    for it in result.itemsets],
    }


def scatter_as_csv(itemsets: Sequence[DiscriminatoryItemset]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["canonical_key", "rd", "size"])
    for it in itemsets:
        writer.writerow([it.canonical_key, repr(it.rd), it.size])
    return buf.getvalue()


def rules_as_csv(rules: Sequence[ClassificationRule]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["canonical_key", "class", "support_joint",
                     "support_antecedent", "confidence"])
    for r in rules:
        writer.writerow([r.antecedent.canonical_key, r.consequent_class,
                         r.support_joint, r.support_antecedent, repr(r.confidence)])
    return buf.getvalue()


def comparison_as_json(cmp: ModelComparison) -> dict:
    return {
        "model_a": cmp.model_a,
        "model_b": cmp.model_b,
        "aligned_collections": [
            {"resolving_key": key, "index_a": ia, "index_b": ib}
            for key, ia, ib in cmp.aligned_collections],
        "shared": [
            {"canonical_key": s.canonical_key, "rd_a": s.rd_a, "rd_b": s.rd_b,
             "rd_delta": s.rd_delta,
             "beneficial_a": {"protected": s.beneficial_a[0],
                              "nonprotected": s.beneficial_a[1]},
             "beneficial_b": {"protected": s.beneficial_b[0],
                              "nonprotected": s.beneficial_b[1]}}
            for s in cmp.shared],
        "unique_a": cmp.unique_a,
        "unique_b": cmp.unique_b,
    }


def plan_as_json(plan: MitigationPlan) -> dict:
    return {
        "selected": list(plan.selected),
        "tau_target": plan.tau_target,
        "flips": [{"item_id": i, "old": old, "new": new} for i, old, new in plan.flips],
        "flip_count": plan.flip_count,
    }


def report_as_json(report: MitigationReport) -> dict:
    return {
        "itemsets": [{"canonical_key": o.canonical_key, "rd_before": o.rd_before,
                      "rd_after": o.rd_after} for o in report.itemsets],
        "accuracy_before": report.accuracy_before,
        "accuracy_after": report.accuracy_after,
        "reverse_discrimination_count": report.reverse_discrimination_count,
        "flip_count": report.flip_count,
    }


def predictions_as_csv(labels) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["prediction"])
    for v in labels:
        writer.writerow([int(v)])
    return buf.getvalue()


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
