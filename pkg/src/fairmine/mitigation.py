"""Reject-option post-processing over user-selected itemsets.

Predictions are hard labels, so the critical region is exactly the
selected itemsets: inside each, the fewest possible labels are flipped,
disadvantaged-group members to beneficial first, then advantaged-group
members away from it, until the itemset's |rd| is within the target.
Overlapping itemsets are handled worst-first with recomputation, and no
item is ever flipped twice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .data import DiscretizedDataset
from .discrimination import AnalysisConfig, DiscriminatoryItemset
from .errors import (
    EmptySelection,
    MitigationInfeasible,
    StalePlanError,
    UnknownItemset,
)


@dataclass
class MitigationPlan:
    selected: list[str]                      # canonical keys
    tau_target: float
    flips: list[tuple[int, int, int]]        # (item_id, old_label, new_label)

    @property
    def flip_count(self) -> int:
        return len(self.flips)


@dataclass
class ItemsetOutcome:
    canonical_key: str
    rd_before: float
    rd_after: float


@dataclass
class MitigationReport:
    itemsets: list[ItemsetOutcome] = field(default_factory=list)
    accuracy_before: float = 0.0
    accuracy_after: float = 0.0
    reverse_discrimination_count: int = 0
    flip_count: int = 0


def _rates(pred: np.ndarray, prot_ids: Sequence[int], nonprot_ids: Sequence[int]
           ) -> tuple[float, float, float]:
    p_p = float(pred[list(prot_ids)].mean()) if prot_ids else 0.0
    p_np = float(pred[list(nonprot_ids)].mean()) if nonprot_ids else 0.0
    return p_p, p_np, p_p - p_np


def plan_reject_option(ddata: DiscretizedDataset, model_id: str,
                       selected: Sequence[DiscriminatoryItemset],
                       tau_target: float) -> MitigationPlan:
    """Minimal flips per selected itemset under the group-priority rule.

    Itemsets are processed by descending current |rd| (ties by key),
    recomputing after each, so overlapping selections cannot oscillate.
    """
    if tau_target <= 0:
        raise ValueError("tau_target must be positive")
    if not selected:
        raise EmptySelection("no itemsets selected")
    pred = ddata.prediction(model_id).astype(np.int8).copy()
    flipped: set[int] = set()
    flips: list[tuple[int, int, int]] = []

    pending = list(selected)
    while pending:
        scored = [(abs(_rates(pred, sorted(it.members_protected),
                              sorted(it.members_nonprotected))[2]), it.canonical_key, it)
                  for it in pending]
        scored.sort(key=lambda t: (-t[0], t[1]))
        _, _, itemset = scored[0]
        pending.remove(itemset)
        _flip_itemset(pred, itemset, tau_target, flipped, flips)

    return MitigationPlan(selected=[it.canonical_key for it in selected],
                          tau_target=tau_target, flips=flips)


def _flip_itemset(pred: np.ndarray, itemset: DiscriminatoryItemset,
                  tau_target: float, flipped: set[int],
                  flips: list[tuple[int, int, int]]) -> None:
    prot = sorted(itemset.members_protected)
    nonprot = sorted(itemset.members_nonprotected)
    _, _, rd = _rates(pred, prot, nonprot)
    if abs(rd) <= tau_target:
        return
    if rd < 0:
        disadvantaged, advantaged = prot, nonprot
    else:
        disadvantaged, advantaged = nonprot, prot

    # Raise the disadvantaged rate first: 0 -> 1, ascending item id.
    for item in disadvantaged:
        if pred[item] == 0 and item not in flipped:
            pred[item] = 1
            flipped.add(item)
            flips.append((item, 0, 1))
            _, _, rd = _rates(pred, prot, nonprot)
            if abs(rd) <= tau_target:
                return
    # Then lower the advantaged rate: 1 -> 0, ascending item id.
    for item in advantaged:
        if pred[item] == 1 and item not in flipped:
            pred[item] = 0
            flipped.add(item)
            flips.append((item, 1, 0))
            _, _, rd = _rates(pred, prot, nonprot)
            if abs(rd) <= tau_target:
                return
    raise MitigationInfeasible(
        f"cannot bring {itemset.canonical_key!r} within |rd| <= {tau_target} "
        "without flipping an item twice")


def apply_plan(ddata: DiscretizedDataset, model_id: str, plan: MitigationPlan,
               report_itemsets: Sequence[DiscriminatoryItemset] = (),
               tau: float | None = None
               ) -> tuple[DiscretizedDataset, str, MitigationReport]:
    """Apply a plan as a new "+U" model; the original vector is untouched.

    report_itemsets are re-scored before/after (pass the full result to
    surface reverse discrimination outside the selection); tau is the
    reporting threshold for the reverse-discrimination count.
    """
    pred_before = ddata.prediction(model_id)
    new_pred = pred_before.astype(np.int8).copy()
    for item, old, new in plan.flips:
        if int(new_pred[item]) != old:
            raise StalePlanError(
                f"item {item} now has label {int(new_pred[item])}, plan expected {old}")
        new_pred[item] = new

    mitigated_id = f"{model_id}+U"
    preds = dict(ddata.predictions)
    preds[mitigated_id] = new_pred
    new_ddata = DiscretizedDataset(base=ddata.base, codes=ddata.codes,
                                   outcome=ddata.outcome,
                                   protected_flag=ddata.protected_flag,
                                   predictions=preds)

    report = MitigationReport(flip_count=plan.flip_count)
    outcome = ddata.outcome
    report.accuracy_before = float((pred_before == outcome).mean())
    report.accuracy_after = float((new_pred == outcome).mean())
    threshold = plan.tau_target if tau is None else tau
    for it in report_itemsets:
        prot = sorted(it.members_protected)
        nonprot = sorted(it.members_nonprotected)
        _, _, rd_before = _rates(pred_before, prot, nonprot)
        _, _, rd_after = _rates(new_pred, prot, nonprot)
        report.itemsets.append(ItemsetOutcome(it.canonical_key, rd_before, rd_after))
        if rd_before * rd_after < 0 and abs(rd_after) > threshold:
            report.reverse_discrimination_count += 1
    return new_ddata, mitigated_id, report


def select_itemsets(itemsets: Sequence[DiscriminatoryItemset],
                    keys: Sequence[str]) -> list[DiscriminatoryItemset]:
    """Resolve canonical keys against a result, preserving key order."""
    by_key = {it.canonical_key: it for it in itemsets}
    missing = [k for k in keys if k not in by_key]
    if missing:
        raise UnknownItemset(f"not in the current result: {missing}")
    return [by_key[k] for k in keys]
