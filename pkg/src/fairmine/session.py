"""Audit engine: one dataset + config, cached results per model.

Both the CLI and the HTTP service drive this object, so their outputs
are produced by the same code path. Config mutations bump a revision
counter and invalidate cached results; reads are pure.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, replace
from typing import Sequence

from .causal import discover_parents, suggest_resolving
from .data import DiscretizedDataset
from .discrimination import (
    AnalysisConfig,
    DiscriminatoryItemset,
    ItemsetCollection,
    ModelComparison,
    compare_models,
    group_by_resolving,
    mine_discriminatory_itemsets,
    scatter_summary,
)
from .errors import UnknownModel
from .mitigation import MitigationPlan, MitigationReport, apply_plan, plan_reject_option, select_itemsets
from .ripples import RippleGeometry, compute_atoms, layout_rippleset
from .rules import default_min_support, mine_frequent_itemsets


@dataclass
class AnalysisResult:
    config: AnalysisConfig
    itemsets: list[DiscriminatoryItemset]
    collections: list[ItemsetCollection]


class AuditEngine:
    def __init__(self, ddata: DiscretizedDataset, config: AnalysisConfig,
                 *, min_support: int | None = None, max_length: int = 6,
                 allow_empty_resolving: bool = False,
                 suggest: bool = True,
                 resolving_override: frozenset[str] | None = None):
        self._lock = threading.Lock()
        self.ddata = ddata
        self.config = config
        self.min_support = default_min_support(ddata.n) if min_support is None else min_support
        self.max_length = max_length
        self.allow_empty_resolving = allow_empty_resolving
        self.revision = 0
        self._results: dict[tuple[int, str], AnalysisResult] = {}
        self._frequent: dict[str, list] = {}
        self._geometry: dict[tuple[int, str, int, int | None], RippleGeometry] = {}
        self.parent_set = None
        self.suggestion = None
        if suggest:
            self.parent_set = discover_parents(ddata)
            self.suggestion = suggest_resolving(self.parent_set, config.protected,
                                                config.proxies)
        if resolving_override is not None:
            self.config = replace(config, resolving=frozenset(resolving_override))
        elif self.suggestion is not None:
            self.config = replace(config, resolving=self.suggestion.resolving)

    @property
    def models(self) -> list[str]:
        return sorted(self.ddata.predictions)

    def update_config(self, **changes) -> int:
        """Apply config changes under the session lock; returns new revision."""
        with self._lock:
            config = self.config
            if "protected_group" in changes:
                value = changes.pop("protected_group")
                self.ddata = self.ddata.with_protected_group(value)
                config = replace(config, protected_group_value=value)
                self._frequent.clear()
            for key in ("tau", "min_group_support"):
                if key in changes:
                    config = replace(config, **{key: changes.pop(key)})
            for key in ("resolving", "proxies"):
                if key in changes:
                    config = replace(config, **{key: frozenset(changes.pop(key))})
            if "allow_empty_resolving" in changes:
                self.allow_empty_resolving = bool(changes.pop("allow_empty_resolving"))
            if changes:
                raise ValueError(f"unknown config fields: {sorted(changes)}")
            self.config = config
            self.revision += 1
            self._results.clear()
            self._geometry.clear()
            return self.revision

    def frequent_for(self, model_id: str):
        if model_id not in self._frequent:
            self._frequent[model_id] = mine_frequent_itemsets(
                self.ddata, model_id, self.min_support, self.max_length)
        return self._frequent[model_id]

    def result(self, model_id: str) -> AnalysisResult:
        key = (self.revision, model_id)
        if key not in self._results:
            if model_id not in self.ddata.predictions:
                raise UnknownModel(f"no predictions attached for model {model_id!r}")
            config = replace(self.config, model_id=model_id)
            itemsets = mine_discriminatory_itemsets(
                self.frequent_for(model_id), self.ddata, config,
                allow_empty_resolving=self.allow_empty_resolving)
            collections = group_by_resolving(itemsets, config)
            self._results[key] = AnalysisResult(config=config, itemsets=itemsets,
                                                collections=collections)
        return self._results[key]

    def geometry(self, model_id: str, collection_index: int,
                 dot_budget: int | None = None) -> RippleGeometry:
        key = (self.revision, model_id, collection_index, dot_budget)
        if key not in self._geometry:
            result = self.result(model_id)
            if not (0 <= collection_index < len(result.collections)):
                raise IndexError(f"collection index {collection_index} out of range")
            atoms = compute_atoms(result.collections[collection_index],
                                  self.ddata, model_id)
            self._geometry[key] = layout_rippleset(atoms, dot_budget=dot_budget)
        return self._geometry[key]

    def compare(self, model_a: str, model_b: str) -> ModelComparison:
        ra, rb = self.result(model_a), self.result(model_b)
        return compare_models(ra.collections, ra.config, rb.collections, rb.config)

    def scatter(self, model_id: str):
        return scatter_summary(self.result(model_id).itemsets)

    def mitigate(self, model_id: str, selected_keys: Sequence[str],
                 tau_target: float, preview: bool = True
                 ) -> tuple[MitigationPlan, MitigationReport, str | None]:
        result = self.result(model_id)
        selected = select_itemsets(result.itemsets, selected_keys)
        plan = plan_reject_option(self.ddata, model_id, selected, tau_target)
        new_ddata, mitigated_id, report = apply_plan(
            self.ddata, model_id, plan,
            report_itemsets=result.itemsets, tau=self.config.tau)
        if preview:
            return plan, report, None
        with self._lock:
            self.ddata = new_ddata
            self.revision += 1
            self._results.clear()
            self._geometry.clear()
            self._frequent.pop(mitigated_id, None)
        return plan, report, mitigated_id
