"""Discriminatory itemsets: risk-difference filtering, grouping, ordering
and model comparison.

For a condition s, the risk difference is the empirical
P(pred=1 | A=1, s) - P(pred=1 | A=0, s) over a model's prediction column.
Conditions that carry every resolving attribute, no proxy attribute,
enough members in both groups and |rd| above the threshold are the
discriminatory itemsets; they are grouped by their resolving values into
collections for display.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .data import DiscretizedDataset
from .errors import (
    ConfigMismatch,
    InsufficientGroupSupport,
    NoResolvingAttributes,
)
from .rules import EMPTY_CONDITION, Condition


@dataclass(frozen=True)
class AnalysisConfig:
    protected: str
    protected_group_value: str
    tau: float = 0.25
    resolving: frozenset[str] = frozenset()
    proxies: frozenset[str] = frozenset()
    min_group_support: int = 5
    model_id: str = ""
    beneficial_class: int = 1

    def __post_init__(self):
        if not (0 < self.tau < 1):
            raise ValueError(f"tau must be in (0,1), got {self.tau}")
        if self.resolving & self.proxies:
            raise ValueError(f"resolving and proxies overlap: {sorted(self.resolving & self.proxies)}")
        if self.protected in self.resolving | self.proxies:
            raise ValueError(f"protected attribute {self.protected!r} cannot be resolving or proxy")

    def same_analysis(self, other: "AnalysisConfig") -> bool:
        """Equal in everything except model_id."""
        return replace(self, model_id="") == replace(other, model_id="")


@dataclass(frozen=True)
class RiskDifference:
    p_protected: float
    p_nonprotected: float
    rd: float
    members_protected: frozenset[int]
    members_nonprotected: frozenset[int]


@dataclass(frozen=True)
class DiscriminatoryItemset:
    condition: Condition
    p_protected: float
    p_nonprotected: float
    rd: float
    members_protected: frozenset[int]
    members_nonprotected: frozenset[int]
    context_attrs: frozenset[str]

    @property
    def canonical_key(self) -> str:
        return self.condition.canonical_key

    @property
    def size(self) -> int:
        return len(self.members_protected) + len(self.members_nonprotected)

    @property
    def members(self) -> frozenset[int]:
        return self.members_protected | self.members_nonprotected


@dataclass
class ItemsetCollection:
    resolving_key: str
    resolving_literals: tuple[tuple[str, int], ...]
    itemsets: list[DiscriminatoryItemset]
    total_items: int
    hierarchy: list[tuple[int, int]] = field(default_factory=list)
    row_order: list[int] = field(default_factory=list)


@dataclass(frozen=True)
class ScatterPoint:
    canonical_key: str
    rd: float
    size: int


def compute_risk_difference(condition: Condition, ddata: DiscretizedDataset,
                            config: AnalysisConfig) -> RiskDifference:
    """Exact empirical group probabilities and member ids for one condition.

    Raises InsufficientGroupSupport naming the thin group when either
    group has fewer than config.min_group_support matching members.
    """
    pred = ddata.prediction(config.model_id)
    mask = condition.mask(ddata)
    prot = mask & (ddata.protected_flag == 1)
    nonprot = mask & (ddata.protected_flag == 0)
    n_p = int(np.count_nonzero(prot))
    n_np = int(np.count_nonzero(nonprot))
    if n_p < config.min_group_support:
        raise InsufficientGroupSupport(
            f"protected group has {n_p} members under {condition.canonical_key!r} "
            f"(need {config.min_group_support})", thin_group="protected")
    if n_np < config.min_group_support:
        raise InsufficientGroupSupport(
            f"non-protected group has {n_np} members under {condition.canonical_key!r} "
            f"(need {config.min_group_support})", thin_group="nonprotected")
    p_p = int(np.count_nonzero(pred[prot])) / n_p
    p_np = int(np.count_nonzero(pred[nonprot])) / n_np
    return RiskDifference(
        p_protected=p_p, p_nonprotected=p_np, rd=p_p - p_np,
        members_protected=frozenset(np.flatnonzero(prot).tolist()),
        members_nonprotected=frozenset(np.flatnonzero(nonprot).tolist()))


def mine_discriminatory_itemsets(frequent: Sequence[tuple[Condition, int]],
                                 ddata: DiscretizedDataset, config: AnalysisConfig,
                                 *, allow_empty_resolving: bool = False,
                                 prune_redundant: bool = True
                                 ) -> list[DiscriminatoryItemset]:
    """Filter frequent conditions down to the discriminatory itemsets.

    Emitted conditions (a) contain a literal on every resolving attribute,
    (b) contain no proxy literal, (c) keep both groups at or above
    min_group_support, (d) have |rd| > tau. Both signs are kept. With
    prune_redundant, a condition whose member sets equal those of a
    shorter emitted condition is dropped as a redundant refinement.
    """
    if not config.resolving and not allow_empty_resolving:
        raise NoResolvingAttributes(
            "resolving set is empty; pass allow_empty_resolving=True to audit "
            "demographic parity over the whole population")

    candidates = list(frequent)
    if not config.resolving:
        # The all-rows condition is the demographic-parity baseline; the
        # frequent miner never emits it.
        candidates.insert(0, (EMPTY_CONDITION, ddata.n))

    emitted: list[DiscriminatoryItemset] = []
    for condition, _support in candidates:
        attrs = condition.attrs
        if not config.resolving <= attrs:
            continue
        if attrs & config.proxies:
            continue
        try:
            risk = compute_risk_difference(condition, ddata, config)
        except InsufficientGroupSupport:
            continue
        if abs(risk.rd) > config.tau:
            emitted.append(DiscriminatoryItemset(
                condition=condition,
                p_protected=risk.p_protected,
                p_nonprotected=risk.p_nonprotected,
                rd=risk.rd,
                members_protected=risk.members_protected,
                members_nonprotected=risk.members_nonprotected,
                context_attrs=attrs - config.resolving))

    if prune_redundant:
        emitted = _prune_redundant(emitted)
    emitted.sort(key=lambda it: (len(it.condition), it.canonical_key))
    return emitted


def _prune_redundant(itemsets: list[DiscriminatoryItemset]) -> list[DiscriminatoryItemset]:
    """Drop itemsets that refine another one without changing its members.

    Within each identical-member-sets group only the subset-minimal
    conditions survive.
    """
    by_members: dict[tuple[frozenset[int], frozenset[int]], list[DiscriminatoryItemset]] = {}
    for it in itemsets:
        by_members.setdefault((it.members_protected, it.members_nonprotected), []).append(it)
    kept: list[DiscriminatoryItemset] = []
    for group in by_members.values():
        for it in group:
            if not any(other.condition.is_subset_of(it.condition) for other in group):
                kept.append(it)
    return kept


def group_by_resolving(itemsets: Sequence[DiscriminatoryItemset],
                       config: AnalysisConfig) -> list[ItemsetCollection]:
    """Partition itemsets by their resolving literal values.

    Collections are ordered by descending member-union size, ties by the
    resolving key string.
    """
    groups: dict[tuple[tuple[str, int], ...], list[DiscriminatoryItemset]] = {}
    for it in itemsets:
        key = tuple(sorted((name, code) for name, code in it.condition.literals
                           if name in config.resolving))
        groups.setdefault(key, []).append(it)

    collections = []
    for key, members in groups.items():
        union: set[int] = set()
        for it in members:
            union |= it.members
        label_of = {(name, code): lab
                    for it in members
                    for (name, code), lab in zip(it.condition.literals, it.condition.labels)}
        key_str = "&".join(f"{name}={label_of[(name, code)]}" for name, code in key)
        members.sort(key=lambda it: (len(it.condition), it.canonical_key))
        collections.append(ItemsetCollection(
            resolving_key=key_str, resolving_literals=key,
            itemsets=members, total_items=len(union)))
    collections.sort(key=lambda c: (-c.total_items, c.resolving_key))
    for coll in collections:
        coll.hierarchy = build_inclusion_hierarchy(coll)
        coll.row_order = order_rows_jaccard(coll.itemsets)
    return collections


def build_inclusion_hierarchy(collection: ItemsetCollection) -> list[tuple[int, int]]:
    """Hasse edges of the literal-subset order: (parent idx, child idx).

    parent -> child iff parent's literals are a strict subset of the
    child's and no third itemset sits strictly between them.
    """
    its = collection.itemsets
    sets = [it.condition.literal_set() for it in its]
    edges = []
    for b, pb in enumerate(sets):
        for a, pa in enumerate(sets):
            if not (pb < pa):
                continue
            if any(pb < pc < pa for c, pc in enumerate(sets) if c not in (a, b)):
                continue
            edges.append((b, a))
    return edges


def _jaccard(a: frozenset, b: frozenset) -> float:
    if not a and not b:
        return 1.0
    return len(a & b) / len(a | b)


def order_rows_jaccard(itemsets: Sequence[DiscriminatoryItemset]) -> list[int]:
    """Greedy chain: start at the largest itemset, then repeatedly append
    the itemset most literal-similar to the last appended."""
    if not itemsets:
        return []
    sets = [it.condition.literal_set() for it in itemsets]
    start = min(range(len(itemsets)),
                key=lambda i: (-itemsets[i].size, itemsets[i].canonical_key))
    order = [start]
    remaining = set(range(len(itemsets))) - {start}
    while remaining:
        last = sets[order[-1]]
        nxt = min(remaining,
                  key=lambda i: (-_jaccard(last, sets[i]), itemsets[i].canonical_key))
        order.append(nxt)
        remaining.discard(nxt)
    return order


def scatter_summary(itemsets: Sequence[DiscriminatoryItemset]) -> list[ScatterPoint]:
    return [ScatterPoint(it.canonical_key, it.rd, it.size) for it in itemsets]


@dataclass(frozen=True)
class SharedItemset:
    canonical_key: str
    rd_a: float
    rd_b: float
    rd_delta: float
    beneficial_a: tuple[int, int]   # (protected, nonprotected) predicted beneficial
    beneficial_b: tuple[int, int]


@dataclass
class ModelComparison:
    model_a: str
    model_b: str
    aligned_collections: list[tuple[str, int | None, int | None]]
    shared: list[SharedItemset]
    unique_a: list[str]
    unique_b: list[str]


def _beneficial_counts(it: DiscriminatoryItemset) -> tuple[int, int]:
    return (round(it.p_protected * len(it.members_protected)),
            round(it.p_nonprotected * len(it.members_nonprotected)))


def compare_models(collections_a: Sequence[ItemsetCollection], config_a: AnalysisConfig,
                   collections_b: Sequence[ItemsetCollection], config_b: AnalysisConfig
                   ) -> ModelComparison:
    """Align two models' results: collections pair on identical resolving
    keys; itemsets are shared when their canonical keys match."""
    if not config_a.same_analysis(config_b):
        raise ConfigMismatch("results were computed under different configs")

    keys_a = {c.resolving_key: i for i, c in enumerate(collections_a)}
    keys_b = {c.resolving_key: i for i, c in enumerate(collections_b)}
    aligned = [(k, keys_a.get(k), keys_b.get(k))
               for k in sorted(set(keys_a) | set(keys_b))]

    items_a = {it.canonical_key: it for c in collections_a for it in c.itemsets}
    items_b = {it.canonical_key: it for c in collections_b for it in c.itemsets}
    shared = []
    for key in sorted(set(items_a) & set(items_b)):
        a, b = items_a[key], items_b[key]
        shared.append(SharedItemset(
            canonical_key=key, rd_a=a.rd, rd_b=b.rd, rd_delta=b.rd - a.rd,
            beneficial_a=_beneficial_counts(a), beneficial_b=_beneficial_counts(b)))
    return ModelComparison(
        model_a=config_a.model_id, model_b=config_b.model_id,
        aligned_collections=aligned, shared=shared,
        unique_a=sorted(set(items_a) - set(items_b)),
        unique_b=sorted(set(items_b) - set(items_a)))
