"""Local parent discovery for the outcome via greedy BIC search.

Instead of learning a full graph, the outcome's parent set is found
directly: forward selection adds the attribute whose inclusion most
improves the BIC of the multinomial conditional model of the target,
while the improvement is positive; backward elimination then removes
attributes while removal improves the score. The suggestion is advisory;
the final resolving set is whatever the user keeps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .data import DiscretizedDataset
from .errors import TooFewRows

MAX_PARENTS = 5


@dataclass(frozen=True)
class TraceStep:
    operation: str          # "add" | "remove"
    attribute: str
    score_delta: float
    cumulative_score: float


@dataclass
class ParentSet:
    target: str
    parents: set[str] = field(default_factory=set)
    score_trace: list[TraceStep] = field(default_factory=list)
    empty_model_score: float = 0.0
    cap_hit: bool = False


def _conditional_loglik(target: np.ndarray, n_target_cats: int,
                        parent_cols: list[np.ndarray]) -> tuple[float, int]:
    """Multinomial log-likelihood of target given the parent configuration,
    and the number of observed parent configurations."""
    n = len(target)
    if parent_cols:
        # Collapse the parent columns into one configuration id per row.
        config = np.zeros(n, dtype=np.int64)
        for col in parent_cols:
            config = config * (int(col.max()) + 1) + col
        _, config = np.unique(config, return_inverse=True)
    else:
        config = np.zeros(n, dtype=np.int64)
    n_configs = int(config.max()) + 1
    joint = np.zeros((n_configs, n_target_cats), dtype=np.int64)
    np.add.at(joint, (config, target), 1)
    row_totals = joint.sum(axis=1)
    ll = 0.0
    for r in range(n_configs):
        total = row_totals[r]
        for c in joint[r]:
            if c:
                ll += c * math.log(c / total)
    return ll, n_configs


def _bic(ll: float, n_params: int, n: int) -> float:
    return ll - n_params * math.log(n) / 2.0


def discover_parents(ddata: DiscretizedDataset, target: str | None = None) -> ParentSet:
    """Forward-backward greedy parent search scored by BIC.

    Ties in score improvement break toward the lexicographically smaller
    attribute name; at most MAX_PARENTS attributes are accepted.
    """
    if ddata.n < 10:
        raise TooFewRows(f"need at least 10 rows, got {ddata.n}")
    names = ddata.names
    if target is None:
        target = ddata.base.outcome_spec.name
    if target == ddata.base.outcome_spec.name:
        tcol = ddata.outcome.astype(np.int64)
        n_tcats = 2
    else:
        tcol = ddata.column_codes(target).astype(np.int64)
        n_tcats = len(ddata.base.attribute(target).categories)

    cards = {name: len(ddata.base.attribute(name).categories) for name in names}
    if target == ddata.base.outcome_spec.name:
        cards[target] = 2
    candidates = sorted(n for n in names if n != target and n != ddata.base.outcome_spec.name)
    cols = {name: ddata.column_codes(name).astype(np.int64) for name in candidates}

    def score(parents: list[str]) -> float:
        ll, _ = _conditional_loglik(tcol, n_tcats, [cols[p] for p in parents])
        n_params = (n_tcats - 1) * math.prod(cards[p] for p in parents)
        return _bic(ll, n_params, ddata.n)

    result = ParentSet(target=target)
    current: list[str] = []
    current_score = score(current)
    result.empty_model_score = current_score

    # Forward: add while some addition strictly improves the score.
    # Candidates are visited in name order, so ties keep the smaller name.
    while len(current) < MAX_PARENTS:
        best_name, best_score = None, current_score
        for name in candidates:
            if name in current:
                continue
            s = score(current + [name])
            if s > best_score + 1e-12:
                best_name, best_score = name, s
        if best_name is None:
            break
        result.score_trace.append(TraceStep("add", best_name,
                                            best_score - current_score, best_score))
        current = sorted(current + [best_name])
        current_score = best_score
    if len(current) == MAX_PARENTS:
        result.cap_hit = True

    # Backward: remove while some removal strictly improves the score.
    while current:
        best_name, best_score = None, current_score
        for name in sorted(current):
            s = score([p for p in current if p != name])
            if s > best_score + 1e-12:
                best_name, best_score = name, s
        if best_name is None:
            break
        result.score_trace.append(TraceStep("remove", best_name,
                                            best_score - current_score, best_score))
        current = [p for p in current if p != best_name]
        current_score = best_score

    result.parents = set(current)
    return result


@dataclass(frozen=True)
class ResolvingSuggestion:
    resolving: frozenset[str]
    excluded_protected: str
    excluded_proxies: frozenset[str]

    @property
    def ordered(self) -> list[str]:
        return sorted(self.resolving)


def suggest_resolving(parent_set: ParentSet, protected: str,
                      proxies: set[str] | frozenset[str] = frozenset()
                      ) -> ResolvingSuggestion:
    """Resolving attributes = discovered parents minus protected and proxies."""
    if protected == parent_set.target:
        raise ValueError("protected attribute cannot be the target")
    resolving = frozenset(parent_set.parents) - {protected} - frozenset(proxies)
    return ResolvingSuggestion(resolving=resolving, excluded_protected=protected,
                               excluded_proxies=frozenset(proxies))


def trace_as_json(parent_set: ParentSet) -> list[dict]:
    """Audit export: one record per accepted greedy step."""
    return [{"operation": s.operation, "attribute": s.attribute,
             "delta": s.score_delta, "cumulative_score": s.cumulative_score}
            for s in parent_set.score_trace]
