"""Entropy-based supervised discretization with an MDL stop rule.

Continuous columns are split recursively at class-boundary midpoints. A
candidate cut T of a segment S into S1/S2 is accepted iff

    Gain(S;T) > (log2(N-1) + delta) / N
    delta = log2(3^k - 2) - (k*Ent(S) - k1*Ent(S1) - k2*Ent(S2))

where k/k1/k2 count the distinct class labels in each part and entropies
are in bits. Recursion continues independently on both sides of an
accepted cut.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence


@dataclass(frozen=True)
class CandidateRecord:
    """One MDL-tested candidate cut (the best-gain cut of its segment)."""

    threshold: float
    gain: float
    mdl_threshold: float
    accepted: bool


@dataclass
class CutPoints:
    """Accepted thresholds for one attribute, with the audit trail."""

    attribute: str
    thresholds: list[float] = field(default_factory=list)
    acceptance_trace: list[CandidateRecord] = field(default_factory=list)


def _entropy(counts: Counter) -> float:
    total = sum(counts.values())
    if total == 0:
        return 0.0
    ent = 0.0
    for c in counts.values():
        if c:
            p = c / total
            ent -= p * math.log2(p)
    return ent


def _n_classes(counts: Counter) -> int:
    return sum(1 for c in counts.values() if c)


def discretize_mdl(values: Sequence[float], class_labels: Sequence[int],
                   attribute: str = "") -> CutPoints:
    """Find MDL-accepted cut points for one continuous column.

    Degenerate inputs (single class, single distinct value) yield no
    thresholds. The result depends only on the (value, label) multiset,
    so it is invariant under joint permutation of the inputs.
    """
    if len(values) != len(class_labels):
        raise ValueError("values and class_labels must align")
    pairs = sorted(zip(values, class_labels))
    result = CutPoints(attribute=attribute)
    if len(pairs) < 2:
        return result

    # Group by distinct value so equal values can never be separated.
    groups: list[tuple[float, Counter]] = []
    for v, y in pairs:
        if groups and groups[-1][0] == v:
            groups[-1][1][y] += 1
        else:
            groups.append((v, Counter({y: 1})))

    _split_segment(groups, 0, len(groups), result)
    result.thresholds.sort()
    return result


def _split_segment(groups: list[tuple[float, Counter]], lo: int, hi: int,
                   result: CutPoints) -> None:
    """Recursively split groups[lo:hi]; record the MDL test of the best cut."""
    total_counts = Counter()
    for _, c in groups[lo:hi]:
        total_counts.update(c)
    n = sum(total_counts.values())
    ent_s = _entropy(total_counts)
    if hi - lo < 2 or ent_s == 0.0:
        return

    # Candidate boundaries: between adjacent distinct values unless both
    # sides are pure with the same single class (Fayyad's boundary-point
    # optimality makes other positions redundant).
    best = None  # (gain, threshold, split index, left counts)
    left = Counter()
    for i in range(lo + 1, hi):
        left.update(groups[i - 1][1])
        prev_classes = set(groups[i - 1][1])
        next_classes = set(groups[i][1])
        if len(prev_classes) == 1 and prev_classes == next_classes:
            continue
        n1 = sum(left.values())
        right = total_counts - left
        n2 = n - n1
        gain = ent_s - (n1 / n) * _entropy(left) - (n2 / n) * _entropy(right)
        threshold = (groups[i - 1][0] + groups[i][0]) / 2.0
        if best is None or gain > best[0] + 1e-15 or (
                abs(gain - best[0]) <= 1e-15 and threshold < best[1]):
            best = (gain, threshold, i, Counter(left))
    if best is None:
        return

    gain, threshold, split, left_counts = best
    right_counts = total_counts - left_counts
    k = _n_classes(total_counts)
    k1 = _n_classes(left_counts)
    k2 = _n_classes(right_counts)
    delta = math.log2(3 ** k - 2) - (
        k * ent_s - k1 * _entropy(left_counts) - k2 * _entropy(right_counts))
    mdl_threshold = (math.log2(n - 1) + delta) / n
    accepted = gain > mdl_threshold
    result.acceptance_trace.append(
        CandidateRecord(threshold, gain, mdl_threshold, accepted))
    if not accepted:
        return
    result.thresholds.append(threshold)
    _split_segment(groups, lo, split, result)
    _split_segment(groups, split, hi, result)
