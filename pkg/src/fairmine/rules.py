"""Frequent conditions and classification rules over a coded dataset.

A Condition is a conjunction of attribute=value literals (at most one per
attribute, never on the outcome or protected columns). Frequent
conditions come out of FP-Growth; classification rules pair a condition
with a predicted class and carry exact support/confidence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import fpgrowth
from .data import DiscretizedDataset


@dataclass(frozen=True)
class Condition:
    """Sorted attribute=code literals with their category labels."""

    literals: tuple[tuple[str, int], ...]
    labels: tuple[str, ...]

    @staticmethod
    def from_codes(ddata: DiscretizedDataset, mapping: dict[str, int]) -> "Condition":
        items = sorted(mapping.items())
        labels = tuple(ddata.base.attribute(name).categories[code] for name, code in items)
        return Condition(literals=tuple(items), labels=labels)

    @property
    def canonical_key(self) -> str:
        return "&".join(f"{name}={label}"
                        for (name, _), label in zip(self.literals, self.labels))

    @property
    def attrs(self) -> frozenset[str]:
        return frozenset(name for name, _ in self.literals)

    def __len__(self) -> int:
        return len(self.literals)

    def literal_set(self) -> frozenset[tuple[str, int]]:
        return frozenset(self.literals)

    def is_subset_of(self, other: "Condition") -> bool:
        return self.literal_set() < other.literal_set()

    def mask(self, ddata: DiscretizedDataset) -> np.ndarray:
        """Boolean row mask of the items matching every literal."""
        out = np.ones(ddata.n, dtype=bool)
        for name, code in self.literals:
            out &= ddata.column_codes(name) == code
        return out


EMPTY_CONDITION = Condition(literals=(), labels=())


@dataclass(frozen=True)
class ClassificationRule:
    antecedent: Condition
    consequent_class: int
    support_joint: int
    support_antecedent: int

    @property
    def confidence(self) -> float:
        return self.support_joint / self.support_antecedent


def default_min_support(n: int) -> int:
    return max(5, math.ceil(0.01 * n))


def mine_frequent_itemsets(ddata: DiscretizedDataset, model_id: str,
                           min_support: int, max_length: int
                           ) -> list[tuple[Condition, int]]:
    """Every condition over non-outcome, non-protected attributes with
    support >= min_support and at most max_length literals.

    Sorted by (length, canonical_key) so output order is reproducible.
    """
    ddata.prediction(model_id)  # validates the model exists
    attrs = ddata.condition_attrs
    # Registry of (attribute, code) -> dense item id for the FP tree.
    item_of: dict[tuple[str, int], int] = {}
    pairs: list[tuple[str, int]] = []
    for name in attrs:
        for code in range(len(ddata.base.attribute(name).categories)):
            item_of[(name, code)] = len(pairs)
            pairs.append((name, code))

    cols = {name: ddata.column_codes(name) for name in attrs}
    transactions = [[item_of[(name, int(cols[name][i]))] for name in attrs]
                    for i in range(ddata.n)]
    found = fpgrowth.mine(transactions, min_support, max_length)

    out = []
    for itemset, support in found:
        mapping = {pairs[i][0]: pairs[i][1] for i in itemset}
        out.append((Condition.from_codes(ddata, mapping), support))
    out.sort(key=lambda cs: (len(cs[0]), cs[0].canonical_key))
    return out


def extract_classification_rules(frequent: Sequence[tuple[Condition, int]],
                                 ddata: DiscretizedDataset, model_id: str
                                 ) -> list[ClassificationRule]:
    """One rule per (frequent condition, class) with joint support >= 1."""
    pred = ddata.prediction(model_id)
    rules: list[ClassificationRule] = []
    for condition, support in frequent:
        mask = condition.mask(ddata)
        joint1 = int(np.count_nonzero(pred[mask]))
        joint0 = support - joint1
        for cls, joint in ((0, joint0), (1, joint1)):
            if joint >= 1:
                rules.append(ClassificationRule(
                    antecedent=condition, consequent_class=cls,
                    support_joint=joint, support_antecedent=support))
    return rules
