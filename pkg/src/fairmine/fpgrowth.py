"""FP-Growth over integer-item transactions.

Items are opaque ints; transactions are sequences of distinct items.
mine() returns every itemset with support >= min_support and length
<= max_length, with exact absolute supports.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import combinations
from typing import Iterable, Sequence


class _Node:
    __slots__ = ("item", "count", "parent", "children", "link")

    def __init__(self, item: int, parent: "_Node | None"):
        self.item = item
        self.count = 0
        self.parent = parent
        self.children: dict[int, _Node] = {}
        self.link: _Node | None = None


class _Tree:
    def __init__(self):
        self.root = _Node(-1, None)
        self.heads: dict[int, _Node] = {}
        self.tails: dict[int, _Node] = {}
        self.counts: dict[int, int] = defaultdict(int)

    def insert(self, items: Sequence[int], count: int) -> None:
        node = self.root
        for item in items:
            child = node.children.get(item)
            if child is None:
                child = _Node(item, node)
                node.children[item] = child
                if item in self.tails:
                    self.tails[item].link = child
                else:
                    self.heads[item] = child
                self.tails[item] = child
            child.count += count
            self.counts[item] += count
            node = child


def _build(transactions: Iterable[tuple[Sequence[int], int]], min_support: int,
           order: dict[int, tuple[int, int]]) -> _Tree:
    tree = _Tree()
    for items, count in transactions:
        kept = [i for i in items if i in order]
        # Descending frequency, item id as tiebreak, for maximal prefix sharing.
        kept.sort(key=lambda i: order[i])
        if kept:
            tree.insert(kept, count)
    return tree


def _item_order(transactions: Iterable[tuple[Sequence[int], int]],
                min_support: int) -> dict[int, tuple[int, int]]:
    counts: dict[int, int] = defaultdict(int)
    for items, count in transactions:
        for i in items:
            counts[i] += count
    return {i: (-c, i) for i, c in counts.items() if c >= min_support}


def mine(transactions: Sequence[Sequence[int]], min_support: int,
         max_length: int) -> list[tuple[frozenset[int], int]]:
    """All frequent itemsets (nonempty) with their exact supports."""
    if min_support < 1:
        raise ValueError("min_support must be >= 1")
    if max_length < 1:
        raise ValueError("max_length must be >= 1")
    weighted = [(tx, 1) for tx in transactions]
    results: list[tuple[frozenset[int], int]] = []
    _grow(weighted, min_support, max_length, (), results)
    return results


def _grow(transactions: list[tuple[Sequence[int], int]], min_support: int,
          budget: int, suffix: tuple[int, ...],
          results: list[tuple[frozenset[int], int]]) -> None:
    order = _item_order(transactions, min_support)
    if not order:
        return
    tree = _build(transactions, min_support, order)

    # Single-path shortcut: every subset of the path is frequent with the
    # support of its deepest item.
    path: list[tuple[int, int]] = []
    node = tree.root
    while len(node.children) == 1:
        node = next(iter(node.children.values()))
        path.append((node.item, node.count))
    if node.children:
        path = []
    if path:
        _emit_path(path, min_support, budget, suffix, results)
        return

    # Items ascending by frequency: standard bottom-up conditional growth.
    for item in sorted(tree.heads, key=lambda i: order[i], reverse=True):
        support = tree.counts[item]
        itemset = frozenset(suffix + (item,))
        results.append((itemset, support))
        if budget == 1:
            continue
        conditional: list[tuple[Sequence[int], int]] = []
        node = tree.heads.get(item)
        while node is not None:
            prefix = []
            up = node.parent
            while up is not None and up.item != -1:
                prefix.append(up.item)
                up = up.parent
            if prefix:
                conditional.append((prefix, node.count))
            node = node.link
        if conditional:
            _grow(conditional, min_support, budget - 1, suffix + (item,), results)


def _emit_path(path: list[tuple[int, int]], min_support: int, budget: int,
               suffix: tuple[int, ...],
               results: list[tuple[frozenset[int], int]]) -> None:
    """Enumerate subsets of a single prefix path."""
    for size in range(1, min(len(path), budget) + 1):
        for combo in combinations(range(len(path)), size):
            support = path[combo[-1]][1]
            if support >= min_support:
                items = frozenset(suffix + tuple(path[i][0] for i in combo))
                results.append((items, support))
