"""Atom partition and deterministic ripple geometry for one collection.

Items belonging to the same exact subset of itemsets form one atom; each
atom becomes a circle whose area is proportional to its item count.
Circles are placed tangent to the already-placed atom they share the
most itemset memberships with, scanning angles in 1-degree steps for the
first collision-free spot, so identical inputs always give identical
geometry. Item dots fill each circle along a golden-angle spiral in
dataset order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .data import DiscretizedDataset
from .discrimination import ItemsetCollection

DOT_RADIUS = 0.5
DOT_STEP = 1.3                 # radial spiral scale, in dot-radius units
RADIUS_PER_ITEM = 1.6          # circle radius = RADIUS_PER_ITEM * sqrt(count)
GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))
PLACEMENT_PAD = 1e-6
OUTLINE_MARGIN = 1.0
OUTLINE_STEP_DEG = 1.0


@dataclass(frozen=True)
class Atom:
    """One maximal inseparable subset of the collection's members."""

    signature: tuple[bool, ...]
    item_ids: tuple[int, ...]                 # ascending dataset order
    item_flags: tuple[tuple[bool, bool], ...]  # (protected, beneficial) per item
    group_counts: tuple[int, int]             # (protected, nonprotected)
    beneficial_counts: tuple[int, int]        # beneficial per group
    rd_local: float

    @property
    def count(self) -> int:
        return len(self.item_ids)


def compute_atoms(collection: ItemsetCollection, ddata: DiscretizedDataset,
                  model_id: str) -> list[Atom]:
    """Partition the union of member sets by membership signature."""
    pred = ddata.prediction(model_id)
    member_sets = [it.members for it in collection.itemsets]
    universe = sorted(set().union(*member_sets)) if member_sets else []
    buckets: dict[tuple[bool, ...], list[int]] = {}
    for item in universe:
        sig = tuple(item in s for s in member_sets)
        buckets.setdefault(sig, []).append(item)

    atoms = []
    for sig, ids in sorted(buckets.items()):
        flags = tuple((bool(ddata.protected_flag[i]), bool(pred[i])) for i in ids)
        n_p = sum(1 for p, _ in flags if p)
        n_np = len(ids) - n_p
        b_p = sum(1 for p, b in flags if p and b)
        b_np = sum(1 for p, b in flags if not p and b)
        if n_p and n_np:
            rd_local = b_p / n_p - b_np / n_np
        else:
            rd_local = 0.0
        atoms.append(Atom(signature=sig, item_ids=tuple(ids), item_flags=flags,
                          group_counts=(n_p, n_np), beneficial_counts=(b_p, b_np),
                          rd_local=rd_local))
    return atoms


@dataclass(frozen=True)
class CircleSpec:
    x: float
    y: float
    r: float
    signature: tuple[bool, ...]


@dataclass(frozen=True)
class DotSpec:
    item_id: int
    x: float
    y: float
    r: float
    shape: str        # "circle" (protected) | "square"
    fill: str         # "solid" (beneficial) | "hollow"
    color_value: float


@dataclass(frozen=True)
class AggregatedMark:
    circle_index: int
    group: str        # "protected" | "nonprotected"
    beneficial: bool
    count: int
    x: float
    y: float


@dataclass
class RippleGeometry:
    circles: list[CircleSpec] = field(default_factory=list)
    dots: list[DotSpec] = field(default_factory=list)
    aggregated: list[AggregatedMark] = field(default_factory=list)
    n_itemsets: int = 0


def _shared_bits(a: tuple[bool, ...], b: tuple[bool, ...]) -> int:
    return sum(1 for x, y in zip(a, b) if x and y)


_SCAN_COS = np.cos(np.radians(np.arange(360.0)))
_SCAN_SIN = np.sin(np.radians(np.arange(360.0)))


def layout_rippleset(atoms: Sequence[Atom], *, dot_budget: int | None = None
                     ) -> RippleGeometry:
    """Deterministic packed-circle layout with spiral item dots.

    Atoms whose count exceeds dot_budget get four count-labelled quadrant
    marks (group x predicted class) instead of individual dots.
    """
    if not atoms:
        raise ValueError("atoms must be nonempty")
    order = sorted(range(len(atoms)),
                   key=lambda i: (-sum(atoms[i].signature), -atoms[i].count,
                                  atoms[i].signature))
    placed: list[tuple[float, float, float, int]] = []  # x, y, r, atom index
    px = np.empty(len(atoms))
    py = np.empty(len(atoms))
    pr = np.empty(len(atoms))
    for rank, idx in enumerate(order):
        atom = atoms[idx]
        r = RADIUS_PER_ITEM * math.sqrt(atom.count)
        if rank == 0:
            placed.append((0.0, 0.0, r, idx))
            px[0], py[0], pr[0] = 0.0, 0.0, r
            continue
        anchor = max(range(len(placed)),
                     key=lambda k: (_shared_bits(atoms[placed[k][3]].signature,
                                                 atom.signature), -k))
        ax, ay, ar, _ = placed[anchor]
        k = len(placed)
        pos = None
        ring = 0
        while pos is None:
            dist = (ar + r) * (1.0 + 0.1 * ring) + PLACEMENT_PAD
            # All 360 candidates at once against every placed circle.
            cx = ax + dist * _SCAN_COS
            cy = ay + dist * _SCAN_SIN
            d2 = (cx[:, None] - px[None, :k]) ** 2 + (cy[:, None] - py[None, :k]) ** 2
            ok = (d2 >= ((pr[None, :k] + r) ** 2)).all(axis=1)
            hits = np.flatnonzero(ok)
            if hits.size:
                deg = int(hits[0])
                pos = (float(cx[deg]), float(cy[deg]))
            ring += 1
        placed.append((pos[0], pos[1], r, idx))
        px[k], py[k], pr[k] = pos[0], pos[1], r

    geometry = RippleGeometry(n_itemsets=len(atoms[0].signature))
    by_atom_index = {idx: (x, y, r) for x, y, r, idx in placed}
    for idx, atom in enumerate(atoms):
        x, y, r = by_atom_index[idx]
        geometry.circles.append(CircleSpec(x=x, y=y, r=r, signature=atom.signature))
        if dot_budget is not None and atom.count > dot_budget:
            geometry.aggregated.extend(aggregate_marks(atom, idx, x, y, r))
            continue
        for k, (item_id, (is_prot, is_benef)) in enumerate(
                zip(atom.item_ids, atom.item_flags)):
            rad = DOT_STEP * math.sqrt(k)
            ang = k * GOLDEN_ANGLE
            geometry.dots.append(DotSpec(
                item_id=item_id, x=x + rad * math.cos(ang), y=y + rad * math.sin(ang),
                r=DOT_RADIUS, shape="circle" if is_prot else "square",
                fill="solid" if is_benef else "hollow", color_value=atom.rd_local))
    return geometry


def aggregate_items(atom: Atom, dot_budget: int) -> list[tuple[str, bool, int]] | None:
    """Quadrant counts (group, beneficial, count) or None for pass-through."""
    if dot_budget < 1:
        raise ValueError("dot_budget must be >= 1")
    if atom.count <= dot_budget:
        return None
    n_p, n_np = atom.group_counts
    b_p, b_np = atom.beneficial_counts
    return [("protected", True, b_p),
            ("protected", False, n_p - b_p),
            ("nonprotected", True, b_np),
            ("nonprotected", False, n_np - b_np)]


_QUADRANTS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def aggregate_marks(atom: Atom, circle_index: int, cx: float, cy: float,
                    r: float) -> list[AggregatedMark]:
    cells = aggregate_items(atom, 1) or []
    marks = []
    for (group, benef, count), (sx, sy) in zip(cells, _QUADRANTS):
        marks.append(AggregatedMark(
            circle_index=circle_index, group=group, beneficial=benef, count=count,
            x=cx + sx * r * 0.45, y=cy + sy * r * 0.45))
    return marks


def outline_set(geometry: RippleGeometry, itemset_index: int,
                margin: float = OUTLINE_MARGIN) -> list[list[tuple[float, float]]]:
    """Closed boundary loops around the itemset's member circles, each
    inflated by `margin`. One loop per connected component of the
    inflated circles (holes would add further loops)."""
    if not (0 <= itemset_index < geometry.n_itemsets):
        raise IndexError(f"itemset index {itemset_index} out of range")
    members = [(c.x, c.y, c.r + margin) for c in geometry.circles
               if c.signature[itemset_index]]
    return circle_union_outline(members)


def circle_union_outline(circles: list[tuple[float, float, float]]
                         ) -> list[list[tuple[float, float]]]:
    """Boundary of a union of discs as closed polylines (exact arcs,
    sampled at about 1-degree resolution)."""
    n = len(circles)
    dead = [False] * n
    # intervals[i]: list of (start, end, owner) angular spans of circle i
    # strictly inside some other circle. Angles normalized to [0, 2pi).
    intervals: list[list[tuple[float, float, int]]] = [[] for _ in range(n)]
    for i in range(n):
        xi, yi, ri = circles[i]
        for j in range(n):
            if i == j or dead[i]:
                continue
            xj, yj, rj = circles[j]
            d = math.hypot(xj - xi, yj - yi)
            if d + ri <= rj + 1e-12 and not dead[j]:
                dead[i] = True
                intervals[i] = []
                break
            if d >= ri + rj or d + rj <= ri:
                continue
            alpha = math.atan2(yj - yi, xj - xi)
            half = math.acos(max(-1.0, min(1.0, (d * d + ri * ri - rj * rj) / (2 * d * ri))))
            if half <= 1e-12:
                continue
            intervals[i].append(((alpha - half) % (2 * math.pi),
                                 (alpha + half) % (2 * math.pi), j))

    # Free (boundary) arcs per circle: complement of the merged intervals.
    # Each arc remembers which circle's interval begins at its end.
    arcs: list[tuple[int, float, float, int]] = []  # circle, start, end, next circle
    full_circles: list[int] = []
    for i in range(n):
        if dead[i]:
            continue
        if not intervals[i]:
            full_circles.append(i)
            continue
        merged = _merge_circular(intervals[i])
        if merged is None:       # covered all around
            continue
        for (s, e, owner_at_end) in _complement(merged):
            arcs.append((i, s, e, owner_at_end))

    loops = [_sample_full_circle(circles[i]) for i in full_circles]
    unused = {(a[0], round(a[1], 7)): a for a in arcs}
    while unused:
        start_key = min(unused)
        loop_pts: list[tuple[float, float]] = []
        key = start_key
        while True:
            arc = unused.pop(key)
            i, s, e, owner = arc
            loop_pts.extend(_sample_arc(circles[i], s, e))
            # Jump to the circle whose coverage begins at this arc's end.
            xi, yi, ri = circles[i]
            px = xi + ri * math.cos(e)
            py = yi + ri * math.sin(e)
            xo, yo, _ = circles[owner]
            beta = math.atan2(py - yo, px - xo) % (2 * math.pi)
            key = _find_arc_key(unused, owner, beta, start_key)
            if key == start_key or key is None:
                break
        loops.append(loop_pts)
    return loops


def _merge_circular(spans: list[tuple[float, float, int]]
                    ) -> list[tuple[float, float, int]] | None:
    """Merge circular intervals; None when they cover the full circle.
    The owner kept for each merged span is the owner of its start edge."""
    two_pi = 2 * math.pi
    # Unroll: represent each span as (start, sweep) with sweep in (0, 2pi).
    events = []
    for s, e, owner in spans:
        sweep = (e - s) % two_pi
        if sweep == 0:
            sweep = two_pi
        events.append((s, sweep, owner))
    events.sort()
    merged: list[list] = []
    for s, sweep, owner in events:
        e = s + sweep
        if merged and s <= merged[-1][1] + 1e-12:
            if e > merged[-1][1]:
                merged[-1][1] = e
        else:
            merged.append([s, e, owner])
    # Wrap-around: last span may absorb the first.
    while len(merged) > 1 and merged[-1][1] >= merged[0][0] + two_pi - 1e-12:
        if merged[-1][1] - two_pi > merged[0][1]:
            merged[0][1] = merged[-1][1] - two_pi
        merged[0][0] = min(merged[0][0], merged[-1][0] - two_pi)
        merged[0][2] = merged[-1][2]
        merged.pop()
    if len(merged) == 1 and merged[0][1] - merged[0][0] >= two_pi - 1e-12:
        return None
    return [(s % two_pi, e % two_pi, owner) for s, e, owner in merged]


def _complement(merged: list[tuple[float, float, int]]
                ) -> list[tuple[float, float, int]]:
    """Free arcs between merged covered spans: (start, end, owner of the
    covered span starting at end)."""
    two_pi = 2 * math.pi
    ordered = sorted(merged)
    out = []
    for k, (s, e, owner) in enumerate(ordered):
        prev_end = ordered[k - 1][1]
        gap = (s - prev_end) % two_pi
        if gap > 1e-12:
            out.append((prev_end % two_pi, s % two_pi, owner))
    return out


def _sample_arc(circle: tuple[float, float, float], s: float, e: float
                ) -> list[tuple[float, float]]:
    x, y, r = circle
    sweep = (e - s) % (2 * math.pi)
    if sweep == 0:
        sweep = 2 * math.pi
    steps = max(2, int(math.ceil(math.degrees(sweep) / OUTLINE_STEP_DEG)))
    return [(x + r * math.cos(s + sweep * t / steps),
             y + r * math.sin(s + sweep * t / steps)) for t in range(steps + 1)]


def _sample_full_circle(circle: tuple[float, float, float]
                        ) -> list[tuple[float, float]]:
    x, y, r = circle
    steps = int(360 / OUTLINE_STEP_DEG)
    return [(x + r * math.cos(2 * math.pi * t / steps),
             y + r * math.sin(2 * math.pi * t / steps)) for t in range(steps)]


def _find_arc_key(unused: dict, circle: int, angle: float, start_key) -> tuple | None:
    if start_key[0] == circle and abs(_ang_diff(start_key[1], angle)) < 1e-5:
        return start_key
    for (ci, s_rounded) in unused:
        if ci == circle and abs(_ang_diff(s_rounded, angle)) < 1e-5:
            return (ci, s_rounded)
    return None


def _ang_diff(a: float, b: float) -> float:
    return (a - b + math.pi) % (2 * math.pi) - math.pi


def geometry_as_json(geometry: RippleGeometry) -> dict:
    return {
        "n_itemsets": geometry.n_itemsets,
        "circles": [{"x": c.x, "y": c.y, "r": c.r,
                     "signature": [int(b) for b in c.signature]}
                    for c in geometry.circles],
        "dots": [{"item_id": d.item_id, "x": d.x, "y": d.y, "r": d.r,
                  "shape": d.shape, "fill": d.fill, "color_value": d.color_value}
                 for d in geometry.dots],
        "aggregated": [{"circle_index": m.circle_index, "group": m.group,
                        "beneficial": m.beneficial, "count": m.count,
                        "x": m.x, "y": m.y}
                       for m in geometry.aggregated],
    }
