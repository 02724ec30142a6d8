// Ripple renderer: draws the engine's circles/dots/marks verbatim (no
// layout logic client-side) and computes only the vertical placement of
// whole ripple groups next to their matrix rows.

import { rdColor } from "./theme.js";
import type { GeometryPayload } from "./types.js";
import { h, VNode } from "./vdom.js";

export interface RippleHandlers {
  onClickRipple(collectionIndex: number): void;
}

export function renderRippleSet(
  geometry: GeometryPayload,
  collectionIndex: number,
  highlightItemset: number | null,
  handlers: RippleHandlers,
): VNode {
  const children: VNode[] = [];
  for (const [i, c] of geometry.circles.entries()) {
    const highlighted = highlightItemset !== null && c.signature[highlightItemset] === 1;
    children.push(
      h("circle", {
        class: highlighted ? "atom atom-highlight" : "atom",
        "data-circle": i,
        "data-signature": c.signature.join(""),
        cx: c.x,
        cy: c.y,
        r: c.r,
        fill: "#fafafa",
        stroke: "#888",
      }),
    );
  }
  for (const d of geometry.dots) {
    const common = {
      class: `dot dot-${d.shape} dot-${d.fill}`,
      "data-item": d.item_id,
      fill: d.fill === "solid" ? rdColor(d.color_value) : "none",
      stroke: rdColor(d.color_value),
    };
    if (d.shape === "circle") {
      children.push(h("circle", { ...common, cx: d.x, cy: d.y, r: d.r }));
    } else {
      children.push(
        h("rect", {
          ...common,
          x: d.x - d.r,
          y: d.y - d.r,
          width: 2 * d.r,
          height: 2 * d.r,
        }),
      );
    }
  }
  for (const m of geometry.aggregated) {
    children.push(
      h(
        "text",
        {
          class: `agg-mark agg-${m.group} ${m.beneficial ? "agg-beneficial" : "agg-non-beneficial"}`,
          x: m.x,
          y: m.y,
        },
        [h("tspan", { class: "datum" }, [String(m.count)])],
      ),
    );
  }
  for (const loop of geometry.outlines ?? []) {
    const d = loop.map(([x, y], i) => `${i === 0 ? "M" : "L"}${x},${y}`).join(" ") + " Z";
    children.push(h("path", { class: "itemset-outline", d, fill: "none" }));
  }
  return h(
    "g",
    { class: "rippleset", "data-collection": collectionIndex },
    children,
    { click: () => handlers.onClickRipple(collectionIndex) },
  );
}

/**
 * Compact mode: greedy top-to-bottom placement minimizing the summed
 * vertical distance between each ripple group and its root row, subject
 * to groups not overlapping.
 */
export function placeCompact(rowCenters: number[], heights: number[], gap = 8): number[] {
  const out: number[] = [];
  let cursor = -Infinity;
  rowCenters.forEach((rowY, i) => {
    const preferredTop = rowY - heights[i] / 2;
    const top = Math.max(preferredTop, cursor);
    out.push(top);
    cursor = top + heights[i] + gap;
  });
  return out;
}

/** Parallel mode: every group sits exactly at its root row. */
export function placeParallel(rowCenters: number[], heights: number[]): number[] {
  return rowCenters.map((rowY, i) => rowY - heights[i] / 2);
}

export interface ComparisonBand {
  resolvingKey: string;
  left: number | null;
  right: number | null;
}

/**
 * Comparison mode: collections with the same resolving key share one
 * horizontal band; keys unique to one model keep their own band.
 */
export function alignComparison(
  aligned: { resolving_key: string; index_a: number | null; index_b: number | null }[],
): ComparisonBand[] {
  return aligned.map((entry) => ({
    resolvingKey: entry.resolving_key,
    left: entry.index_a,
    right: entry.index_b,
  }));
}
