// Scatter overview: one mark per discriminatory itemset, x = risk
// difference, y = itemset size. Dual sliders on the x axis drive the tau
// threshold; two models can be overlaid (superposition) or drawn side by
// side (juxtaposition). Data numbers are echoed verbatim from the API.

import { linearScale } from "./scale.js";
import { rdColor } from "./theme.js";
import type { ScatterPointJson } from "./types.js";
import { h, VNode } from "./vdom.js";

export interface ScatterHandlers {
  onTauChange(tau: number): void;
  onSelectPoint(canonicalKey: string): void;
}

export interface ScatterSeries {
  model: string;
  points: ScatterPointJson[];
}

const WIDTH = 420;
const HEIGHT = 260;
const MARGIN = 36;

const MODEL_SHAPES = ["circle", "diamond"] as const;

export function renderScatter(
  series: ScatterSeries[],
  tau: number,
  layout: "single" | "superposition" | "juxtaposition",
  handlers: ScatterHandlers,
): VNode {
  if (layout === "juxtaposition" && series.length === 2) {
    return h("g", { class: "scatter-juxtaposed" }, [
      renderScatter([series[0]], tau, "single", handlers),
      h("g", { transform: `translate(${WIDTH + 24},0)` }, [
        renderScatter([series[1]], tau, "single", handlers),
      ]),
    ]);
  }

  const allPoints = series.flatMap((s) => s.points);
  const maxSize = Math.max(1, ...allPoints.map((p) => p.size));
  const x = linearScale([-1, 1], [MARGIN, WIDTH - MARGIN]);
  const y = linearScale([0, maxSize], [HEIGHT - MARGIN, MARGIN]);

  const children: (VNode | string)[] = [
    h("line", { class: "axis axis-x", x1: MARGIN, y1: HEIGHT - MARGIN, x2: WIDTH - MARGIN, y2: HEIGHT - MARGIN }),
    h("line", { class: "axis axis-y", x1: x(0), y1: MARGIN, x2: x(0), y2: HEIGHT - MARGIN }),
  ];

  if (allPoints.length === 0) {
    children.push(h("text", { class: "empty-hint", x: WIDTH / 2, y: HEIGHT / 2 }, [
      "no discriminatory itemsets at the current settings",
    ]));
  } else if (layout === "superposition" && series.length === 2) {
    children.push(...superposedMarks(series, x, y, handlers));
  } else {
    for (const s of series) {
      children.push(...seriesMarks(s, 0, x, y, handlers));
    }
  }

  children.push(slider("slider-low", -tau, x, handlers));
  children.push(slider("slider-high", tau, x, handlers));
  return h("g", { class: "scatter", "data-layout": layout }, children);
}

function seriesMarks(
  s: ScatterSeries,
  shapeIndex: number,
  x: (v: number) => number,
  y: (v: number) => number,
  handlers: ScatterHandlers,
): VNode[] {
  return s.points.map((p) =>
    mark(p, s.model, MODEL_SHAPES[shapeIndex], x, y, handlers),
  );
}

function mark(
  p: ScatterPointJson,
  model: string,
  shape: (typeof MODEL_SHAPES)[number],
  x: (v: number) => number,
  y: (v: number) => number,
  handlers: ScatterHandlers,
  badge = 0,
): VNode {
  const attrs = {
    class: `point point-${shape}`,
    "data-key": p.canonical_key,
    "data-model": model,
    "data-rd": p.rd,
    "data-size": p.size,
    cx: x(p.rd),
    cy: y(p.size),
    r: 4,
    fill: rdColor(p.rd),
  };
  const on = { click: () => handlers.onSelectPoint(p.canonical_key) };
  const children: (VNode | string)[] = [
    h("title", {}, [
      h("tspan", { class: "datum" }, [String(p.rd)]),
      " / ",
      h("tspan", { class: "datum" }, [String(p.size)]),
    ]),
  ];
  if (badge > 1) {
    children.push(h("text", { class: "badge", x: x(p.rd) + 5, y: y(p.size) - 5 }, [String(badge)]));
  }
  return h("circle", attrs, children, on);
}

function superposedMarks(
  series: ScatterSeries[],
  x: (v: number) => number,
  y: (v: number) => number,
  handlers: ScatterHandlers,
): VNode[] {
  // Coincident points (same rd and size in both models) merge into one
  // mark carrying a count badge.
  const [a, b] = series;
  const keyOf = (p: ScatterPointJson) => `${p.rd}@${p.size}`;
  const bByCoord = new Map<string, ScatterPointJson[]>();
  for (const p of b.points) {
    const list = bByCoord.get(keyOf(p)) ?? [];
    list.push(p);
    bByCoord.set(keyOf(p), list);
  }
  const out: VNode[] = [];
  const consumed = new Set<ScatterPointJson>();
  for (const p of a.points) {
    const twins = bByCoord.get(keyOf(p)) ?? [];
    const twin = twins.find((t) => !consumed.has(t));
    if (twin) {
      consumed.add(twin);
      out.push(mark(p, `${a.model}+${b.model}`, "circle", x, y, handlers, 2));
    } else {
      out.push(mark(p, a.model, "circle", x, y, handlers));
    }
  }
  for (const p of b.points) {
    if (!consumed.has(p)) {
      out.push(mark(p, b.model, "diamond", x, y, handlers));
    }
  }
  return out;
}

function slider(
  cls: string,
  value: number,
  x: ReturnType<typeof linearScale>,
  handlers: ScatterHandlers,
): VNode {
  return h(
    "g",
    { class: `slider ${cls}`, transform: `translate(${x(value)},${HEIGHT - MARGIN})` },
    [h("path", { d: "M0,0 L-5,10 L5,10 Z" })],
    {
      // detail: the x pixel the handle was dragged to
      drag: (detail) => {
        const px = typeof detail === "number" ? detail : Number(detail);
        handlers.onTauChange(Math.abs(x.invert(px)));
      },
    },
  );
}
