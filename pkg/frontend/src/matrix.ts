// Attribute matrix: a head row of per-attribute distributions, then one
// bordered block per collection (root row) holding the itemset rows in
// Jaccard order. Rows expand along the inclusion hierarchy. Dragging an
// attribute header out of / into the resolving zone issues one PATCH.

import { sqrtScale } from "./scale.js";
import { BENEFICIAL_BAR, NON_BENEFICIAL_BAR, RESOLVING_HIGHLIGHT, rdColor } from "./theme.js";
import type { CollectionJson, HistogramsPayload, ItemsetJson, ResultPayload } from "./types.js";
import { h, VNode } from "./vdom.js";

export interface MatrixHandlers {
  onResolvingChange(resolving: string[]): void;
  onToggleExpand(rowKey: string): void;
  onHoverRow(canonicalKey: string | null): void;
  onClickRow(canonicalKey: string): void;
  onSelectRow(canonicalKey: string): void;
}

const CELL_W = 64;
const CELL_H = 18;
const HEAD_H = 52;
const GLYPH_R = 9;
const LABEL_W = 72;

export function renderMatrix(
  result: ResultPayload,
  histograms: HistogramsPayload,
  expanded: string[],
  handlers: MatrixHandlers,
): VNode {
  const attrs = histograms.attributes;
  const resolving = result.config.resolving;
  const children: VNode[] = [renderHead(attrs.map((a) => a.name), resolving, histograms, handlers)];

  let yCursor = HEAD_H + 8;
  result.collections.forEach((coll, idx) => {
    const block = renderCollection(coll, idx, attrs, expanded, yCursor, handlers);
    children.push(block.node);
    yCursor = block.bottom + 10;
  });
  return h("g", { class: "matrix", "data-revision": result.revision }, children);
}

function renderHead(
  names: string[],
  resolving: string[],
  histograms: HistogramsPayload,
  handlers: MatrixHandlers,
): VNode {
  const cells = names.map((name, col) => {
    const attr = histograms.attributes[col];
    const isResolving = resolving.includes(name);
    const total = Math.max(1, ...attr.bins.map((b) => b.beneficial + b.non_beneficial));
    const binW = CELL_W / Math.max(1, attr.bins.length);
    const bars = attr.bins.flatMap((bin, i) => {
      const benefH = (bin.beneficial / total) * (HEAD_H - 16);
      const nonH = (bin.non_beneficial / total) * (HEAD_H - 16);
      return [
        h("rect", {
          class: "hist-bar hist-beneficial",
          "data-count": bin.beneficial,
          x: i * binW + 1,
          y: HEAD_H - 4 - benefH,
          width: binW - 2,
          height: benefH,
          fill: BENEFICIAL_BAR,
        }, [h("title", {}, [h("tspan", { class: "datum" }, [String(bin.beneficial)])])]),
        h("rect", {
          class: "hist-bar hist-non-beneficial",
          "data-count": bin.non_beneficial,
          x: i * binW + 1,
          y: HEAD_H - 4 - benefH - nonH,
          width: binW - 2,
          height: nonH,
          fill: NON_BENEFICIAL_BAR,
        }, [h("title", {}, [h("tspan", { class: "datum" }, [String(bin.non_beneficial)])])]),
      ];
    });
    const label = h(
      "text",
      {
        class: isResolving ? "attr-name resolving" : "attr-name",
        x: CELL_W / 2,
        y: 10,
        fill: isResolving ? RESOLVING_HIGHLIGHT : "#333",
      },
      [name],
    );
    return h(
      "g",
      {
        class: "head-cell",
        "data-attr": name,
        "data-resolving": isResolving ? 1 : 0,
        transform: `translate(${LABEL_W + col * CELL_W},0)`,
      },
      [label, ...bars],
      {
        // drag an attribute header across the resolving-zone boundary
        dropout: () => handlers.onResolvingChange(resolving.filter((r) => r !== name)),
        dropin: () => handlers.onResolvingChange([...resolving, name].sort()),
      },
    );
  });
  return h("g", { class: "matrix-head" }, cells);
}

interface Block {
  node: VNode;
  bottom: number;
}

function renderCollection(
  coll: CollectionJson,
  index: number,
  attrs: HistogramsPayload["attributes"],
  expanded: string[],
  top: number,
  handlers: MatrixHandlers,
): Block {
  const parents = new Map<number, number>();
  coll.hierarchy.forEach(([p, c]) => parents.set(c, p));
  const roots = new Set(coll.itemsets.map((_, i) => i).filter((i) => !parents.has(i)));
  const expandedSet = new Set(expanded);

  const visible = coll.row_order.filter((i) => {
    let node = i;
    while (parents.has(node)) {
      node = parents.get(node)!;
      if (!expandedSet.has(rowKey(coll, node))) return false;
    }
    return true;
  });

  const rows: VNode[] = [];
  visible.forEach((itemsetIdx, rowNo) => {
    rows.push(renderRow(coll, itemsetIdx, attrs, rowNo, roots.has(itemsetIdx),
      expandedSet.has(rowKey(coll, itemsetIdx)), handlers));
  });

  const height = 24 + visible.length * CELL_H;
  const width = LABEL_W + attrs.length * CELL_W;
  const node = h(
    "g",
    {
      class: "collection root-row",
      "data-collection": index,
      "data-resolving-key": coll.resolving_key,
      transform: `translate(0,${top})`,
    },
    [
      h("rect", { class: "collection-border", x: 0, y: 0, width, height, fill: "none" }),
      h("text", { class: "collection-total", x: 4, y: 14 }, [
        h("tspan", { class: "datum", "data-total": coll.total_items }, [String(coll.total_items)]),
      ]),
      h("text", { class: "collection-key", x: 4, y: height - 6 }, [coll.resolving_key]),
      h("g", { class: "rows", transform: "translate(0,20)" }, rows),
    ],
  );
  return { node, bottom: top + height };
}

function rowKey(coll: CollectionJson, itemsetIdx: number): string {
  return coll.itemsets[itemsetIdx].canonical_key;
}

function renderRow(
  coll: CollectionJson,
  itemsetIdx: number,
  attrs: HistogramsPayload["attributes"],
  rowNo: number,
  isRoot: boolean,
  isExpanded: boolean,
  handlers: MatrixHandlers,
): VNode {
  const it = coll.itemsets[itemsetIdx];
  const hasChildren = coll.hierarchy.some(([p]) => p === itemsetIdx);
  const size = it.sizes.protected + it.sizes.nonprotected;
  const children: VNode[] = [glyph(it, size)];

  if (hasChildren) {
    children.push(
      h(
        "text",
        { class: "expand-icon", x: GLYPH_R * 2 + 12, y: CELL_H / 2 + 4 },
        [isExpanded ? "−" : "+"],
        { click: () => handlers.onToggleExpand(it.canonical_key) },
      ),
    );
  }

  attrs.forEach((attr, col) => {
    const literal = it.literals[attr.name];
    const cellX = LABEL_W + col * CELL_W;
    children.push(
      h("rect", {
        class: "condition-cell",
        x: cellX,
        y: 2,
        width: CELL_W - 4,
        height: CELL_H - 4,
        fill: "#f2f2f2",
      }),
    );
    if (literal !== undefined) {
      const binIdx = attr.bins.findIndex((b) => b.category === literal);
      const n = Math.max(1, attr.bins.length);
      const solidW = (CELL_W - 4) / n;
      children.push(
        h("rect", {
          class: "condition-solid",
          "data-attr": attr.name,
          "data-value": literal,
          x: cellX + Math.max(0, binIdx) * solidW,
          y: 2,
          width: solidW,
          height: CELL_H - 4,
          fill: rdColor(it.rd),
        }, [h("title", {}, [literal])]),
      );
    }
  });

  return h(
    "g",
    {
      class: isRoot ? "itemset-row row-root" : "itemset-row row-child",
      "data-key": it.canonical_key,
      "data-rd": it.rd,
      transform: `translate(0,${rowNo * CELL_H})`,
    },
    children,
    {
      mouseenter: () => handlers.onHoverRow(it.canonical_key),
      mouseleave: () => handlers.onHoverRow(null),
      click: () => handlers.onClickRow(it.canonical_key),
      select: () => handlers.onSelectRow(it.canonical_key),
    },
  );
}

/** Size + two probability arcs: outer = P(pred=1 | A=0, s), inner = A=1. */
function glyph(it: ItemsetJson, size: number): VNode {
  const r = 3 + sqrtScale(4000, GLYPH_R)(size);
  const outerAngle = 360 * it.p_nonprotected;
  const innerAngle = 360 * it.p_protected;
  return h(
    "g",
    { class: "glyph", transform: `translate(${GLYPH_R + 2},${CELL_H / 2})` },
    [
      h("circle", { class: "glyph-base", r, fill: "none", stroke: "#ddd" }),
      arc("glyph-outer", r, outerAngle, it.p_nonprotected),
      arc("glyph-inner", r * 0.62, innerAngle, it.p_protected),
      h("title", {}, [
        "size ",
        h("tspan", { class: "datum" }, [String(size)]),
        ", rd ",
        h("tspan", { class: "datum" }, [String(it.rd)]),
      ]),
    ],
  );
}

function arc(cls: string, r: number, angleDeg: number, p: number): VNode {
  const sweep = Math.min(angleDeg, 359.999);
  const rad = ((sweep - 90) * Math.PI) / 180;
  const x = r * Math.cos(rad);
  const y = r * Math.sin(rad);
  const large = sweep > 180 ? 1 : 0;
  return h("path", {
    class: cls,
    "data-angle": angleDeg,
    "data-p": p,
    d: `M0,${-r} A${r},${r} 0 ${large} 1 ${x},${y}`,
    fill: "none",
  });
}
