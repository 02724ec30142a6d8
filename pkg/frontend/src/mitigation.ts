// Side panel for reject-option mitigation: per-itemset rd before/after
// bars, accuracy delta and reverse-discrimination warnings. "preview"
// never mutates the session; "apply" commits and yields a "+U" model.

import { rdColor } from "./theme.js";
import type { MitigatePayload } from "./types.js";
import { h, VNode } from "./vdom.js";

export interface MitigationHandlers {
  onPreview(): void;
  onApply(): void;
}

export function renderMitigationPanel(
  selected: string[],
  preview: MitigatePayload | null,
  handlers: MitigationHandlers,
): VNode {
  const children: VNode[] = [
    h("text", { class: "panel-title", x: 0, y: 12 }, ["mitigation"]),
    h("text", { class: "selection-count", x: 0, y: 28 }, [
      h("tspan", { class: "datum" }, [String(selected.length)]),
      " itemsets selected",
    ]),
  ];

  if (preview) {
    preview.report.itemsets
      .filter((o) => preview.plan.selected.includes(o.canonical_key))
      .forEach((o, i) => {
        const y = 48 + i * 34;
        children.push(
          h("g", { class: "rd-bars", "data-key": o.canonical_key, transform: `translate(0,${y})` }, [
            h("text", { class: "rd-label", x: 0, y: 0 }, [o.canonical_key || "(all items)"]),
            bar("rd-before", o.rd_before, 8),
            bar("rd-after", o.rd_after, 20),
          ]),
        );
      });
    const base = 48 + preview.report.itemsets.length * 34;
    children.push(
      h("text", { class: "accuracy", x: 0, y: base }, [
        "accuracy ",
        h("tspan", { class: "datum accuracy-before" }, [String(preview.report.accuracy_before)]),
        " → ",
        h("tspan", { class: "datum accuracy-after" }, [String(preview.report.accuracy_after)]),
        " with ",
        h("tspan", { class: "datum flip-count" }, [String(preview.report.flip_count)]),
        " flips",
      ]),
    );
    if (preview.report.reverse_discrimination_count > 0) {
      children.push(
        h("text", { class: "reverse-warning", x: 0, y: base + 16, fill: "#b00" }, [
          "reverse discrimination on ",
          h("tspan", { class: "datum" }, [String(preview.report.reverse_discrimination_count)]),
          " itemsets",
        ]),
      );
    }
  }

  const canPreview = selected.length > 0;
  const canApply = canPreview && preview !== null;
  children.push(
    h(
      "g",
      { class: canPreview ? "button preview-button" : "button preview-button disabled" },
      [h("text", {}, ["preview"])],
      canPreview ? { click: () => handlers.onPreview() } : {},
    ),
    h(
      "g",
      { class: canApply ? "button apply-button" : "button apply-button disabled" },
      [h("text", {}, ["apply"])],
      canApply ? { click: () => handlers.onApply() } : {},
    ),
  );
  return h("g", { class: "mitigation-panel" }, children);
}

function bar(cls: string, rd: number, y: number): VNode {
  return h(
    "g",
    { class: cls, transform: `translate(0,${y})` },
    [
      h("rect", { x: 0, y: -7, width: Math.abs(rd) * 120, height: 8, fill: rdColor(rd) }),
      h("text", { class: "bar-value", x: Math.abs(rd) * 120 + 4, y: 0 }, [
        h("tspan", { class: "datum" }, [String(rd)]),
      ]),
    ],
  );
}
