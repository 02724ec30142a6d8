import { describe, expect, it } from "vitest";

import { alignComparison, placeCompact, placeParallel, renderRippleSet } from "../src/rippleset.js";
import type { ComparePayload, GeometryPayload } from "../src/types.js";
import { byClass, fire } from "../src/vdom.js";
import { fixture } from "./helpers.js";

const geometry = () => fixture<GeometryPayload>("geometry_m1_0.json");

const noop = { onClickRipple: () => {} };

describe("ripple renderer", () => {
  it("draws engine circles and dots verbatim (no client layout)", () => {
    const geo = geometry();
    const node = renderRippleSet(geo, 0, null, noop);
    const atoms = byClass(node, "atom");
    expect(atoms.length).toBe(geo.circles.length);
    for (const [i, atom] of atoms.entries()) {
      expect(Number(atom.attrs.cx)).toBe(geo.circles[i].x);
      expect(Number(atom.attrs.cy)).toBe(geo.circles[i].y);
      expect(Number(atom.attrs.r)).toBe(geo.circles[i].r);
    }
    const dots = byClass(node, "dot");
    expect(dots.length).toBe(geo.dots.length);
    const squares = geo.dots.filter((d) => d.shape === "square").length;
    expect(dots.filter((d) => d.tag === "rect").length).toBe(squares);
    const hollow = geo.dots.filter((d) => d.fill === "hollow").length;
    expect(dots.filter((d) => d.attrs.fill === "none").length).toBe(hollow);
  });

  it("hover highlight marks the atoms of one itemset", () => {
    const geo = geometry();
    const node = renderRippleSet(geo, 0, 1, noop);
    const highlighted = byClass(node, "atom-highlight");
    const expected = geo.circles.filter((c) => c.signature[1] === 1).length;
    expect(highlighted.length).toBe(expected);
    expect(expected).toBeGreaterThan(0);
  });

  it("clicking the rippleset reports its collection for row expansion", () => {
    let clicked: number | null = null;
    const node = renderRippleSet(geometry(), 3, null, {
      onClickRipple: (idx) => (clicked = idx),
    });
    fire(node, "click");
    expect(clicked).toBe(3);
  });

  it("renders an outline path when the engine sends one", () => {
    const geo = fixture<GeometryPayload>("geometry_m1_0_outline0.json");
    const node = renderRippleSet(geo, 0, null, noop);
    const outlines = byClass(node, "itemset-outline");
    expect(outlines.length).toBe(geo.outlines!.length);
    expect(String(outlines[0].attrs.d).startsWith("M")).toBe(true);
    expect(String(outlines[0].attrs.d).endsWith("Z")).toBe(true);
  });

  it("renders aggregation marks when the budget is exceeded", () => {
    const geo = fixture<GeometryPayload>("geometry_m1_0_budget.json");
    const node = renderRippleSet(geo, 0, null, noop);
    const marks = byClass(node, "agg-mark");
    expect(marks.length).toBe(geo.aggregated.length);
    expect(marks.length).toBeGreaterThan(0);
  });
});

describe("ripple placement", () => {
  it("compact mode keeps groups at their rows when space allows", () => {
    expect(placeCompact([100, 300], [50, 50])).toEqual([75, 275]);
  });

  it("compact mode stacks greedily top to bottom without overlap", () => {
    const tops = placeCompact([100, 120, 380], [80, 80, 40], 10);
    expect(tops[0]).toBe(60);
    expect(tops[1]).toBe(150); // pushed below the first group
    expect(tops[2]).toBe(360); // free to sit at its row
    for (let i = 1; i < tops.length; i++) {
      expect(tops[i]).toBeGreaterThanOrEqual(tops[i - 1]);
    }
  });

  it("parallel mode aligns each group exactly with its row", () => {
    expect(placeParallel([100, 300], [50, 70])).toEqual([75, 265]);
  });

  it("comparison mode bands collections by resolving key", () => {
    const cmp = fixture<ComparePayload>("compare.json");
    const bands = alignComparison(cmp.aligned_collections);
    expect(bands.map((b) => b.resolvingKey)).toEqual(
      cmp.aligned_collections.map((a) => a.resolving_key),
    );
    const sales = bands.find((b) => b.resolvingKey === "dept=sales")!;
    expect(sales.left).not.toBeNull();
    expect(sales.right).not.toBeNull();
    const engOnly = bands.find((b) => b.resolvingKey === "dept=eng")!;
    expect(engOnly.left).toBeNull();
    expect(engOnly.right).toBe(0);
  });
});
