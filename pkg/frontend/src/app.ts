// Top-level wiring: holds the ViewState, fetches payloads, and renders
// the three coordinated views. Responses older than the newest revision
// are discarded, so rapid slider edits cannot interleave stale reads.

import { ApiClient } from "./api.js";
import { renderMatrix } from "./matrix.js";
import { renderMitigationPanel } from "./mitigation.js";
import { alignComparison, placeCompact, placeParallel, renderRippleSet } from "./rippleset.js";
import { renderScatter, ScatterSeries } from "./scatter.js";
import { defaultViewState, stateFromQuery, stateToQuery, validateViewState, ViewState } from "./state.js";
import type {
  ComparePayload,
  GeometryPayload,
  HistogramsPayload,
  MitigatePayload,
  ResultPayload,
} from "./types.js";
import { h, VNode } from "./vdom.js";

export class App {
  state: ViewState;
  models: string[] = [];
  results = new Map<string, ResultPayload>();
  histograms: HistogramsPayload | null = null;
  geometries = new Map<string, GeometryPayload>();
  comparison: ComparePayload | null = null;
  mitigationPreview: MitigatePayload | null = null;
  renderCount = 0;

  constructor(public api: ApiClient, initialModel: string) {
    this.state = defaultViewState(initialModel);
  }

  get primaryModel(): string {
    return this.state.models[0];
  }

  async load(): Promise<void> {
    const model = this.primaryModel;
    const info = await this.api.session();
    this.models = info.models;
    const [results, histograms] = await Promise.all([
      this.api.results(model),
      this.api.histograms(model),
    ]);
    if (!this.api.isStale(results)) {
      this.results.set(model, results);
      this.state.tau = results.config.tau;
    }
    if (!this.api.isStale(histograms)) {
      this.histograms = histograms;
    }
    if (this.state.mode === "comparison") {
      const [other, cmp] = await Promise.all([
        this.api.results(this.state.models[1]),
        this.api.compare(this.state.models[0], this.state.models[1]),
      ]);
      if (!this.api.isStale(other)) this.results.set(this.state.models[1], other);
      if (!this.api.isStale(cmp)) this.comparison = cmp;
    }
    this.renderCount += 1;
  }

  async loadGeometry(collection: number, outline?: number): Promise<void> {
    const geo = await this.api.geometry(this.primaryModel, collection, { outline });
    if (!this.api.isStale(geo)) {
      this.geometries.set(`${this.primaryModel}/${collection}`, geo);
    }
  }

  /** Dragging an attribute across the resolving boundary: one PATCH, then reload. */
  async changeResolving(resolving: string[]): Promise<void> {
    await this.api.patchConfig({ resolving, allow_empty_resolving: resolving.length === 0 });
    this.results.clear();
    this.geometries.clear();
    this.comparison = null;
    await this.load();
  }

  async changeTau(tau: number): Promise<void> {
    await this.api.patchConfig({ tau });
    this.state.tau = tau;
    this.results.clear();
    this.geometries.clear();
    await this.load();
  }

  async previewMitigation(tauTarget: number): Promise<void> {
    this.mitigationPreview = await this.api.mitigate(
      this.primaryModel, this.state.selected, tauTarget, true);
  }

  async applyMitigation(tauTarget: number): Promise<void> {
    const resp = await this.api.mitigate(
      this.primaryModel, this.state.selected, tauTarget, false);
    this.mitigationPreview = resp;
    this.results.clear();
    this.geometries.clear();
    await this.load();
  }

  shareUrl(): string {
    return `#${stateToQuery(this.state)}`;
  }

  restore(query: string): void {
    const state = stateFromQuery(query);
    const problems = validateViewState(state);
    if (problems.length) {
      throw new Error(problems.join("; "));
    }
    this.state = state;
  }

  render(): VNode {
    const result = this.results.get(this.primaryModel);
    if (!result || !this.histograms) {
      return h("svg", { class: "app loading" }, [h("text", {}, ["loading"])]);
    }
    const series: ScatterSeries[] = this.state.models
      .filter((m) => this.results.has(m))
      .map((m) => ({ model: m, points: this.results.get(m)!.scatter }));
    const scatter = renderScatter(
      series,
      this.state.tau,
      this.state.mode === "comparison" ? "superposition" : "single",
      {
        onTauChange: (tau) => void this.changeTau(tau),
        onSelectPoint: (key) => {
          if (!this.state.selected.includes(key)) this.state.selected.push(key);
        },
      },
    );
    const matrix = renderMatrix(result, this.histograms, this.state.expanded, {
      onResolvingChange: (resolving) => void this.changeResolving(resolving),
      onToggleExpand: (key) => {
        const i = this.state.expanded.indexOf(key);
        if (i >= 0) this.state.expanded.splice(i, 1);
        else this.state.expanded.push(key);
      },
      onHoverRow: (key) => (this.state.highlightedItemset = key),
      onClickRow: (key) => {
        const coll = result.collections.findIndex((c) =>
          c.itemsets.some((it) => it.canonical_key === key));
        if (coll >= 0) this.state.focusedCollection = coll;
      },
      onSelectRow: (key) => {
        if (!this.state.selected.includes(key)) this.state.selected.push(key);
      },
    });

    const ripples: VNode[] = [];
    const rowCenters = result.collections.map((_, i) => 80 + i * 120);
    const heights = result.collections.map((_, i) => {
      const geo = this.geometries.get(`${this.primaryModel}/${i}`);
      if (!geo) return 100;
      const ys = geo.circles.map((c) => c.y);
      const rs = geo.circles.map((c) => c.r);
      return Math.max(...ys.map((y, k) => y + rs[k])) - Math.min(...ys.map((y, k) => y - rs[k]));
    });
    const tops = this.state.mode === "parallel"
      ? placeParallel(rowCenters, heights)
      : placeCompact(rowCenters, heights);
    result.collections.forEach((coll, i) => {
      const geo = this.geometries.get(`${this.primaryModel}/${i}`);
      if (!geo) return;
      const highlight = this.state.highlightedItemset === null
        ? -1
        : coll.itemsets.findIndex((it) => it.canonical_key === this.state.highlightedItemset);
      ripples.push(
        h("g", { class: "ripple-slot", transform: `translate(640,${tops[i]})` }, [
          renderRippleSet(geo, i, highlight >= 0 ? highlight : null, {
            onClickRipple: (idx) => {
              this.state.focusedCollection = idx;
              coll.itemsets.forEach((it) => {
                if (!this.state.expanded.includes(it.canonical_key)) {
                  this.state.expanded.push(it.canonical_key);
                }
              });
            },
          }),
        ]),
      );
    });

    const panel = renderMitigationPanel(this.state.selected, this.mitigationPreview, {
      onPreview: () => void this.previewMitigation(this.state.tau),
      onApply: () => void this.applyMitigation(this.state.tau),
    });

    const chips = h(
      "g",
      { class: "model-chips" },
      this.models.map((m, i) =>
        h("text", { class: "model-chip", "data-model": m, x: i * 90, y: 12 }, [m])),
    );
    const bands = this.comparison ? alignComparison(this.comparison.aligned_collections) : [];
    return h("svg", { class: "app", "data-mode": this.state.mode, "data-bands": bands.length }, [
      chips,
      h("g", { class: "scatter-slot", transform: "translate(0,20)" }, [scatter]),
      h("g", { class: "matrix-slot", transform: "translate(0,300)" }, [matrix]),
      h("g", { class: "ripple-column" }, ripples),
      h("g", { class: "panel-slot", transform: "translate(1080,0)" }, [panel]),
    ]);
  }
}
