// View state and its URL round-trip, so an analysis view is shareable.

export type Mode = "compact" | "parallel" | "comparison";

export interface ViewState {
  mode: Mode;
  models: string[];
  focusedCollection: number | null;
  highlightedItemset: string | null;
  selected: string[];
  expanded: string[];
  tau: number;
}

export function defaultViewState(model: string): ViewState {
  return {
    mode: "compact",
    models: [model],
    focusedCollection: null,
    highlightedItemset: null,
    selected: [],
    expanded: [],
    tau: 0.25,
  };
}

export function validateViewState(state: ViewState): string[] {
  const problems: string[] = [];
  if (state.mode === "comparison" && state.models.length !== 2) {
    problems.push("comparison mode requires exactly 2 models");
  }
  if (state.mode !== "comparison" && state.models.length !== 1) {
    problems.push(`${state.mode} mode shows exactly 1 model`);
  }
  if (state.highlightedItemset !== null && state.focusedCollection === null) {
    problems.push("highlighted itemset requires a focused collection");
  }
  if (!(state.tau > 0 && state.tau < 1)) {
    problems.push("tau must be in (0, 1)");
  }
  return problems;
}

export function stateToQuery(state: ViewState): string {
  const params = new URLSearchParams();
  params.set("mode", state.mode);
  params.set("models", state.models.join(","));
  params.set("tau", String(state.tau));
  if (state.focusedCollection !== null) {
    params.set("focus", String(state.focusedCollection));
  }
  if (state.highlightedItemset !== null) {
    params.set("hl", state.highlightedItemset);
  }
  if (state.selected.length) {
    params.set("sel", state.selected.join("|"));
  }
  if (state.expanded.length) {
    params.set("exp", state.expanded.join("|"));
  }
  return params.toString();
}

export function stateFromQuery(query: string): ViewState {
  const params = new URLSearchParams(query);
  const models = (params.get("models") ?? "").split(",").filter((m) => m.length > 0);
  const focus = params.get("focus");
  return {
    mode: (params.get("mode") as Mode) ?? "compact",
    models,
    focusedCollection: focus === null ? null : Number(focus),
    highlightedItemset: params.get("hl"),
    selected: (params.get("sel") ?? "").split("|").filter((s) => s.length > 0),
    expanded: (params.get("exp") ?? "").split("|").filter((s) => s.length > 0),
    tau: Number(params.get("tau") ?? "0.25"),
  };
}
