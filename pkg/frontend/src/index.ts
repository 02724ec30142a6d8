export { ApiClient, ApiError } from "./api.js";
export { App } from "./app.js";
export { renderMatrix } from "./matrix.js";
export { renderMitigationPanel } from "./mitigation.js";
export { alignComparison, placeCompact, placeParallel, renderRippleSet } from "./rippleset.js";
export { renderScatter } from "./scatter.js";
export {
  defaultViewState,
  stateFromQuery,
  stateToQuery,
  validateViewState,
} from "./state.js";
export * from "./types.js";
export { byClass, findAll, fire, h, renderToString, textContent } from "./vdom.js";
