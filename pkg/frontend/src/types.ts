// Wire types of the audit service. Field names match the JSON payloads
// one-to-one; the client never derives statistics from them.

export interface ConfigJson {
  protected: string;
  protected_group: string;
  beneficial_class: number;
  tau: number;
  resolving: string[];
  proxies: string[];
  min_group_support: number;
  model_id: string;
}

export interface ItemsetJson {
  canonical_key: string;
  literals: Record<string, string>;
  rd: number;
  p_protected: number;
  p_nonprotected: number;
  sizes: { protected: number; nonprotected: number };
  context_attrs: string[];
}

export interface CollectionJson {
  resolving_key: string;
  total_items: number;
  itemsets: ItemsetJson[];
  hierarchy: [number, number][];
  row_order: number[];
}

export interface ScatterPointJson {
  canonical_key: string;
  rd: number;
  size: number;
}

export interface ResultPayload {
  config: ConfigJson;
  collections: CollectionJson[];
  scatter: ScatterPointJson[];
  revision: number;
}

export interface HistogramBin {
  category: string;
  beneficial: number;
  non_beneficial: number;
}

export interface HistogramAttribute {
  name: string;
  kind: string;
  role: string;
  resolving: boolean;
  bins: HistogramBin[];
}

export interface HistogramsPayload {
  attributes: HistogramAttribute[];
  revision: number;
}

export interface CircleJson {
  x: number;
  y: number;
  r: number;
  signature: number[];
}

export interface DotJson {
  item_id: number;
  x: number;
  y: number;
  r: number;
  shape: "circle" | "square";
  fill: "solid" | "hollow";
  color_value: number;
}

export interface AggregatedMarkJson {
  circle_index: number;
  group: "protected" | "nonprotected";
  beneficial: boolean;
  count: number;
  x: number;
  y: number;
}

export interface GeometryPayload {
  n_itemsets: number;
  circles: CircleJson[];
  dots: DotJson[];
  aggregated: AggregatedMarkJson[];
  outlines?: [number, number][][];
  revision: number;
}

export interface SharedItemsetJson {
  canonical_key: string;
  rd_a: number;
  rd_b: number;
  rd_delta: number;
  beneficial_a: { protected: number; nonprotected: number };
  beneficial_b: { protected: number; nonprotected: number };
}

export interface ComparePayload {
  model_a: string;
  model_b: string;
  aligned_collections: { resolving_key: string; index_a: number | null; index_b: number | null }[];
  shared: SharedItemsetJson[];
  unique_a: string[];
  unique_b: string[];
  revision: number;
}

export interface MitigatePayload {
  plan: {
    selected: string[];
    tau_target: number;
    flips: { item_id: number; old: number; new: number }[];
    flip_count: number;
  };
  report: {
    itemsets: { canonical_key: string; rd_before: number; rd_after: number }[];
    accuracy_before: number;
    accuracy_after: number;
    reverse_discrimination_count: number;
    flip_count: number;
  };
  new_model_id: string | null;
  revision: number;
}

export interface SessionInfo {
  session_id: string;
  revision: number;
  config: ConfigJson;
  models: string[];
  suggested_resolving: string[] | null;
  min_support: number;
  allow_empty_resolving: boolean;
}
