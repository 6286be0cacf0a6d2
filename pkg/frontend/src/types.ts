/** Wire types mirroring the service's document and result schemas. */

export type DisplayScale = "unit" | "percent";
export type AggregationMode = "additive" | "multiplicative";
export type AttributeKind = "direct" | "derived";
export type Direction = "higher_better" | "lower_better";
export type CurveShape = "linear" | "power" | "s_shape";

export interface CurveSpec {
  shape: CurveShape;
  gamma?: number;
}

export interface AttributeSpec {
  name: string;
  importance: number;
  kind: AttributeKind;
  direction?: Direction;
  range?: [number, number];
  curve?: CurveSpec;
}

export interface ScenarioSpec {
  probability: number;
  values: Record<string, number>;
}

export interface OptionSpec {
  name: string;
  values?: Record<string, number>;
  scenarios?: ScenarioSpec[];
}

export interface ProblemDocument {
  schema_version: "1";
  name: string;
  display_scale: DisplayScale;
  aggregation: AggregationMode;
  attributes: AttributeSpec[];
  options: OptionSpec[];
}

export interface ValidationIssue {
  severity: "error" | "warning";
  path: string;
  message: string;
}

export interface ValidationReport {
  ok: boolean;
  issues: ValidationIssue[];
}

export interface OptionResult {
  name: string;
  utility: number;
  display_utility: number;
  contributions: number[] | null;
  scenario_utilities: number[] | null;
}

export interface RankingEntry {
  option: string;
  rank: number;
  utility: number;
  display_utility: number;
  tied: boolean;
}

export interface EvaluationPayload {
  problem: string;
  display_scale: DisplayScale;
  aggregation: AggregationMode;
  attributes: string[];
  weights: number[];
  options: OptionResult[];
  ranking: RankingEntry[];
}

export interface SweepSample {
  t: number;
  ranking: RankingEntry[];
}

export interface SweepPayload {
  attribute: string;
  mode: "sweep";
  samples: SweepSample[];
}

export interface BreakpointEntry {
  t: number;
  left: string;
  right: string;
}

export interface CriticalPayload {
  attribute: string;
  mode: "critical";
  top_at_zero: string;
  top_at_one: string;
  breakpoints: BreakpointEntry[];
}

export interface WhatIfOverrides {
  importances?: Record<string, number>;
  values?: Record<string, Record<string, number>>;
}

export interface WhatIfDeltaEntry {
  option: string;
  utility_before: number;
  utility_after: number;
  delta: number;
  rank_before: number;
  rank_after: number;
}

export interface WhatIfPayload {
  overrides: { importances: Record<string, number>; values: Record<string, Record<string, number>> };
  before: EvaluationPayload;
  after: EvaluationPayload;
  deltas: WhatIfDeltaEntry[];
}

export interface StoredListing {
  id: string;
  name: string;
  revision: number;
  updated: string;
}
