export type ResultDirection = "positive" | "negative";
export type AdjustmentTarget = "power" | "fpr";
export type AdjustmentMode = "set_to" | "add_delta";
export type SweepTarget = "power" | "fpr" | "prior";

export const ADJUSTMENT_CATEGORIES = [
  "blinding",
  "endpoint_softness",
  "dropout",
  "conflict_of_interest",
  "publication_venue",
  "replication",
  "mechanism_plausibility",
  "dose_or_duration",
  "population_dilution",
  "proxy_measurement",
  "misclassification",
  "residual_confounding",
  "multiple_analyses",
  "other",
] as const;
export type AdjustmentCategory = (typeof ADJUSTMENT_CATEGORIES)[number];

export const BASELINE_SOURCES = ["reported", "field_estimate", "power_module"] as const;
export type BaselineSource = (typeof BASELINE_SOURCES)[number];

export interface OperatingCharacteristics {
  power: number;
  fpr: number;
}

export interface Adjustment {
  target: AdjustmentTarget;
  mode: AdjustmentMode;
  value: number;
  rationale: string;
  category: AdjustmentCategory;
}

export interface AssessmentDocument {
  schema_version: number;
  id: string;
  title: string;
  description?: string;
  result_direction: ResultDirection;
  baseline: OperatingCharacteristics;
  baseline_provenance: { source: BaselineSource; note?: string };
  adjustments: Adjustment[];
  prior_p_h1: number;
  created_at?: string;
  tags?: string[];
}

export interface AuditStep {
  adjustment: Adjustment;
  before: OperatingCharacteristics;
  after: OperatingCharacteristics;
  clamped: boolean;
}

export interface WoeReport {
  schema_version: number;
  kind: "woe_report";
  assessment_id: string;
  result_direction: ResultDirection;
  effective: OperatingCharacteristics;
  lr_for_h1: number;
  woe_evidence: number;
  woe_prior: number;
  woe_total: number;
  posterior_p_h1: number;
  audit_trail: AuditStep[];
  flags: string[];
}

export interface SweepPoint {
  value: number;
  woe_total: number | null;
  posterior_p_h1: number | null;
  error: string | null;
}

export interface SweepResult {
  schema_version: number;
  kind: "sweep_result";
  target: SweepTarget;
  points: SweepPoint[];
}

export interface PowerEstimate {
  schema_version: number;
  kind: "power_estimate";
  power: number;
  method: string;
  warnings: string[];
  iterations?: number;
  mc_standard_error?: number;
}

export interface Conversion {
  schema_version: number;
  kind: "conversion";
  from: string;
  to: string;
  input: number;
  value: number;
}

export interface AdjustmentImpact {
  index: number;
  target: AdjustmentTarget;
  mode: AdjustmentMode;
  value: number;
  category: AdjustmentCategory;
  woe_without: number;
  delta_woe: number;
}

export interface ImpactsResult {
  schema_version: number;
  kind: "adjustment_impacts";
  woe_full: number;
  impacts: AdjustmentImpact[];
}

export interface ServiceError {
  code: "BadRequest" | "ValidationFailed" | "Unreachable" | "Internal";
  message: string;
  detail?: { field: string };
}

export function isServiceError(value: unknown): value is ServiceError {
  return (
    typeof value === "object" &&
    value !== null &&
    typeof (value as ServiceError).code === "string" &&
    typeof (value as ServiceError).message === "string"
  );
}

export function cloneDocument(doc: AssessmentDocument): AssessmentDocument {
  return JSON.parse(JSON.stringify(doc)) as AssessmentDocument;
}

export function freshDocument(): AssessmentDocument {
  return {
    schema_version: 1,
    id: "new-assessment",
    title: "Untitled assessment",
    result_direction: "positive",
    baseline: { power: 0.8, fpr: 0.05 },
    baseline_provenance: { source: "field_estimate" },
    adjustments: [],
    prior_p_h1: 0.5,
  };
}
