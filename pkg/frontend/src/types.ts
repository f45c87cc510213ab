/**
 * Wire types for the /v1 decision-service API.
 *
 * The UI never computes decision numbers itself; everything rendered is a
 * field of one of these payloads.
 */

export interface AttributeValue {
  measured?: number;
  unit?: string;
  text?: string;
}

export interface AlternativeDoc {
  id: string;
  name: string;
  attributes?: Record<string, AttributeValue>;
}

export interface ScaleDoc {
  type: 'nominal' | 'binary' | 'ratio';
  labels?: string[];
  yes_label?: string;
  no_label?: string;
  unit?: string;
  lower_bound?: number;
}

export interface CriterionDoc {
  id: string;
  question: string;
  kind: 'qualitative' | 'quantitative';
  category: 'benefit' | 'opportunity' | 'cost' | 'risk';
  scale?: ScaleDoc;
  value_map?: Record<string, number>;
  data_source?: 'direct' | 'judged';
  attribute?: string;
  requirement_only?: boolean;
}

export interface RequirementDoc {
  criterion_id: string;
  bound: 'minimum' | 'maximum';
  threshold: number;
}

export interface MethodDoc {
  method?: 'anp' | 'saw';
  criteria_weights?: Record<string, number>;
  bocr_weights?: Record<string, number> | null;
  bocr_formula?: 'multiplicative' | 'additive' | null;
  cr_threshold?: number;
  relax_bound_pairing?: boolean;
}

export interface ScenarioDoc {
  schema_version: number;
  id: string;
  title: string;
  description?: string;
  goals?: string[];
  alternatives: AlternativeDoc[];
  criteria: CriterionDoc[];
  requirements?: RequirementDoc[];
  network?: unknown;
  judgments?: Record<string, { i: string; j: string; ratio: number }[]>;
  method?: MethodDoc;
}

export interface ConsistencyReport {
  lambda_max: number;
  ci: number;
  ri: number;
  cr: number;
  acceptable: boolean;
}

export interface MatrixProgress {
  nodes: string[];
  required: number;
  given: number;
  missing_pairs: [string, string][];
  consistency: ConsistencyReport | null;
  worst_triad: string[] | null;
}

export interface RankingEntry {
  rank: number;
  alternative: string;
  score: number;
}

export interface RequirementViolation {
  criterion_id: string;
  bound: string;
  threshold: number;
  observed: number;
}

export interface ExcludedAlternative {
  alternative: string;
  violations: RequirementViolation[];
}

export interface EvaluationResult {
  schema_version: number;
  method: string;
  outcome: 'ok' | 'no_feasible_alternatives';
  scores: Record<string, number>;
  ranking: RankingEntry[];
  score_ratios: Record<string, number>;
  feasible: string[];
  excluded: ExcludedAlternative[];
  consistency: ({ matrix: string } & ConsistencyReport)[];
  warnings: string[];
}

export interface SessionSnapshot {
  session_id: string;
  revision: number;
  scenario: ScenarioDoc;
  elicitation: Record<string, MatrixProgress>;
  result: { revision: number; body: EvaluationResult } | null;
}

export interface SweepSample {
  weight: number;
  scores: Record<string, number>;
  ranking: RankingEntry[];
}

export interface SensitivitySweep {
  criterion_id: string;
  baseline_weight: number | null;
  samples: SweepSample[];
  reversal_points: number[];
}

export interface JudgmentAccepted {
  revision: number;
  matrix: string;
  progress: MatrixProgress;
}

export interface ApiError {
  error: {
    code: string;
    [key: string]: unknown;
  };
}

export interface ViolationDetail {
  code: string;
  location: string;
  message: string;
}
