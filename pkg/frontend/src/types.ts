export interface QuestionView {
  id: string;
  scenario: number;
  kind: 'inconsistency' | 'value_request' | 'remeasure_request' | 'precedent_review';
  subject: string[];
  prompt: string;
  why: string;
  details: Record<string, unknown>;
}

/** Mirror of the server's session view; nothing else is ever rendered. */
export interface SessionView {
  id: string;
  user: string;
  domain: string;
  state: string;
  solution: string;
  evidence: Record<string, unknown>;
  pending_question: QuestionView | null;
  finalize_prompt: string | null;
  final_solution: string | null;
  transcript: Array<Record<string, unknown>>;
}

export interface SolutionInfo {
  id: string;
  label: string;
}

export interface ParameterInfo {
  name: string;
  kind: 'numeric' | 'ordinal' | 'categorical';
  units?: string;
  range?: [number, number];
  levels?: string[];
  labels?: string[];
  help?: string;
}

export interface DomainInfo {
  id: string;
  parameters: ParameterInfo[];
  solutions: SolutionInfo[];
}

export interface ErrorRow {
  precedent_id: string;
  proximity: number;
  decision: string;
  error_explanation: string | null;
  outcome_summary: string;
  recorded_at: string;
}

export interface SimilarResponse {
  rows: ErrorRow[];
  warning: ErrorRow | null;
}

export interface StatsWindow {
  start: string;
  end: string;
  user_cases: number;
  user_accuracy: number;
  cohort_cases: number;
  cohort_accuracy: number;
}

export interface PrecedentView {
  id: string;
  domain: string;
  case: Record<string, unknown>;
  decision: string;
  prognosis: string;
  outcome: string | null;
  matches_prognosis: boolean | null;
  discrepancy_explanation: string | null;
  error_explanation: string | null;
}

export type AnswerPayload =
  | { question_id: string; kind: 'value'; name: string; value: unknown }
  | { question_id: string; kind: 'decision'; solution: string }
  | { question_id: string; kind: 'ack' }
  | {
      question_id: string;
      kind: 'attach_precedent';
      attachment: Record<string, unknown>;
    };
