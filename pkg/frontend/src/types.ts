// Wire shapes of the query service. Field names mirror the JSON exactly.

export interface ResultTable {
  columns: string[];
  rows: string[][];
}

export interface MappingStep {
  kind: "trim" | "match";
  text: string;
  symbol?: string;
}

export interface ElementRecord {
  category: string;
  symbol: string;
  description: string;
  phrase?: string;
  start_order?: number;
  interval_index?: number;
}

export interface Trace {
  question: string;
  values: { text: string; anchor: number }[] | null;
  remainder: string | null;
  raw_tokens: string[] | null;
  tokens: { order: number; word: string }[] | null;
  unknown_words: string[] | null;
  escaped_tokens: { order: number; word: string }[] | null;
  mapping: MappingStep[] | null;
  elements: ElementRecord[] | null;
  counts: Record<string, number> | null;
  template: string | null;
  builder: string | null;
  sql: string[] | null;
  results: ResultTable[] | null;
}

export interface QuerySuccess {
  sql: string[];
  template: string;
  results: ResultTable[];
  trace: Trace;
}

export interface StageError {
  stage: string;
  message: string;
  detail: Record<string, unknown>;
}

export interface QueryFailure {
  error: StageError;
  trace: Trace;
}

export type QueryAnswer = QuerySuccess | QueryFailure;

export function isFailure(answer: QueryAnswer): answer is QueryFailure {
  return "error" in answer;
}

export interface SchemaAttribute {
  name: string;
  key: string;
}

export interface SchemaTable {
  name: string;
  attributes: SchemaAttribute[];
  default_attribute: string;
}

export interface SchemaInfo {
  tables: SchemaTable[];
}
