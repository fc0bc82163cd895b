/** Payload shapes of the review service (see /api/schemas/{name}). */

export interface LemmaSummary {
  ref: string;
  lexicon: string;
  local_id: string;
  spellings: string[];
  pos: string | null;
  forms: Record<string, string[]>;
  roots: string[];
  mapped: boolean;
}

export interface QueueSide extends Partial<LemmaSummary> {
  ref: string;
  missing: boolean;
}

export interface Correspondence {
  id: number;
  l1: QueueSide;
  l2: QueueSide;
  provenance: string;
  status: "AUTO" | "CONFIRMED" | "REJECTED";
  relation: string;
  precision: number;
  suggested_relation: string;
  suggested_label: string;
  reviewer: string | null;
  timestamp: number;
}

export interface Page<T> {
  schema_version: string;
  page: number;
  page_size: number;
  total: number;
  items: T[];
}

export interface DecisionResult {
  schema_version: string;
  correspondence: Correspondence;
}

export interface LemmaCreated {
  schema_version: string;
  id: number;
  ref: string;
  warnings: string[];
}

export interface FieldError {
  field: string;
  message: string;
}

export interface RelationStats {
  schema_version: string;
  counts: Record<string, number>;
  labels: Record<string, string>;
  precisions: Record<string, number>;
  total: number;
}

export interface CoverageRow {
  key: string;
  counts: number[];
}

export interface CoverageStats {
  schema_version: string;
  sources: string[];
  nominal: CoverageRow[];
  nominal_total: CoverageRow;
  verb: CoverageRow[];
  verb_total: CoverageRow;
  functional_total: CoverageRow;
  grand_total: CoverageRow;
  corpora: {
    corpus_id: string;
    tokens_total: number;
    tokens_mapped: number;
    token_percent: number;
    lemmas_total: number;
    lemmas_mapped: number;
    lemma_percent: number;
  }[];
}

export interface LemmaPayload {
  spellings: string[];
  pos: string;
  gender?: string;
  number?: string;
  aspect?: string;
  person?: string;
  roots?: string[];
  augmentation?: string;
  transitivity?: string;
  dialect?: string;
  msa_counterpart?: number;
  all_senses_proper?: boolean;
}
