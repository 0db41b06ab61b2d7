/** Wire types of the analytics API. */

export interface FilterSetBody {
  authors?: string[];
  venues?: string[];
  publishers?: string[];
  types_of_paper?: string[];
  fields_of_study?: string[];
  access_types?: string[];
  year_range?: [number, number];
  citation_range?: [number, number];
}

export type TextualSlot =
  | "authors"
  | "venues"
  | "publishers"
  | "types_of_paper"
  | "fields_of_study"
  | "access_types";

export type NumericSlot = "year_range" | "citation_range";

export const TEXTUAL_SLOTS: TextualSlot[] = [
  "authors",
  "venues",
  "publishers",
  "types_of_paper",
  "fields_of_study",
  "access_types",
];

export interface YearSeries {
  years: [number, number][];
  na: number;
}

export interface GridRow {
  name: string;
  first_year: number | null;
  last_year: number | null;
  papers: number;
  citations: number;
  avg_citations: number;
}

export interface PaperRow {
  id: string;
  title: string;
  year_published: number | null;
  authors: string[];
  venue: string | null;
  citations: number;
  url: string | null;
}

export interface DistributionSummary {
  min: number;
  q1: number;
  median: number;
  q3: number;
  max: number;
  avg: number;
  n: number;
}

export type BinCounts = Record<string, number>;

export type TopKEntry = [string, number];

export interface TermScore {
  term: string;
  score: number;
}

export interface TopicEntry {
  topic: number;
  prevalence: number;
  relevance: Record<string, TermScore[]>;
}

export interface TopicCoordinate {
  topic: number;
  x: number;
  y: number;
  size: number;
}

export interface TopicPayload {
  k: number;
  seed: number;
  vocabulary_size: number;
  top_salient_terms: TermScore[];
  topics: TopicEntry[];
  coordinates: TopicCoordinate[];
}

export interface TopicJobStatus {
  job_id: string;
  k: number;
  seed: number;
  status: "queued" | "training" | "done" | "failed";
  result?: TopicPayload;
  error?: string;
}

export type Metric = "citations" | "papers";

export type Dimension =
  | "paper"
  | "author"
  | "venue"
  | "type_of_paper"
  | "field_of_study"
  | "publisher";

export interface ApiError {
  code: string;
  message: string;
}
