// JSON shapes exchanged with the service. Field names and optionality
// mirror the file formats exactly; serialization must omit absent fields.

export type Feature = "prefix" | "stem" | "suffix" | "pos" | "gloss" | "category";
export type TermPredicate = "isA" | "contains";
export type DiffPredicate = "exact" | "intersection" | "aIncludesB" | "bIncludesA";
export type Phase = "preMatch" | "onMatch";
export type FontFlag = "bold" | "italic";

export interface Term {
  feature: Feature;
  predicate: TermPredicate;
  value: string;
  negated?: boolean;
  synK?: number;
}

export interface Formula {
  terms?: Term[];
  other?: boolean;
}

export interface Legend {
  color?: string;
  fontFlags?: FontFlag[];
}

export interface TagType {
  label: string;
  description?: string;
  legend?: Legend;
  formula?: Formula;
  rule?: string;
}

export interface LexEntry {
  form: string;
  pos?: string;
  glosses?: string[];
  categories?: string[];
  numericValue?: number;
}

export interface Lexicon {
  version: "1";
  categories?: string[];
  prefixes?: LexEntry[];
  stems: LexEntry[];
  suffixes?: LexEntry[];
}

export interface RelationDef {
  rule: string;
  name: string;
  source: string;
  destination: string;
  label?: string;
  nextFlag?: boolean;
}

export interface ActionDef {
  rule: string;
  binding: string;
  phase: Phase;
  script: string;
}

export interface Project {
  version: "1";
  name: string;
  lexicon: Lexicon;
  tagTypes: TagType[];
  rules?: string;
  relations?: RelationDef[];
  actions?: ActionDef[];
  synCrossReference?: boolean;
}

// --- results ---

export interface TagSpan {
  index: number;
  length: number;
  label: string;
}

export interface MatchTreeNode {
  kind: string;
  index: number;
  length: number;
  wordStart: number;
  wordEnd: number;
  binding?: string;
  label?: string;
  rule?: string;
  children?: MatchTreeNode[];
}

export interface Annotation {
  label: string;
  value: unknown;
  rule: string;
  index: number;
  length: number;
}

export interface TagsResult {
  version: "1";
  document: { sha256: string; length: number };
  project?: string;
  tags: TagSpan[];
  matches: { rule: string; tree: MatchTreeNode }[];
  annotations?: Annotation[];
  printed?: string[];
}

export interface WordInfo {
  surface: string;
  index: number;
  length: number;
}

export interface MbfResult {
  words: WordInfo[];
  perWord: string[][];
}

export interface SolutionJson {
  prefixes: unknown[];
  stem: { form: string; [key: string]: unknown };
  suffixes: unknown[];
  numericValue?: number;
}

export interface AnalyzeResult {
  solutions: {
    word: string;
    index: number;
    length: number;
    solutions: SolutionJson[];
  }[];
}

export interface ActionsResult {
  annotations: Annotation[];
  printed: string[];
  variables: Record<string, unknown>;
}

export interface GraphNode {
  id: string;
  text: string;
  headStem: string;
  index: number;
  length: number;
  wordStart: number;
  wordEnd: number;
}

export interface GraphEdge {
  name: string;
  source: string;
  destination: string;
  label: string;
  directed: boolean;
}

export interface GraphResult {
  version: "1";
  document?: { sha256: string; length: number };
  nodes: GraphNode[];
  edges: GraphEdge[];
}

export interface ScoreEntry {
  matched: number;
  onlyA: number;
  onlyB: number;
  precision: string;
  recall: string;
  fMeasure: string;
  precisionFloat: number;
  recallFloat: number;
  fMeasureFloat: number;
}

export interface DiffReport {
  predicate: DiffPredicate;
  labels: Record<string, ScoreEntry>;
}

export interface ServiceError {
  error: string;
  stage: string;
}
