// Formula term editing: rows of (feature, predicate, value) with optional
// negation and a synonymy level that only stem and gloss terms may carry.

import type { Feature, Formula, Term, TermPredicate } from "./types.js";

export interface TermState {
  feature: Feature;
  predicate: TermPredicate;
  value: string;
  negated: boolean;
  synK: number | null;
}

export const FEATURES: Feature[] = [
  "prefix",
  "stem",
  "suffix",
  "pos",
  "gloss",
  "category",
];
export const PREDICATES: TermPredicate[] = ["isA", "contains"];

export function synKAllowed(feature: Feature): boolean {
  return feature === "stem" || feature === "gloss";
}

export function newTerm(
  feature: Feature,
  predicate: TermPredicate,
  value: string,
): TermState {
  return { feature, predicate, value, negated: false, synK: null };
}

export function toggleNegation(term: TermState): TermState {
  return { ...term, negated: !term.negated };
}

export function setSynK(term: TermState, k: number | null): TermState {
  if (k === null) {
    return { ...term, synK: null };
  }
  if (!synKAllowed(term.feature)) {
    throw new Error(`synonymy level applies to stem and gloss terms, not ${term.feature}`);
  }
  if (!Number.isInteger(k) || k < 1 || k > 7) {
    throw new Error("synonymy level must be an integer from 1 to 7");
  }
  return { ...term, synK: k };
}

export function termToJson(term: TermState): Term {
  const out: Term = {
    feature: term.feature,
    predicate: term.predicate,
    value: term.value,
  };
  if (term.negated) out.negated = true;
  if (term.synK !== null) out.synK = term.synK;
  return out;
}

export function termFromJson(term: Term): TermState {
  return {
    feature: term.feature,
    predicate: term.predicate,
    value: term.value,
    negated: term.negated ?? false,
    synK: term.synK ?? null,
  };
}

export function termsToFormula(terms: TermState[]): Formula {
  if (terms.length === 0) {
    return { other: true };
  }
  return { terms: terms.map(termToJson) };
}

export function formulaToTerms(formula: Formula): TermState[] {
  if (formula.other || !formula.terms) {
    return [];
  }
  return formula.terms.map(termFromJson);
}
