import { describe, expect, it } from "vitest";

import {
  FEATURES,
  PREDICATES,
  formulaToTerms,
  newTerm,
  setSynK,
  synKAllowed,
  termFromJson,
  termToJson,
  termsToFormula,
  toggleNegation,
} from "../src/mbfEditor.js";

describe("term editing", () => {
  it("serializes a plain category test with no optional keys", () => {
    const term = newTerm("category", "isA", "Name_of_Place");
    expect(termToJson(term)).toEqual({
      feature: "category",
      predicate: "isA",
      value: "Name_of_Place",
    });
  });

  it("adds negated only after toggling, and removes it after toggling back", () => {
    const term = newTerm("gloss", "contains", "river");
    const negated = toggleNegation(term);
    expect(termToJson(negated)).toEqual({
      feature: "gloss",
      predicate: "contains",
      value: "river",
      negated: true,
    });
    expect(termToJson(toggleNegation(negated))).toEqual(termToJson(term));
  });

  it("offers the full feature and predicate menus", () => {
    expect(FEATURES).toEqual(["prefix", "stem", "suffix", "pos", "gloss", "category"]);
    expect(PREDICATES).toEqual(["isA", "contains"]);
  });
});

describe("synonymy levels", () => {
  it("applies only to stem and gloss terms", () => {
    expect(FEATURES.filter(synKAllowed)).toEqual(["stem", "gloss"]);
    const stem = setSynK(newTerm("stem", "isA", "mA'"), 2);
    expect(termToJson(stem)).toEqual({
      feature: "stem",
      predicate: "isA",
      value: "mA'",
      synK: 2,
    });
    expect(() => setSynK(newTerm("category", "isA", "X"), 2)).toThrow(
      /stem and gloss/,
    );
  });

  it("accepts integer levels from 1 to 7 and rejects the rest", () => {
    const term = newTerm("gloss", "isA", "water");
    for (const k of [1, 7]) {
      expect(termToJson(setSynK(term, k)).synK).toBe(k);
    }
    for (const k of [0, 8, -1, 2.5]) {
      expect(() => setSynK(term, k)).toThrow(/1 to 7/);
    }
    // null clears the level
    expect(termToJson(setSynK(setSynK(term, 3), null))).toEqual(termToJson(term));
  });
});

describe("formula assembly", () => {
  it("round trips terms through formula JSON", () => {
    const terms = [
      setSynK(newTerm("stem", "isA", "qrb"), 1),
      toggleNegation(newTerm("pos", "isA", "verb")),
      newTerm("prefix", "contains", "Al"),
    ];
    const formula = termsToFormula(terms);
    expect(formula.terms).toHaveLength(3);
    expect(formulaToTerms(formula)).toEqual(terms);
    expect(formulaToTerms(formula).map(termToJson)).toEqual(formula.terms);
  });

  it("maps an empty term list to the leftover formula", () => {
    expect(termsToFormula([])).toEqual({ other: true });
    expect(formulaToTerms({ other: true })).toEqual([]);
  });

  it("rebuilds editing state from stored terms", () => {
    expect(
      termFromJson({ feature: "stem", predicate: "isA", value: "brj", synK: 4 }),
    ).toEqual({
      feature: "stem",
      predicate: "isA",
      value: "brj",
      negated: false,
      synK: 4,
    });
  });
});
