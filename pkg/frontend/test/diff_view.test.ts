import { describe, expect, it } from "vitest";

import { diffRows, formatScore } from "../src/diffView.js";
import type { DiffReport, ScoreEntry } from "../src/types.js";

function entry(
  matched: number,
  onlyA: number,
  onlyB: number,
  scores: [string, number, string, number, string, number],
): ScoreEntry {
  const [precision, precisionFloat, recall, recallFloat, fMeasure, fMeasureFloat] =
    scores;
  return {
    matched,
    onlyA,
    onlyB,
    precision,
    precisionFloat,
    recall,
    recallFloat,
    fMeasure,
    fMeasureFloat,
  };
}

const report: DiffReport = {
  predicate: "exact",
  labels: {
    P: entry(3, 1, 0, ["3/4", 0.75, "1", 1, "6/7", 6 / 7]),
    "*": entry(4, 2, 1, ["2/3", 2 / 3, "4/5", 0.8, "8/11", 8 / 11]),
    N: entry(1, 1, 1, ["1/2", 0.5, "1/2", 0.5, "1/2", 0.5]),
  },
};

describe("score formatting", () => {
  it("pairs the exact fraction with a rounded float", () => {
    expect(formatScore("1/2", 0.5)).toBe("1/2 (0.500)");
    expect(formatScore("2/3", 2 / 3)).toBe("2/3 (0.667)");
    expect(formatScore("1", 1)).toBe("1 (1.000)");
    expect(formatScore("0", 0)).toBe("0 (0.000)");
  });
});

describe("report rows", () => {
  const rows = diffRows(report);

  it("puts the overall row first, then labels in order", () => {
    expect(rows.map((r) => r.label)).toEqual(["*", "N", "P"]);
  });

  it("copies counts and formats every score", () => {
    expect(rows[0]).toEqual({
      label: "*",
      matched: 4,
      onlyA: 2,
      onlyB: 1,
      precision: "2/3 (0.667)",
      recall: "4/5 (0.800)",
      fMeasure: "8/11 (0.727)",
    });
    expect(rows[2]?.precision).toBe("3/4 (0.750)");
    expect(rows[2]?.recall).toBe("1 (1.000)");
  });

  it("handles a report with no overall entry", () => {
    const partial: DiffReport = {
      predicate: "intersection",
      labels: { X: entry(0, 0, 2, ["1", 1, "0", 0, "0", 0]) },
    };
    expect(diffRows(partial).map((r) => r.label)).toEqual(["X"]);
  });
});
