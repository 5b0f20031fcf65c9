import { describe, expect, it } from "vitest";

import { outline } from "../src/matchTree.js";
import type { TagsResult } from "../src/types.js";
import { readFixture, readGolden } from "./paths.js";

const text = readFixture("direction.doc.txt");
const tagsResult = JSON.parse(readGolden("direction.tags.json")) as TagsResult;

describe("match outline", () => {
  const tree = tagsResult.matches?.[0]?.tree;
  if (!tree) throw new Error("golden tags file has no matches");
  const rows = outline(tree, text);

  it("starts with the whole match", () => {
    expect(rows[0]).toEqual({
      depth: 0,
      kind: "sequence",
      title: "sequence",
      text: "brj xlyfT bAlqrb mn AltqA.t` Al-'wl",
      index: 27,
      length: 35,
      binding: null,
    });
  });

  it("lists the bound parts in order at depth one", () => {
    const bound = rows.filter((r) => r.binding !== null);
    expect(bound.map((r) => r.binding)).toEqual(["e1", "o1", "r", "o2", "e2"]);
    for (const row of bound) {
      expect(row.depth).toBe(1);
    }
    expect(bound.map((r) => r.text)).toEqual([
      "brj xlyfT",
      "",
      "bAlqrb",
      "mn",
      "AltqA.t` Al-'wl",
    ]);
  });

  it("titles bound rows with their binding and head", () => {
    const byBinding = new Map(rows.map((r) => [r.binding, r]));
    expect(byBinding.get("r")?.title).toBe("$r = R");
    expect(byBinding.get("e1")?.title).toBe("$e1 = plus");
    expect(byBinding.get("o1")?.title).toBe("$o1 = optional");
  });

  it("keeps formula leaves in document order with their text", () => {
    const leaves = rows.filter((r) => r.kind === "formula" && r.binding !== "r");
    expect(leaves.map((r) => [r.title, r.text])).toEqual([
      ["P", "brj"],
      ["N", "xlyfT"],
      ["NONE", "mn"],
      ["P", "AltqA.t`"],
      ["U", "Al-'wl"],
    ]);
  });

  it("nests children one level below their parent", () => {
    for (let i = 1; i < rows.length; i += 1) {
      const depth = rows[i]?.depth ?? 0;
      expect(depth).toBeGreaterThanOrEqual(1);
      expect(depth).toBeLessThanOrEqual((rows[i - 1]?.depth ?? 0) + 1);
    }
    const deepest = Math.max(...rows.map((r) => r.depth));
    expect(deepest).toBe(3);
  });

  it("gives zero-length rows empty text", () => {
    const optional = rows.find((r) => r.binding === "o1");
    expect(optional?.length).toBe(0);
    expect(optional?.text).toBe("");
  });
});
