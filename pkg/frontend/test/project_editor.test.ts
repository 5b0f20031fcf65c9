import { describe, expect, it } from "vitest";

import { newTerm } from "../src/mbfEditor.js";
import {
  bind,
  label,
  opt,
  or,
  plus,
  ruleLine,
  rulesSource,
  seq,
  upTo,
} from "../src/mreBuilder.js";
import { ProjectEditor } from "../src/projectEditor.js";
import type { Project } from "../src/types.js";
import { PROJECT_FILES, readFixture } from "./paths.js";

function editorText(editor: ProjectEditor): string {
  return new TextDecoder().decode(editor.toBytes());
}

describe("ProjectEditor round trips", () => {
  it("loads and saves every fixture project without changing a byte", () => {
    for (const name of PROJECT_FILES) {
      const text = readFixture(name);
      const editor = ProjectEditor.fromJson(JSON.parse(text) as Project);
      expect(editorText(editor)).toBe(text);
    }
  });
});

describe("ProjectEditor authoring", () => {
  it("rebuilds the direction fixture from scratch through editor operations", () => {
    const editor = new ProjectEditor();
    editor.name = "direction";
    editor.addCategory("Name_of_Person");
    editor.addCategory("Name_of_Place");

    for (const form of ["b", "Al", "Al-"]) editor.addEntry("prefixes", { form });
    for (const form of ["T", "_A", "hA"]) editor.addEntry("suffixes", { form });

    const place = (form: string, gloss: string) =>
      editor.addEntry("stems", { form, glosses: [gloss], categories: ["Name_of_Place"] });
    const person = (form: string, gloss: string) =>
      editor.addEntry("stems", { form, glosses: [gloss], categories: ["Name_of_Person"] });
    const plainStem = (form: string, ...glosses: string[]) =>
      editor.addEntry("stems", { form, glosses });

    place("brj", "tower");
    person("xlyfT", "Khalifa");
    plainStem("qrb", "next to");
    plainStem("mqrb", "near");
    plainStem("fy", "in");
    place("tqA.t`", "intersection");
    plainStem("'wl", "first");
    place("^sAr`", "street");
    person("^say_h", "sheikh");
    person("zAyd", "Zayed");
    place("Tryq", "road");
    place("dby", "Dubai");
    place("mwl", "mall");
    place("mbn_A", "building");
    plainStem("`mArT", "tower", "building");

    const category = (value: string) => [newTerm("category", "isA", value)];
    const stems = (...forms: string[]) =>
      forms.map((form) => newTerm("stem", "isA", form));
    editor.addFormulaTag("P", category("Name_of_Place"), {
      description: "name of place",
      color: "#1a7f37",
    });
    editor.addFormulaTag("N", category("Name_of_Person"), {
      description: "name of person",
      color: "#0550ae",
      fontFlags: ["bold"],
    });
    editor.addFormulaTag("R", stems("qrb", "mqrb", "fy"), {
      description: "relative position",
      color: "#cf222e",
    });
    editor.addFormulaTag("U", stems("'wl", "_tAny"), {
      description: "numerical term",
      color: "#8250df",
      fontFlags: ["italic"],
    });
    editor.addRuleTag("DIR", "direction", { description: "spatial phrase" });

    const entity = () => or(label("P"), label("N"));
    const body = seq(
      bind("e1", plus(entity())),
      bind("o1", opt(label("NONE"))),
      bind("r", label("R")),
      bind("o2", upTo(label("NONE"), 2)),
      bind("e2", plus(or(label("P"), label("N"), label("U")))),
    );
    editor.setRules(rulesSource([ruleLine("direction", body)]));

    editor.addRelation({
      rule: "direction",
      name: "spatial",
      source: "e1",
      destination: "e2",
      label: "r.gloss",
    });
    // ".text" is the default feature; the file stores the bare binding path
    editor.addRelation({
      rule: "direction",
      name: "subject",
      source: "r",
      destination: "e1",
      label: "o1.text",
    });
    editor.addRelation({
      rule: "direction",
      name: "object",
      source: "r",
      destination: "e2",
      label: "o2.text",
    });
    editor.synCrossReference = true;

    expect(editorText(editor)).toBe(readFixture("direction.project.json"));
  });

  it("drops defaults when serializing", () => {
    const editor = new ProjectEditor();
    editor.name = "tiny";
    editor.addEntry("stems", { form: "x" });
    editor.addFormulaTag("T", [newTerm("stem", "isA", "x")]);
    const data = editor.toJson();
    expect(data).toEqual({
      version: "1",
      name: "tiny",
      lexicon: {
        version: "1",
        categories: [],
        stems: [{ form: "x" }],
        prefixes: [],
        suffixes: [],
      },
      tagTypes: [
        {
          label: "T",
          formula: { terms: [{ feature: "stem", predicate: "isA", value: "x" }] },
        },
      ],
    });
    expect("rules" in data).toBe(false);
    expect("relations" in data).toBe(false);
    expect("synCrossReference" in data).toBe(false);
  });

  it("keeps a non-default legend and an empty-terms formula", () => {
    const editor = new ProjectEditor();
    editor.name = "legend";
    editor.addEntry("stems", { form: "x" });
    editor.addFormulaTag("A", [], { fontFlags: ["italic"] });
    const [tag] = editor.toJson().tagTypes;
    expect(tag).toEqual({
      label: "A",
      formula: { other: true },
      legend: { fontFlags: ["italic"] },
    });
  });
});
