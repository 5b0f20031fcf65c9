// Editable project state. Loading normalizes optional fields to defaults;
// serializing drops every default again, so an untouched load/save cycle
// reproduces the canonical file byte for byte.

import { canonicalBytes } from "./canonicalJson.js";
import { termsToFormula, type TermState } from "./mbfEditor.js";
import type {
  ActionDef,
  FontFlag,
  Formula,
  LexEntry,
  Lexicon,
  Project,
  RelationDef,
  TagType,
} from "./types.js";

const DEFAULT_COLOR = "#000000";

export interface TagTypeState {
  label: string;
  description: string;
  color: string;
  fontFlags: FontFlag[];
  formula: Formula | null;
  rule: string | null;
}

export interface EntryState {
  form: string;
  pos: string;
  glosses: string[];
  categories: string[];
  numericValue: number | null;
}

function entryState(entry: LexEntry): EntryState {
  return {
    form: entry.form,
    pos: entry.pos ?? "",
    glosses: entry.glosses ?? [],
    categories: entry.categories ?? [],
    numericValue: entry.numericValue ?? null,
  };
}

function entryJson(entry: EntryState): LexEntry {
  const out: LexEntry = { form: entry.form };
  if (entry.pos) out.pos = entry.pos;
  if (entry.glosses.length) out.glosses = [...entry.glosses];
  if (entry.categories.length) out.categories = [...entry.categories];
  if (entry.numericValue !== null) out.numericValue = entry.numericValue;
  return out;
}

export class ProjectEditor {
  name = "";
  categories: string[] = [];
  prefixes: EntryState[] = [];
  stems: EntryState[] = [];
  suffixes: EntryState[] = [];
  tagTypes: TagTypeState[] = [];
  rules = "";
  relations: RelationDef[] = [];
  actions: ActionDef[] = [];
  synCrossReference = false;

  static fromJson(data: Project): ProjectEditor {
    const editor = new ProjectEditor();
    editor.name = data.name;
    editor.categories = [...(data.lexicon.categories ?? [])];
    editor.prefixes = (data.lexicon.prefixes ?? []).map(entryState);
    editor.stems = data.lexicon.stems.map(entryState);
    editor.suffixes = (data.lexicon.suffixes ?? []).map(entryState);
    for (const tag of data.tagTypes) {
      editor.tagTypes.push({
        label: tag.label,
        description: tag.description ?? "",
        color: tag.legend?.color ?? DEFAULT_COLOR,
        fontFlags: [...(tag.legend?.fontFlags ?? [])],
        formula: tag.formula ?? null,
        rule: tag.rule ?? null,
      });
    }
    editor.rules = data.rules ?? "";
    editor.relations = (data.relations ?? []).map((r) => ({ ...r }));
    editor.actions = (data.actions ?? []).map((a) => ({ ...a }));
    editor.synCrossReference = data.synCrossReference ?? false;
    return editor;
  }

  // --- authoring operations used by the form panes ---

  addCategory(name: string): void {
    if (!this.categories.includes(name)) this.categories.push(name);
  }

  addEntry(kind: "prefixes" | "stems" | "suffixes", entry: Partial<EntryState> & { form: string }): void {
    this[kind].push({
      form: entry.form,
      pos: entry.pos ?? "",
      glosses: entry.glosses ?? [],
      categories: entry.categories ?? [],
      numericValue: entry.numericValue ?? null,
    });
  }

  addFormulaTag(
    label: string,
    terms: TermState[],
    opts: { description?: string; color?: string; fontFlags?: FontFlag[] } = {},
  ): void {
    this.tagTypes.push({
      label,
      description: opts.description ?? "",
      color: opts.color ?? DEFAULT_COLOR,
      fontFlags: opts.fontFlags ?? [],
      formula: termsToFormula(terms),
      rule: null,
    });
  }

  addRuleTag(label: string, rule: string, opts: { description?: string } = {}): void {
    this.tagTypes.push({
      label,
      description: opts.description ?? "",
      color: DEFAULT_COLOR,
      fontFlags: [],
      formula: null,
      rule,
    });
  }

  setRules(source: string): void {
    this.rules = source;
  }

  addRelation(def: RelationDef): void {
    this.relations.push({ ...def });
  }

  addAction(def: ActionDef): void {
    this.actions.push({ ...def });
  }

  // --- serialization ---

  toJson(): Project {
    const lexicon: Lexicon = { version: "1", stems: [], categories: [...this.categories] };
    lexicon.stems = this.stems.map(entryJson);
    lexicon.prefixes = this.prefixes.map(entryJson);
    lexicon.suffixes = this.suffixes.map(entryJson);

    const data: Project = {
      version: "1",
      name: this.name,
      lexicon,
      tagTypes: this.tagTypes.map(tagTypeJson),
    };
    if (this.rules.trim()) data.rules = this.rules;
    if (this.relations.length) {
      data.relations = this.relations.map((r) => {
        const out: RelationDef = {
          rule: r.rule,
          name: r.name,
          source: r.source,
          destination: r.destination,
        };
        if (r.label !== undefined) out.label = normalizeSelector(r.label);
        if (r.nextFlag) out.nextFlag = true;
        return out;
      });
    }
    if (this.actions.length) {
      data.actions = this.actions.map((a) => ({
        rule: a.rule,
        binding: a.binding,
        phase: a.phase,
        script: a.script,
      }));
    }
    if (this.synCrossReference) data.synCrossReference = true;
    return data;
  }

  toBytes(): Uint8Array {
    return canonicalBytes(this.toJson());
  }
}

function tagTypeJson(tag: TagTypeState): TagType {
  const out: TagType = { label: tag.label };
  if (tag.formula !== null) out.formula = tag.formula;
  if (tag.rule !== null) out.rule = tag.rule;
  if (tag.description) out.description = tag.description;
  if (tag.color !== DEFAULT_COLOR || tag.fontFlags.length) {
    out.legend = {};
    if (tag.color !== DEFAULT_COLOR) out.legend.color = tag.color;
    if (tag.fontFlags.length) out.legend.fontFlags = [...tag.fontFlags];
  }
  return out;
}

// ".text" is the default feature and stays implicit in files
function normalizeSelector(selector: string): string {
  return selector.endsWith(".text")
    ? selector.slice(0, -".text".length)
    : selector;
}
