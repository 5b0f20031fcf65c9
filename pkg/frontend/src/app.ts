// Browser wiring for the tagging service UI: project editing, word tagging,
// rule runs, action output, relation graphs, and tag-file comparison. All
// engine work happens on the service; this file only renders results.

import { ApiError, Client } from "./api.js";
import { canonicalJson } from "./canonicalJson.js";
import { diffRows } from "./diffView.js";
import { layoutGraph } from "./graphView.js";
import { highlightSegments, legendsFromTagTypes } from "./highlight.js";
import {
  FEATURES,
  newTerm,
  PREDICATES,
  setSynK,
  toggleNegation,
  type TermState,
} from "./mbfEditor.js";
import {
  bind,
  label,
  opt,
  or,
  plus,
  ruleLine,
  star,
  upTo,
  validateUpTo,
  seq,
  type ExprNode,
} from "./mreBuilder.js";
import { outline } from "./matchTree.js";
import { ProjectEditor } from "./projectEditor.js";
import type {
  DiffPredicate,
  Feature,
  Project,
  TagSpan,
  TagsResult,
  TermPredicate,
} from "./types.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const serviceUrl = el<HTMLInputElement>("service-url");
const statusLine = el<HTMLElement>("status");
const projectText = el<HTMLTextAreaElement>("project-json");
const documentText = el<HTMLTextAreaElement>("document-text");
const maxStepsInput = el<HTMLInputElement>("max-steps");
const highlightView = el<HTMLElement>("highlight");
const matchSelect = el<HTMLSelectElement>("match-select");
const outlineView = el<HTMLElement>("outline");
const actionsView = el<HTMLElement>("actions-output");
const analyzeView = el<HTMLElement>("analyze-output");
const graphHost = el<HTMLElement>("graph");

function client(): Client {
  return new Client(serviceUrl.value.trim());
}

function status(message: string, isError = false): void {
  statusLine.textContent = message;
  statusLine.className = isError ? "status error" : "status";
}

function reportFailure(err: unknown): void {
  if (err instanceof ApiError) {
    status(`${err.stage}: ${err.message}`, true);
  } else {
    status(err instanceof Error ? err.message : String(err), true);
  }
}

function currentProject(): Project {
  return JSON.parse(projectText.value) as Project;
}

function setProject(project: Project): void {
  projectText.value = canonicalJson(project);
}

function maxSteps(): { maxSteps?: number } {
  const raw = maxStepsInput.value.trim();
  return raw ? { maxSteps: Number(raw) } : {};
}

function clearChildren(node: HTMLElement): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

// --- project load/save ---

async function loadProject(): Promise<void> {
  setProject(await client().getProject());
  status("project loaded");
}

async function saveProject(): Promise<void> {
  setProject(await client().putProject(currentProject()));
  status("project saved");
}

// --- tag type builder ---

const pendingTerms: TermState[] = [];
const termList = el<HTMLUListElement>("term-list");
const termFeature = el<HTMLSelectElement>("term-feature");
const termPredicate = el<HTMLSelectElement>("term-predicate");
const termValue = el<HTMLInputElement>("term-value");
const termNegated = el<HTMLInputElement>("term-negated");
const termSynK = el<HTMLInputElement>("term-synk");

function fillSelect(select: HTMLSelectElement, values: readonly string[]): void {
  for (const value of values) {
    const option = document.createElement("option");
    option.value = value;
    option.textContent = value;
    select.append(option);
  }
}

function renderTerms(): void {
  clearChildren(termList);
  pendingTerms.forEach((term, i) => {
    const item = document.createElement("li");
    const negation = term.negated ? "not " : "";
    const level = term.synK === null ? "" : ` (syn ${term.synK})`;
    item.textContent = `${negation}${term.feature} ${term.predicate} "${term.value}"${level} `;
    const remove = document.createElement("button");
    remove.textContent = "remove";
    remove.addEventListener("click", () => {
      pendingTerms.splice(i, 1);
      renderTerms();
    });
    item.append(remove);
    termList.append(item);
  });
}

function addTerm(): void {
  try {
    let term = newTerm(
      termFeature.value as Feature,
      termPredicate.value as TermPredicate,
      termValue.value.trim(),
    );
    if (!term.value) throw new Error("term value is empty");
    if (termNegated.checked) term = toggleNegation(term);
    const k = termSynK.value.trim();
    if (k) term = setSynK(term, Number(k));
    pendingTerms.push(term);
    renderTerms();
    status(`term added (${pendingTerms.length} pending)`);
  } catch (err) {
    reportFailure(err);
  }
}

function addTagType(): void {
  try {
    const tagLabel = el<HTMLInputElement>("tag-label").value.trim();
    if (!tagLabel) throw new Error("tag label is empty");
    if (!pendingTerms.length) throw new Error("add at least one term");
    const editor = ProjectEditor.fromJson(currentProject());
    editor.addFormulaTag(tagLabel, [...pendingTerms], {
      description: el<HTMLInputElement>("tag-description").value.trim(),
      color: el<HTMLInputElement>("tag-color").value,
    });
    setProject(editor.toJson());
    pendingTerms.length = 0;
    renderTerms();
    status(`tag type ${tagLabel} added; save the project to apply it`);
  } catch (err) {
    reportFailure(err);
  }
}

// --- rule builder ---

interface WizardRow {
  binding: HTMLInputElement;
  labels: HTMLInputElement;
  repeat: HTMLSelectElement;
  limit: HTMLInputElement;
}

const wizardRows: WizardRow[] = [];
const wizardHost = el<HTMLElement>("rule-rows");

function addWizardRow(): void {
  const row = document.createElement("div");
  row.className = "rule-row";
  const binding = document.createElement("input");
  binding.placeholder = "binding (optional)";
  const labels = document.createElement("input");
  labels.placeholder = "labels, e.g. P|N";
  const repeat = document.createElement("select");
  fillSelect(repeat, ["once", "?", "*", "+", "up to"]);
  const limit = document.createElement("input");
  limit.placeholder = "limit";
  limit.size = 4;
  row.append(binding, labels, repeat, limit);
  wizardHost.append(row);
  wizardRows.push({ binding, labels, repeat, limit });
}

function wizardExpr(row: WizardRow): ExprNode {
  const parts = row.labels.value
    .split("|")
    .map((part) => part.trim())
    .filter((part) => part.length > 0);
  if (!parts.length) throw new Error("a rule row has no labels");
  const first = parts[0] as string;
  let node: ExprNode =
    parts.length === 1 ? label(first) : or(...parts.map((part) => label(part)));
  switch (row.repeat.value) {
    case "?":
      node = opt(node);
      break;
    case "*":
      node = star(node);
      break;
    case "+":
      node = plus(node);
      break;
    case "up to": {
      const limit = Number(row.limit.value.trim());
      const problem = validateUpTo(limit);
      if (problem) throw new Error(problem);
      node = upTo(node, limit);
      break;
    }
    default:
      break;
  }
  const name = row.binding.value.trim();
  return name ? bind(name, node) : node;
}

function appendRule(): void {
  try {
    const name = el<HTMLInputElement>("rule-name").value.trim();
    if (!name) throw new Error("rule name is empty");
    const used = wizardRows.filter((row) => row.labels.value.trim());
    if (!used.length) throw new Error("add at least one rule row");
    const body =
      used.length === 1 ? wizardExpr(used[0] as WizardRow) : seq(...used.map(wizardExpr));
    const line = ruleLine(name, body);
    const editor = ProjectEditor.fromJson(currentProject());
    editor.setRules(editor.rules + line + "\n");
    setProject(editor.toJson());
    status(`rule appended: ${line}`);
  } catch (err) {
    reportFailure(err);
  }
}

// --- runs ---

let lastTags: TagsResult | null = null;

function renderHighlight(result: TagsResult): void {
  clearChildren(highlightView);
  const legends = legendsFromTagTypes(currentProject().tagTypes);
  for (const segment of highlightSegments(documentText.value, result.tags, legends)) {
    const span = document.createElement("span");
    span.textContent = segment.text;
    if (segment.labels.length) {
      span.className = "tagged";
      span.title = segment.labels.join(", ");
      if (segment.color) span.style.color = segment.color;
      if (segment.bold) span.style.fontWeight = "bold";
      if (segment.italic) span.style.fontStyle = "italic";
    }
    highlightView.append(span);
  }
}

function renderMatchList(result: TagsResult): void {
  clearChildren(matchSelect);
  clearChildren(outlineView);
  (result.matches ?? []).forEach((match, i) => {
    const option = document.createElement("option");
    option.value = String(i);
    const start = match.tree.index;
    option.textContent = `${i + 1}. ${match.rule} at ${start}..${start + match.tree.length}`;
    matchSelect.append(option);
  });
  if (result.matches?.length) {
    matchSelect.selectedIndex = 0;
    renderOutline();
  }
}

function renderOutline(): void {
  clearChildren(outlineView);
  const match = lastTags?.matches?.[Number(matchSelect.value)];
  if (!match) return;
  for (const row of outline(match.tree, documentText.value)) {
    const div = document.createElement("div");
    div.className = "outline-row";
    div.style.paddingInlineStart = `${row.depth * 1.2}em`;
    const title = document.createElement("strong");
    title.textContent = row.title;
    div.append(title, ` ${row.index}+${row.length} `);
    if (row.text) {
      const quote = document.createElement("span");
      quote.dir = "auto";
      quote.textContent = `"${row.text}"`;
      div.append(quote);
    }
    outlineView.append(div);
  }
}

async function runMre(): Promise<void> {
  const result = await client().simulateMre(documentText.value, maxSteps());
  lastTags = result;
  renderHighlight(result);
  renderMatchList(result);
  status(`${result.tags.length} tags, ${result.matches?.length ?? 0} matches`);
}

async function runMbf(): Promise<void> {
  const result = await client().simulateMbf(documentText.value);
  const tags: TagSpan[] = [];
  result.words.forEach((word, i) => {
    for (const wordLabel of result.perWord[i] ?? []) {
      tags.push({ index: word.index, length: word.length, label: wordLabel });
    }
  });
  lastTags = null;
  renderHighlight({ version: "1", document: { sha256: "", length: 0 }, tags, matches: [] });
  renderMatchList({ version: "1", document: { sha256: "", length: 0 }, tags: [], matches: [] });
  status(`${result.words.length} words tagged`);
}

async function runActions(): Promise<void> {
  const result = await client().runActions(documentText.value, maxSteps());
  clearChildren(actionsView);
  const list = document.createElement("ul");
  for (const note of result.annotations) {
    const item = document.createElement("li");
    item.textContent = `${note.label} = ${note.value} (${note.rule} at ${note.index}+${note.length})`;
    list.append(item);
  }
  actionsView.append(list);
  if (result.printed.length) {
    const printed = document.createElement("pre");
    printed.textContent = result.printed.join("\n");
    actionsView.append(printed);
  }
  const variables = document.createElement("pre");
  variables.textContent = canonicalJson(result.variables);
  actionsView.append(variables);
  status(`${result.annotations.length} annotations`);
}

async function runAnalyze(): Promise<void> {
  const result = await client().analyze(documentText.value);
  analyzeView.textContent = canonicalJson(result);
  status(`${result.solutions.length} word analyses`);
}

async function runRelations(): Promise<void> {
  const graph = await client().extractRelations(documentText.value, maxSteps());
  const layout = layoutGraph(graph);
  clearChildren(graphHost);
  const NS = "http://www.w3.org/2000/svg";
  const svg = document.createElementNS(NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${layout.width} ${layout.height}`);
  const defs = document.createElementNS(NS, "defs");
  const marker = document.createElementNS(NS, "marker");
  marker.setAttribute("id", "arrow");
  marker.setAttribute("viewBox", "0 0 10 10");
  marker.setAttribute("refX", "22");
  marker.setAttribute("refY", "5");
  marker.setAttribute("markerWidth", "7");
  marker.setAttribute("markerHeight", "7");
  marker.setAttribute("orient", "auto-start-reverse");
  const tip = document.createElementNS(NS, "path");
  tip.setAttribute("d", "M 0 0 L 10 5 L 0 10 z");
  marker.append(tip);
  defs.append(marker);
  svg.append(defs);
  for (const edge of layout.edges) {
    const line = document.createElementNS(NS, "line");
    line.setAttribute("x1", String(edge.x1));
    line.setAttribute("y1", String(edge.y1));
    line.setAttribute("x2", String(edge.x2));
    line.setAttribute("y2", String(edge.y2));
    line.setAttribute("class", edge.dashed ? "edge dashed" : "edge");
    if (edge.directed) line.setAttribute("marker-end", "url(#arrow)");
    svg.append(line);
    const text = document.createElementNS(NS, "text");
    text.setAttribute("x", String((edge.x1 + edge.x2) / 2));
    text.setAttribute("y", String((edge.y1 + edge.y2) / 2 - 4));
    text.setAttribute("class", "edge-label");
    text.textContent = edge.label ? `${edge.name}: ${edge.label}` : edge.name;
    svg.append(text);
  }
  for (const node of layout.nodes) {
    const dot = document.createElementNS(NS, "circle");
    dot.setAttribute("cx", String(node.x));
    dot.setAttribute("cy", String(node.y));
    dot.setAttribute("r", "14");
    dot.setAttribute("class", "node");
    svg.append(dot);
    const text = document.createElementNS(NS, "text");
    text.setAttribute("x", String(node.x));
    text.setAttribute("y", String(node.y + 28));
    text.setAttribute("class", "node-label");
    text.textContent = node.text;
    svg.append(text);
  }
  graphHost.append(svg);
  status(`${layout.nodes.length} entities, ${layout.edges.length} relations`);
}

// --- tag file comparison ---

function runDiff(): Promise<void> {
  const a = JSON.parse(el<HTMLTextAreaElement>("diff-a").value) as TagSpan[];
  const b = JSON.parse(el<HTMLTextAreaElement>("diff-b").value) as TagSpan[];
  const predicate = el<HTMLSelectElement>("diff-predicate").value as DiffPredicate;
  return client()
    .diff(a, b, predicate)
    .then((report) => {
      const table = el<HTMLTableElement>("diff-table");
      clearChildren(table);
      const head = table.insertRow();
      for (const title of ["label", "matched", "only A", "only B", "precision", "recall", "F"]) {
        const cell = document.createElement("th");
        cell.textContent = title;
        head.append(cell);
      }
      for (const row of diffRows(report)) {
        const tr = table.insertRow();
        const cells = [
          row.label,
          String(row.matched),
          String(row.onlyA),
          String(row.onlyB),
          row.precision,
          row.recall,
          row.fMeasure,
        ];
        for (const value of cells) {
          tr.insertCell().textContent = value;
        }
      }
      status(`compared under ${report.predicate}`);
    });
}

function wire(id: string, handler: () => void | Promise<void>): void {
  el<HTMLButtonElement>(id).addEventListener("click", () => {
    Promise.resolve()
      .then(handler)
      .catch(reportFailure);
  });
}

fillSelect(termFeature, FEATURES);
fillSelect(termPredicate, PREDICATES);
addWizardRow();
addWizardRow();
addWizardRow();
wire("load-project", loadProject);
wire("save-project", saveProject);
wire("add-term", addTerm);
wire("add-tag-type", addTagType);
wire("add-rule-row", () => addWizardRow());
wire("append-rule", appendRule);
wire("run-analyze", runAnalyze);
wire("run-mbf", runMbf);
wire("run-mre", runMre);
wire("run-actions", runActions);
wire("run-relations", runRelations);
wire("run-diff", runDiff);
matchSelect.addEventListener("change", renderOutline);
status("ready; load a project to begin");
