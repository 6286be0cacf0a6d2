/** Client-side problem state: the document being edited, its server
 * identity (id + revision), a dirty flag, local validation issues, and the
 * last evaluation received from the service.
 *
 * Every edit bumps a generation counter and re-validates; results carry
 * the generation they were computed for, so views can tell fresh numbers
 * from stale ones and never show a result that mismatches the inputs.
 */

import type {
  AttributeSpec,
  CurveShape,
  Direction,
  EvaluationPayload,
  OptionSpec,
  ProblemDocument,
  ValidationIssue,
} from "./types.js";
import { hasErrors, validateDocument } from "./validate.js";

export interface ResultsState {
  payload: EvaluationPayload;
  generation: number;
}

export function emptyProblem(): ProblemDocument {
  return {
    schema_version: "1",
    name: "Untitled decision",
    display_scale: "unit",
    aggregation: "additive",
    attributes: [{ name: "criterion 1", importance: 1, kind: "direct" }],
    options: [
      { name: "Option A", values: { "criterion 1": 50 } },
      { name: "Option B", values: { "criterion 1": 50 } },
    ],
  };
}

function deepCopy<T>(value: T): T {
  return JSON.parse(JSON.stringify(value)) as T;
}

function defaultValueFor(attr: AttributeSpec): number {
  if (attr.kind === "derived" && attr.range) {
    return (attr.range[0] + attr.range[1]) / 2;
  }
  return 50;
}

export class ProblemState {
  document: ProblemDocument;
  problemId: string | null = null;
  revision: number | null = null;
  dirty = false;
  issues: ValidationIssue[] = [];
  generation = 0;
  results: ResultsState | null = null;

  private listeners = new Set<() => void>();

  constructor(doc?: ProblemDocument) {
    this.document = doc ? deepCopy(doc) : emptyProblem();
    this.issues = validateDocument(this.document);
  }

  subscribe(listener: () => void): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener();
  }

  /** Apply one edit: mutate, re-validate, bump generation, mark dirty. */
  private edit(mutate: (doc: ProblemDocument) => void): void {
    mutate(this.document);
    this.generation += 1;
    this.dirty = true;
    this.issues = validateDocument(this.document);
    this.notify();
  }

  get canSave(): boolean {
    return this.dirty && !hasErrors(this.issues);
  }

  get canEvaluate(): boolean {
    return !hasErrors(this.issues);
  }

  /** True when the shown results no longer match the current inputs. */
  get resultsStale(): boolean {
    return this.results !== null && this.results.generation !== this.generation;
  }

  acceptResults(payload: EvaluationPayload, generation: number): void {
    // Drop anything that is not for the latest inputs.
    if (generation !== this.generation) return;
    this.results = { payload, generation };
    this.notify();
  }

  markSaved(id: string, revision: number): void {
    this.problemId = id;
    this.revision = revision;
    this.dirty = false;
    this.notify();
  }

  loadDocument(doc: ProblemDocument, id: string | null, revision: number | null): void {
    this.document = deepCopy(doc);
    this.problemId = id;
    this.revision = revision;
    this.dirty = false;
    this.results = null;
    this.generation += 1;
    this.issues = validateDocument(this.document);
    this.notify();
  }

  /** Deep copy of the current document, e.g. for export or save. */
  exportDocument(): ProblemDocument {
    return deepCopy(this.document);
  }

  // -- document metadata ----------------------------------------------------

  setName(name: string): void {
    this.edit((doc) => { doc.name = name; });
  }

  setDisplayScale(scale: ProblemDocument["display_scale"]): void {
    this.edit((doc) => { doc.display_scale = scale; });
  }

  setAggregation(mode: ProblemDocument["aggregation"]): void {
    this.edit((doc) => { doc.aggregation = mode; });
  }

  // -- attributes -----------------------------------------------------------

  addAttribute(): void {
    this.edit((doc) => {
      let n = doc.attributes.length + 1;
      while (doc.attributes.some((a) => a.name === `criterion ${n}`)) n += 1;
      const attr: AttributeSpec = { name: `criterion ${n}`, importance: 1, kind: "direct" };
      doc.attributes.push(attr);
      for (const option of doc.options) {
        for (const values of optionValueMaps(option)) values[attr.name] = defaultValueFor(attr);
      }
    });
  }

  removeAttribute(index: number): void {
    this.edit((doc) => {
      const [removed] = doc.attributes.splice(index, 1);
      if (!removed) return;
      for (const option of doc.options) {
        for (const values of optionValueMaps(option)) delete values[removed.name];
      }
    });
  }

  renameAttribute(index: number, name: string): void {
    this.edit((doc) => {
      const attr = doc.attributes[index];
      if (!attr || attr.name === name) return;
      const old = attr.name;
      attr.name = name;
      for (const option of doc.options) {
        for (const values of optionValueMaps(option)) {
          if (old in values) {
            values[name] = values[old]!;
            delete values[old];
          }
        }
      }
    });
  }

  setImportance(index: number, importance: number): void {
    this.edit((doc) => {
      const attr = doc.attributes[index];
      if (attr) attr.importance = importance;
    });
  }

  setKind(index: number, kind: AttributeSpec["kind"]): void {
    this.edit((doc) => {
      const attr = doc.attributes[index];
      if (!attr || attr.kind === kind) return;
      attr.kind = kind;
      if (kind === "direct") {
        delete attr.direction;
        delete attr.range;
        delete attr.curve;
        for (const option of doc.options) {
          for (const values of optionValueMaps(option)) {
            const v = values[attr.name];
            if (v !== undefined && (v < 0 || v > 100)) values[attr.name] = 50;
          }
        }
      } else {
        attr.direction = "higher_better";
        attr.range = [0, 100];
        attr.curve = { shape: "linear" };
      }
    });
  }

  setDirection(index: number, direction: Direction): void {
    this.edit((doc) => {
      const attr = doc.attributes[index];
      if (attr) attr.direction = direction;
    });
  }

  setRange(index: number, low: number, high: number): void {
    this.edit((doc) => {
      const attr = doc.attributes[index];
      if (attr) attr.range = [low, high];
    });
  }

  setCurve(index: number, shape: CurveShape, gamma?: number): void {
    this.edit((doc) => {
      const attr = doc.attributes[index];
      if (!attr) return;
      attr.curve = shape === "power"
        ? { shape, gamma: gamma ?? 0.5 }
        : { shape };
    });
  }

  // -- options --------------------------------------------------------------

  addOption(): void {
    this.edit((doc) => {
      let n = doc.options.length + 1;
      while (doc.options.some((o) => o.name === `Option ${n}`)) n += 1;
      const values: Record<string, number> = {};
      for (const attr of doc.attributes) values[attr.name] = defaultValueFor(attr);
      doc.options.push({ name: `Option ${n}`, values });
    });
  }

  removeOption(index: number): void {
    this.edit((doc) => { doc.options.splice(index, 1); });
  }

  renameOption(index: number, name: string): void {
    this.edit((doc) => {
      const option = doc.options[index];
      if (option) option.name = name;
    });
  }

  setValue(optionIndex: number, attribute: string, value: number): void {
    this.edit((doc) => {
      const option = doc.options[optionIndex];
      if (!option) return;
      if (option.values) option.values[attribute] = value;
      else if (option.scenarios) {
        for (const scenario of option.scenarios) scenario.values[attribute] = value;
      }
    });
  }
}

function optionValueMaps(option: OptionSpec): Record<string, number>[] {
  if (option.values) return [option.values];
  if (option.scenarios) return option.scenarios.map((s) => s.values);
  return [];
}

/** Importance that pins an attribute's derived weight to ``t`` while the
 * other importances stay put (their relative shares are untouched).
 * Input construction only; the resulting weights are read back from the
 * service's evaluation response. */
export function importanceForTargetWeight(
  doc: ProblemDocument, attribute: string, t: number,
): number {
  const rest = doc.attributes
    .filter((a) => a.name !== attribute)
    .reduce((sum, a) => sum + a.importance, 0);
  const clamped = Math.min(Math.max(t, 0), 0.99);
  if (rest <= 0) {
    const attr = doc.attributes.find((a) => a.name === attribute);
    return attr ? attr.importance : 1;
  }
  return (clamped * rest) / (1 - clamped);
}
