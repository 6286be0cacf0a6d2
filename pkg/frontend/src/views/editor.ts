/** Problem editor panel: metadata, attribute specs with live derived
 * weights, the option/value grid, and inline validation messages. */

import { curvePreview } from "../charts.js";
import { fmt4 } from "../format.js";
import type { ProblemState } from "../state.js";
import type { AttributeSpec, CurveShape, Direction } from "../types.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K, className?: string, text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function numberInput(value: number, onChange: (v: number) => void,
                     className = "num"): HTMLInputElement {
  const input = el("input", className) as HTMLInputElement;
  input.type = "number";
  input.step = "any";
  input.value = String(value);
  input.addEventListener("change", () => {
    const parsed = Number(input.value);
    if (Number.isFinite(parsed)) onChange(parsed);
  });
  return input;
}

function textInput(value: string, onChange: (v: string) => void): HTMLInputElement {
  const input = el("input", "text") as HTMLInputElement;
  input.type = "text";
  input.value = value;
  input.addEventListener("change", () => onChange(input.value));
  return input;
}

function select<T extends string>(
  options: [T, string][], value: T, onChange: (v: T) => void,
): HTMLSelectElement {
  const node = el("select") as HTMLSelectElement;
  for (const [optionValue, label] of options) {
    const opt = el("option", undefined, label) as HTMLOptionElement;
    opt.value = optionValue;
    node.appendChild(opt);
  }
  node.value = value;
  node.addEventListener("change", () => onChange(node.value as T));
  return node;
}

/** Weights always come from the last evaluation response; while the
 * document is invalid or the response is pending there is nothing to show. */
function weightLabel(state: ProblemState, attrName: string): string {
  const payload = state.results?.payload;
  if (!payload || state.resultsStale) return "—";
  const index = payload.attributes.indexOf(attrName);
  if (index < 0) return "—";
  return fmt4(payload.weights[index]!);
}

function attributeRow(state: ProblemState, attr: AttributeSpec, index: number): HTMLElement {
  const row = el("div", "attr-row");

  const head = el("div", "attr-head");
  head.appendChild(textInput(attr.name, (v) => state.renameAttribute(index, v)));
  const importance = numberInput(attr.importance,
    (v) => state.setImportance(index, v), "num importance");
  importance.title = "importance score (weights derive from these)";
  head.appendChild(importance);
  head.appendChild(el("span", "weight", `weight ${weightLabel(state, attr.name)}`));
  head.appendChild(select<AttributeSpec["kind"]>(
    [["direct", "direct (0-100)"], ["derived", "derived (range)"]],
    attr.kind, (v) => state.setKind(index, v)));
  const remove = el("button", "ghost", "✕");
  remove.title = "remove attribute";
  remove.addEventListener("click", () => state.removeAttribute(index));
  head.appendChild(remove);
  row.appendChild(head);

  if (attr.kind === "derived") {
    const detail = el("div", "attr-detail");
    detail.appendChild(select<Direction>(
      [["higher_better", "higher is better"], ["lower_better", "lower is better"]],
      attr.direction ?? "higher_better", (v) => state.setDirection(index, v)));
    const range = attr.range ?? [0, 100];
    detail.appendChild(el("span", "lbl", "low"));
    detail.appendChild(numberInput(range[0], (v) => state.setRange(index, v, range[1])));
    detail.appendChild(el("span", "lbl", "high"));
    detail.appendChild(numberInput(range[1], (v) => state.setRange(index, range[0], v)));

    const shape = attr.curve?.shape ?? "linear";
    detail.appendChild(select<CurveShape>(
      [["linear", "linear"], ["power", "power"], ["s_shape", "s-shape"]],
      shape, (v) => state.setCurve(index, v, attr.curve?.gamma)));
    if (shape === "power") {
      detail.appendChild(el("span", "lbl", "γ"));
      detail.appendChild(numberInput(attr.curve?.gamma ?? 0.5,
        (v) => state.setCurve(index, "power", v)));
    }
    const preview = el("span", "preview");
    preview.innerHTML = curvePreview(shape, attr.curve?.gamma);
    detail.appendChild(preview);
    row.appendChild(detail);
  }
  return row;
}

export function renderEditor(container: HTMLElement, state: ProblemState): void {
  container.textContent = "";
  const doc = state.document;

  const meta = el("div", "meta-row");
  meta.appendChild(el("span", "lbl", "decision"));
  meta.appendChild(textInput(doc.name, (v) => state.setName(v)));
  meta.appendChild(el("span", "lbl", "scale"));
  meta.appendChild(select(
    [["unit", "0–1"], ["percent", "0–100"]],
    doc.display_scale, (v) => state.setDisplayScale(v)));
  meta.appendChild(el("span", "lbl", "aggregation"));
  meta.appendChild(select(
    [["additive", "additive"], ["multiplicative", "multiplicative"]],
    doc.aggregation, (v) => state.setAggregation(v)));
  container.appendChild(meta);

  const attrsHeader = el("div", "section-head");
  attrsHeader.appendChild(el("h3", undefined, "Attributes"));
  const addAttr = el("button", undefined, "+ attribute");
  addAttr.addEventListener("click", () => state.addAttribute());
  attrsHeader.appendChild(addAttr);
  container.appendChild(attrsHeader);
  doc.attributes.forEach((attr, i) => container.appendChild(attributeRow(state, attr, i)));

  const optionsHeader = el("div", "section-head");
  optionsHeader.appendChild(el("h3", undefined, "Options"));
  const addOption = el("button", undefined, "+ option");
  addOption.addEventListener("click", () => state.addOption());
  optionsHeader.appendChild(addOption);
  container.appendChild(optionsHeader);

  const grid = el("table", "values-grid");
  const headRow = el("tr");
  headRow.appendChild(el("th", undefined, "option"));
  for (const attr of doc.attributes) headRow.appendChild(el("th", undefined, attr.name));
  headRow.appendChild(el("th"));
  grid.appendChild(headRow);
  doc.options.forEach((option, j) => {
    const tr = el("tr");
    const nameCell = el("td");
    nameCell.appendChild(textInput(option.name, (v) => state.renameOption(j, v)));
    tr.appendChild(nameCell);
    for (const attr of doc.attributes) {
      const cell = el("td");
      if (option.values) {
        cell.appendChild(numberInput(option.values[attr.name] ?? 0,
          (v) => state.setValue(j, attr.name, v)));
      } else {
        cell.appendChild(el("span", "scenario-note",
          `${option.scenarios?.length ?? 0} scenarios`));
      }
      tr.appendChild(cell);
    }
    const removeCell = el("td");
    const remove = el("button", "ghost", "✕");
    remove.title = "remove option";
    remove.addEventListener("click", () => state.removeOption(j));
    removeCell.appendChild(remove);
    tr.appendChild(removeCell);
    grid.appendChild(tr);
  });
  container.appendChild(grid);

  if (state.issues.length > 0) {
    const list = el("ul", "issues");
    for (const issue of state.issues) {
      list.appendChild(el("li", `issue ${issue.severity}`,
        `${issue.severity} at ${issue.path}: ${issue.message}`));
    }
    container.appendChild(list);
  }
}
