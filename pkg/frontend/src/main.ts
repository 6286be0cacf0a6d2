/** Application wiring: state + service client + panels.
 *
 * Edits re-render immediately, re-validate locally, and (when valid)
 * trigger a debounced stateless evaluation; only the newest response is
 * accepted, so displayed numbers always match the displayed inputs.
 */

import { ApiClient, RevisionConflict, ServiceError, ValidationFailure } from "./api.js";
import { debounce } from "./debounce.js";
import { ProblemState, emptyProblem, importanceForTargetWeight } from "./state.js";
import type { SensitivityData } from "./views/sensitivity.js";
import { renderEditor } from "./views/editor.js";
import { renderResults } from "./views/results.js";
import { renderSensitivity } from "./views/sensitivity.js";

const EVALUATE_DEBOUNCE_MS = 150;

const api = new ApiClient("");
const state = new ProblemState();

const editorPanel = document.getElementById("editor")!;
const resultsPanel = document.getElementById("results")!;
const sensitivityPanel = document.getElementById("sensitivity")!;
const toolbar = document.getElementById("toolbar")!;

let offline = false;
const sensitivity: SensitivityData = {
  attribute: null, sweep: null, critical: null, whatIf: null,
  error: null, sliderT: 0.5,
};

function renderAll(): void {
  renderEditor(editorPanel, state);
  renderResults(resultsPanel, state, { offline, onRetry: () => requestEvaluation() });
  renderSensitivity(sensitivityPanel, state, sensitivity, {
    onAttributeChosen: (attribute) => { void refreshSensitivity(attribute); },
    onSliderCommit: (attribute, t) => { void runWhatIf(attribute, t); },
  });
  renderToolbar();
}

async function evaluateNow(): Promise<void> {
  if (!state.canEvaluate) return;
  const generation = state.generation;
  try {
    const payload = await api.evaluate(state.exportDocument());
    offline = false;
    state.acceptResults(payload, generation);
    renderAll();
  } catch (error) {
    if (error instanceof DOMException && error.name === "AbortError") return;
    if (error instanceof ValidationFailure) return; // local validation will catch up
    offline = true;
    renderAll();
  }
}

const requestEvaluation = debounce(() => { void evaluateNow(); }, EVALUATE_DEBOUNCE_MS);

state.subscribe(() => {
  renderAll();
  requestEvaluation();
});

// -- save / load / export ---------------------------------------------------

function renderToolbar(): void {
  toolbar.textContent = "";
  const title = document.createElement("strong");
  title.textContent = "mauakit";
  toolbar.appendChild(title);

  const save = document.createElement("button");
  save.textContent = state.problemId ? `save (rev ${state.revision})` : "save";
  save.disabled = !state.canSave;
  save.addEventListener("click", () => { void saveProblem(); });
  toolbar.appendChild(save);

  const fresh = document.createElement("button");
  fresh.textContent = "new";
  fresh.addEventListener("click", () => state.loadDocument(emptyProblem(), null, null));
  toolbar.appendChild(fresh);

  const open = document.createElement("select");
  const placeholder = document.createElement("option");
  placeholder.textContent = "open…";
  placeholder.value = "";
  open.appendChild(placeholder);
  open.addEventListener("focus", () => { void populateOpenList(open); });
  open.addEventListener("change", () => {
    if (open.value) void openProblem(open.value);
  });
  toolbar.appendChild(open);

  const exportButton = document.createElement("button");
  exportButton.textContent = "export JSON";
  exportButton.addEventListener("click", exportDocument);
  toolbar.appendChild(exportButton);

  if (state.dirty) {
    const dirty = document.createElement("span");
    dirty.className = "muted";
    dirty.textContent = "unsaved changes";
    toolbar.appendChild(dirty);
  }
}

async function saveProblem(): Promise<void> {
  const doc = state.exportDocument();
  try {
    if (state.problemId === null) {
      const created = await api.createProblem(doc);
      state.markSaved(created.id, created.revision);
    } else {
      const updated = await api.putProblem(state.problemId, doc, state.revision ?? 0);
      state.markSaved(state.problemId, updated.revision);
    }
    void refreshSensitivity(sensitivity.attribute ?? undefined);
  } catch (error) {
    if (error instanceof RevisionConflict) {
      // never overwrite silently: the user chooses
      const takeTheirs = window.confirm(
        `This problem changed on the server (now revision ${error.currentRevision}). ` +
        `OK to load the server copy and discard local edits; Cancel to keep editing.`);
      if (takeTheirs && state.problemId) {
        const current = await api.getProblem(state.problemId);
        state.loadDocument(current.document, state.problemId, current.revision);
      }
      return;
    }
    if (error instanceof ValidationFailure) {
      window.alert("the service rejected the document:\n" + error.report.issues
        .map((issue) => `${issue.path}: ${issue.message}`).join("\n"));
      return;
    }
    offline = error instanceof ServiceError ? false : true;
    renderAll();
  }
}

async function populateOpenList(select: HTMLSelectElement): Promise<void> {
  try {
    const listing = await api.listProblems();
    while (select.options.length > 1) select.remove(1);
    for (const entry of listing) {
      const option = document.createElement("option");
      option.value = entry.id;
      option.textContent = `${entry.name} (rev ${entry.revision})`;
      select.appendChild(option);
    }
  } catch {
    /* listing is best-effort */
  }
}

async function openProblem(id: string): Promise<void> {
  const current = await api.getProblem(id);
  state.loadDocument(current.document, id, current.revision);
  void refreshSensitivity(undefined);
}

function exportDocument(): void {
  const text = JSON.stringify(state.exportDocument(), null, 2) + "\n";
  const blob = new Blob([text], { type: "application/json" });
  const link = document.createElement("a");
  link.href = URL.createObjectURL(blob);
  link.download = (state.document.name || "problem") + ".json";
  link.click();
  URL.revokeObjectURL(link.href);
}

// -- sensitivity ------------------------------------------------------------

async function refreshSensitivity(attribute?: string): Promise<void> {
  if (state.problemId === null || state.document.attributes.length < 2) {
    sensitivity.sweep = null;
    sensitivity.critical = null;
    renderAll();
    return;
  }
  const chosen = attribute ?? state.document.attributes[0]!.name;
  sensitivity.attribute = chosen;
  sensitivity.error = null;
  sensitivity.whatIf = null;
  try {
    sensitivity.sweep = await api.sweep(state.problemId, chosen, 101);
  } catch (error) {
    sensitivity.sweep = null;
    sensitivity.error = error instanceof ValidationFailure
      ? error.report.issues.map((issue) => issue.message).join("; ")
      : String(error);
    renderAll();
    return;
  }
  try {
    sensitivity.critical = await api.critical(state.problemId, chosen);
  } catch (error) {
    // sweep stays useful; surface the server's message verbatim
    sensitivity.critical = null;
    if (error instanceof ValidationFailure) {
      sensitivity.error = error.report.issues.map((issue) => issue.message).join("; ");
    }
  }
  renderAll();
}

async function runWhatIf(attribute: string, t: number): Promise<void> {
  if (state.problemId === null) return;
  sensitivity.sliderT = t;
  const importance = importanceForTargetWeight(state.document, attribute, t);
  try {
    sensitivity.whatIf = await api.whatIf(state.problemId,
      { importances: { [attribute]: importance } });
    sensitivity.error = null;
  } catch (error) {
    sensitivity.whatIf = null;
    sensitivity.error = error instanceof ValidationFailure
      ? error.report.issues.map((issue) => issue.message).join("; ")
      : String(error);
  }
  renderAll();
}

renderAll();
requestEvaluation();
