/** Sensitivity panel: utility-vs-weight lines for one attribute with
 * breakpoint markers, plus a draggable weight slider that runs what-if
 * round-trips against the saved problem. */

import { findWinnerFlips, sweepChart } from "../charts.js";
import { fmt4, fmtT } from "../format.js";
import type { ProblemState } from "../state.js";
import type { CriticalPayload, SweepPayload, WhatIfPayload } from "../types.js";

export interface SensitivityHooks {
  onAttributeChosen: (attribute: string) => void;
  onSliderCommit: (attribute: string, t: number) => void;
}

export interface SensitivityData {
  attribute: string | null;
  sweep: SweepPayload | null;
  critical: CriticalPayload | null;
  whatIf: WhatIfPayload | null;
  error: string | null;
  sliderT: number;
}

export function renderSensitivity(
  container: HTMLElement,
  state: ProblemState,
  data: SensitivityData,
  hooks: SensitivityHooks,
): void {
  container.textContent = "";
  const heading = document.createElement("h3");
  heading.textContent = "Sensitivity";
  container.appendChild(heading);

  if (state.problemId === null) {
    const note = document.createElement("p");
    note.className = "muted";
    note.textContent = "save the problem to explore weight sensitivity";
    container.appendChild(note);
    return;
  }
  if (state.document.attributes.length < 2) {
    const note = document.createElement("p");
    note.className = "muted";
    note.textContent = "sensitivity needs at least two attributes";
    container.appendChild(note);
    return;
  }

  const picker = document.createElement("select");
  for (const attr of state.document.attributes) {
    const option = document.createElement("option");
    option.value = attr.name;
    option.textContent = `sweep weight of: ${attr.name}`;
    picker.appendChild(option);
  }
  if (data.attribute) picker.value = data.attribute;
  picker.addEventListener("change", () => hooks.onAttributeChosen(picker.value));
  container.appendChild(picker);

  if (data.error) {
    const banner = document.createElement("div");
    banner.className = "banner error";
    banner.textContent = data.error; // server message shown verbatim
    container.appendChild(banner);
    return;
  }
  if (!data.sweep || !data.attribute) return;

  const chart = document.createElement("div");
  chart.innerHTML = sweepChart(data.sweep, data.critical?.breakpoints ?? []);
  container.appendChild(chart);

  const summary = document.createElement("p");
  summary.className = "muted";
  const flips = findWinnerFlips(data.sweep);
  if (data.critical && data.critical.breakpoints.length > 0) {
    summary.textContent = "winner changes at " + data.critical.breakpoints
      .map((bp) => `t=${fmtT(bp.t)} (${bp.left} → ${bp.right})`).join(", ");
  } else if (flips.length > 0) {
    summary.textContent = "winner changes near " +
      flips.map((f) => `t=${fmtT(f.t)} (${f.from} → ${f.to})`).join(", ");
  } else {
    summary.textContent = "the same option wins across the whole sweep";
  }
  container.appendChild(summary);

  const sliderRow = document.createElement("div");
  sliderRow.className = "slider-row";
  const label = document.createElement("span");
  label.className = "lbl";
  label.textContent = `what-if weight of ${data.attribute}: ${fmtT(data.sliderT)}`;
  const slider = document.createElement("input");
  slider.type = "range";
  slider.min = "0";
  slider.max = "0.99";
  slider.step = "0.01";
  slider.value = String(data.sliderT);
  slider.addEventListener("input", () => {
    label.textContent = `what-if weight of ${data.attribute}: ${fmtT(Number(slider.value))}`;
  });
  slider.addEventListener("change", () =>
    hooks.onSliderCommit(data.attribute!, Number(slider.value)));
  sliderRow.appendChild(label);
  sliderRow.appendChild(slider);
  container.appendChild(sliderRow);

  if (data.whatIf) {
    const table = document.createElement("table");
    table.className = "whatif-table";
    const head = document.createElement("tr");
    for (const caption of ["option", "before", "after", "rank"]) {
      const th = document.createElement("th");
      th.textContent = caption;
      head.appendChild(th);
    }
    table.appendChild(head);
    for (const delta of data.whatIf.deltas) {
      const tr = document.createElement("tr");
      const cells = [
        delta.option,
        fmt4(delta.utility_before),
        fmt4(delta.utility_after),
        `${delta.rank_before} → ${delta.rank_after}`,
      ];
      for (const text of cells) {
        const td = document.createElement("td");
        td.textContent = text;
        tr.appendChild(td);
      }
      table.appendChild(tr);
    }
    container.appendChild(table);
  }
}
