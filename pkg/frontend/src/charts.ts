/** Pure SVG builders: functions from data to markup strings.
 * Keeping these DOM-free makes them unit-testable and trivially inert --
 * they draw exactly the numbers the service sent, nothing derived. */

import type { BreakpointEntry, EvaluationPayload, SweepPayload } from "./types.js";
import { fmt4, fmtT } from "./format.js";

const PALETTE = ["#3b6ea5", "#b5651d", "#4a7c59", "#7b4b94", "#a04040", "#568f8b"];

export function colorFor(index: number): string {
  return PALETTE[index % PALETTE.length]!;
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Horizontal utility bars, one per option, labeled with display values. */
export function utilityBars(payload: EvaluationPayload, width = 520): string {
  const rowH = 28;
  const labelW = 150;
  const height = payload.options.length * rowH + 4;
  const parts: string[] = [];
  payload.options.forEach((option, i) => {
    const y = i * rowH + 4;
    const barW = Math.max(option.utility * (width - labelW - 80), 0);
    parts.push(
      `<text x="${labelW - 8}" y="${y + 15}" text-anchor="end" class="bar-label">` +
        `${esc(option.name)}</text>`,
      `<rect x="${labelW}" y="${y}" width="${barW.toFixed(2)}" height="${rowH - 8}" ` +
        `fill="${colorFor(i)}" rx="3"></rect>`,
      `<text x="${labelW + barW + 6}" y="${y + 15}" class="bar-value">` +
        `${fmt4(option.display_utility)}</text>`,
    );
  });
  return `<svg viewBox="0 0 ${width} ${height}" width="100%" role="img">${parts.join("")}</svg>`;
}

/** Stacked per-attribute contribution bars (additive mode only). */
export function contributionBars(payload: EvaluationPayload, width = 520): string {
  const rowH = 28;
  const labelW = 150;
  const span = width - labelW - 40;
  const height = payload.options.length * rowH + 24;
  const parts: string[] = [];
  payload.options.forEach((option, i) => {
    const y = i * rowH + 4;
    parts.push(`<text x="${labelW - 8}" y="${y + 15}" text-anchor="end" class="bar-label">` +
      `${esc(option.name)}</text>`);
    if (!option.contributions) return;
    let x = labelW;
    option.contributions.forEach((contribution, a) => {
      const w = Math.max(contribution * span, 0);
      parts.push(`<rect x="${x.toFixed(2)}" y="${y}" width="${w.toFixed(2)}" ` +
        `height="${rowH - 8}" fill="${colorFor(a)}"` +
        `><title>${esc(payload.attributes[a] ?? "")}: ${fmt4(contribution)}</title></rect>`);
      x += w;
    });
  });
  // legend
  let lx = labelW;
  const ly = payload.options.length * rowH + 16;
  payload.attributes.forEach((name, a) => {
    parts.push(
      `<rect x="${lx}" y="${ly - 9}" width="10" height="10" fill="${colorFor(a)}"></rect>`,
      `<text x="${lx + 14}" y="${ly}" class="legend">${esc(name)}</text>`,
    );
    lx += 14 + 8 * Math.max(name.length, 4) + 16;
  });
  return `<svg viewBox="0 0 ${width} ${height}" width="100%" role="img">${parts.join("")}</svg>`;
}

/** Per-option utility lines over the swept weight t, with breakpoint marks. */
export function sweepChart(
  sweep: SweepPayload,
  breakpoints: BreakpointEntry[] = [],
  width = 560,
  height = 280,
): string {
  const margin = { top: 12, right: 16, bottom: 28, left: 44 };
  const plotW = width - margin.left - margin.right;
  const plotH = height - margin.top - margin.bottom;
  const xFor = (t: number) => margin.left + t * plotW;
  const yFor = (u: number) => margin.top + (1 - u) * plotH;

  const names: string[] = [];
  for (const entry of sweep.samples[0]?.ranking ?? []) names.push(entry.option);
  names.sort();

  const parts: string[] = [];
  // frame and gridlines at quarters
  for (const q of [0, 0.25, 0.5, 0.75, 1]) {
    parts.push(`<line x1="${xFor(q)}" y1="${margin.top}" x2="${xFor(q)}" ` +
      `y2="${margin.top + plotH}" class="grid"></line>`);
    parts.push(`<text x="${xFor(q)}" y="${height - 8}" text-anchor="middle" class="axis">` +
      `${q}</text>`);
    parts.push(`<line x1="${margin.left}" y1="${yFor(q)}" ` +
      `x2="${margin.left + plotW}" y2="${yFor(q)}" class="grid"></line>`);
    parts.push(`<text x="${margin.left - 6}" y="${yFor(q) + 4}" text-anchor="end" ` +
      `class="axis">${q}</text>`);
  }
  names.forEach((name, i) => {
    const points = sweep.samples.map((sample) => {
      const entry = sample.ranking.find((e) => e.option === name);
      return `${xFor(sample.t).toFixed(2)},${yFor(entry ? entry.utility : 0).toFixed(2)}`;
    });
    parts.push(`<polyline points="${points.join(" ")}" fill="none" ` +
      `stroke="${colorFor(i)}" stroke-width="2"><title>${esc(name)}</title></polyline>`);
  });
  for (const bp of breakpoints) {
    parts.push(`<line x1="${xFor(bp.t)}" y1="${margin.top}" x2="${xFor(bp.t)}" ` +
      `y2="${margin.top + plotH}" class="breakpoint">` +
      `<title>t=${fmtT(bp.t)}: ${esc(bp.left)} -&gt; ${esc(bp.right)}</title></line>`);
  }
  // legend
  let lx = margin.left;
  names.forEach((name, i) => {
    parts.push(
      `<rect x="${lx}" y="2" width="10" height="3" fill="${colorFor(i)}"></rect>`,
      `<text x="${lx + 14}" y="8" class="legend">${esc(name)}</text>`,
    );
    lx += 14 + 8 * Math.max(name.length, 4) + 16;
  });
  return `<svg viewBox="0 0 ${width} ${height}" width="100%" role="img">${parts.join("")}</svg>`;
}

/** Shape preview for the curve picker: samples of the selected curve.
 * Visualization of the chosen input shape, not a utility computation. */
export function curvePreview(
  shape: "linear" | "power" | "s_shape",
  gamma: number | undefined,
  width = 120,
  height = 80,
): string {
  const samples = 33;
  const points: string[] = [];
  for (let i = 0; i < samples; i++) {
    const t = i / (samples - 1);
    let u = t;
    if (shape === "power") u = Math.pow(t, gamma ?? 0.5);
    else if (shape === "s_shape") u = t * t * (3 - 2 * t);
    points.push(`${(4 + t * (width - 8)).toFixed(2)},${(4 + (1 - u) * (height - 8)).toFixed(2)}`);
  }
  return `<svg viewBox="0 0 ${width} ${height}" class="curve-preview" role="img">` +
    `<rect x="3" y="3" width="${width - 6}" height="${height - 6}" class="preview-frame"></rect>` +
    `<polyline points="${points.join(" ")}" fill="none" stroke="#3b6ea5" stroke-width="1.5">` +
    `</polyline></svg>`;
}

/** Winner changes between consecutive sweep samples. */
export function findWinnerFlips(sweep: SweepPayload): { t: number; from: string; to: string }[] {
  const flips: { t: number; from: string; to: string }[] = [];
  let previous: string | null = null;
  for (const sample of sweep.samples) {
    const top = sample.ranking[0]?.option ?? "";
    if (previous !== null && top !== previous) {
      flips.push({ t: sample.t, from: previous, to: top });
    }
    previous = top;
  }
  return flips;
}
