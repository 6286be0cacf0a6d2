/** Live results panel: ranking with tie badges, utility bars, and the
 * per-attribute contribution stack. All numbers come straight from the
 * service's evaluation payload. */

import { contributionBars, utilityBars } from "../charts.js";
import { fmt4 } from "../format.js";
import type { ProblemState } from "../state.js";

export interface ResultsViewFlags {
  offline: boolean;
  onRetry: () => void;
}

export function renderResults(
  container: HTMLElement, state: ProblemState, flags: ResultsViewFlags,
): void {
  container.textContent = "";
  const heading = document.createElement("h3");
  heading.textContent = "Results";
  container.appendChild(heading);

  if (flags.offline) {
    const banner = document.createElement("div");
    banner.className = "banner error";
    banner.textContent = "service unreachable — showing last known results ";
    const retry = document.createElement("button");
    retry.textContent = "retry";
    retry.addEventListener("click", flags.onRetry);
    banner.appendChild(retry);
    container.appendChild(banner);
  }

  if (!state.canEvaluate) {
    const note = document.createElement("p");
    note.className = "muted";
    note.textContent = "fix the validation errors to see results";
    container.appendChild(note);
  }

  const results = state.results;
  if (!results) return;

  const body = document.createElement("div");
  body.className = state.resultsStale || flags.offline ? "results stale" : "results";

  const list = document.createElement("ol");
  list.className = "ranking";
  for (const entry of results.payload.ranking) {
    const item = document.createElement("li");
    item.value = entry.rank;
    item.textContent = `${entry.option} — ${fmt4(entry.display_utility)}`;
    if (entry.tied) {
      const badge = document.createElement("span");
      badge.className = "tie-badge";
      badge.textContent = "tie";
      item.appendChild(badge);
    }
    list.appendChild(item);
  }
  body.appendChild(list);

  const bars = document.createElement("div");
  bars.innerHTML = utilityBars(results.payload);
  body.appendChild(bars);

  if (results.payload.options.some((o) => o.contributions)) {
    const subtitle = document.createElement("h4");
    subtitle.textContent = "weighted contributions";
    body.appendChild(subtitle);
    const stack = document.createElement("div");
    stack.innerHTML = contributionBars(results.payload);
    body.appendChild(stack);
  }
  container.appendChild(body);
}
