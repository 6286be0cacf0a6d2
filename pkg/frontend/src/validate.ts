/** Client-side validation mirror.
 *
 * Reproduces the service's semantic checks with identical issue paths so
 * inline messages match what a 422 body would say. Only gates Save and
 * live evaluation; the service remains the authority.
 */

import type { AttributeSpec, ProblemDocument, ValidationIssue } from "./types.js";

function finite(x: unknown): x is number {
  return typeof x === "number" && Number.isFinite(x);
}

export function validateDocument(doc: ProblemDocument): ValidationIssue[] {
  const issues: ValidationIssue[] = [];
  const error = (path: string, message: string) =>
    issues.push({ severity: "error", path, message });
  const warning = (path: string, message: string) =>
    issues.push({ severity: "warning", path, message });

  if (doc.attributes.length === 0) error("attributes", "at least one attribute is required");
  if (doc.options.length === 0) error("options", "at least one option is required");

  const seenAttrs = new Set<string>();
  const attrByName = new Map<string, AttributeSpec>();
  let anyPositive = false;
  doc.attributes.forEach((attr, i) => {
    const base = `attributes[${i}]`;
    if (!attr.name) error(`${base}.name`, "attribute name must be non-empty");
    else if (seenAttrs.has(attr.name)) error(`${base}.name`, `duplicate attribute name '${attr.name}'`);
    seenAttrs.add(attr.name);

    if (!finite(attr.importance)) error(`${base}.importance`, "importance must be a finite number");
    else if (attr.importance < 0) error(`${base}.importance`, "importance must be non-negative");
    else if (attr.importance > 0) anyPositive = true;

    let attrOk = true;
    if (attr.kind === "direct") {
      if (attr.direction !== undefined) error(`${base}.direction`, "direction is only valid for derived attributes");
      if (attr.range !== undefined) error(`${base}.range`, "range is only valid for derived attributes");
      if (attr.curve !== undefined) error(`${base}.curve`, "curve is only valid for derived attributes");
    } else {
      if (attr.direction === undefined) {
        error(`${base}.direction`, "derived attribute requires a direction");
        attrOk = false;
      }
      if (!attr.range || !finite(attr.range[0]) || !finite(attr.range[1])) {
        error(`${base}.range`, "derived attribute requires finite range anchors");
        attrOk = false;
      } else if (attr.range[0] >= attr.range[1]) {
        error(`${base}.range`, "degenerate range: range_low must be strictly below range_high");
        attrOk = false;
      }
      if (attr.curve) {
        if (attr.curve.shape === "power") {
          if (!finite(attr.curve.gamma) || (attr.curve.gamma as number) <= 0) {
            error(`${base}.curve.gamma`, "power curve requires gamma > 0");
            attrOk = false;
          }
        } else if (attr.curve.gamma !== undefined) {
          error(`${base}.curve.gamma`, "gamma is only valid for power curves");
          attrOk = false;
        }
      }
    }
    if (attrOk && attr.name && !attrByName.has(attr.name)) attrByName.set(attr.name, attr);
  });

  if (doc.attributes.length > 0 && !anyPositive) {
    error("attributes", "no positive importance: at least one attribute must have importance > 0");
  }

  const attrNames = doc.attributes.map((a) => a.name);
  const seenOptions = new Set<string>();
  doc.options.forEach((option, j) => {
    const obase = `options[${j}]`;
    if (!option.name) error(`${obase}.name`, "option name must be non-empty");
    else if (seenOptions.has(option.name)) error(`${obase}.name`, `duplicate option name '${option.name}'`);
    seenOptions.add(option.name);

    const scenarios = option.scenarios ?? [
      { probability: 1.0, values: option.values ?? {} },
    ];
    if (scenarios.length === 0) {
      error(`${obase}.scenarios`, "option requires at least one scenario");
      return;
    }
    let probSum = 0;
    let probsOk = true;
    scenarios.forEach((scenario, k) => {
      const sbase = `${obase}.scenarios[${k}]`;
      if (!finite(scenario.probability)) {
        error(`${sbase}.probability`, "probability must be a finite number");
        probsOk = false;
      } else if (scenario.probability < 0 || scenario.probability > 1) {
        error(`${sbase}.probability`, "probability must lie in [0, 1]");
        probsOk = false;
      } else {
        probSum += scenario.probability;
      }
      for (const name of attrNames) {
        if (!(name in scenario.values)) {
          error(`${sbase}.values.${name}`, `missing value for attribute '${name}'`);
        }
      }
      for (const [name, value] of Object.entries(scenario.values)) {
        const vpath = `${sbase}.values.${name}`;
        if (!attrNames.includes(name)) {
          error(vpath, `value for unknown attribute '${name}'`);
          continue;
        }
        if (!finite(value)) {
          error(vpath, "value must be a finite number");
          continue;
        }
        const attr = attrByName.get(name);
        if (!attr) continue;
        if (attr.kind === "direct") {
          if (value < 0 || value > 100) error(vpath, "direct locator values must lie in [0, 100]");
        } else if (attr.range && (value < attr.range[0] || value > attr.range[1])) {
          warning(vpath, `value ${value} is outside the anchor range ` +
            `[${attr.range[0]}, ${attr.range[1]}] and will be clamped`);
        }
      }
    });
    if (probsOk) {
      if (scenarios.length === 1) {
        if (scenarios[0]!.probability !== 1.0) {
          error(`${obase}.scenarios[0].probability`, "a single scenario must have probability exactly 1");
        }
      } else if (Math.abs(probSum - 1.0) > 1e-9) {
        error(`${obase}.scenarios`, `scenario probabilities must sum to 1 (got ${probSum})`);
      }
    }
  });

  return issues;
}

export function hasErrors(issues: ValidationIssue[]): boolean {
  return issues.some((i) => i.severity === "error");
}
