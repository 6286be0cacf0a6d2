import { describe, expect, it } from "vitest";

import criticalToy from "./fixtures/critical-symmetric-toy.json";
import evaluateTreatment from "./fixtures/evaluate-treatment-plans.json";
import sweepToy from "./fixtures/sweep-symmetric-toy.json";
import {
  contributionBars,
  curvePreview,
  findWinnerFlips,
  sweepChart,
  utilityBars,
} from "../src/charts.js";
import type { CriticalPayload, EvaluationPayload, SweepPayload } from "../src/types.js";

const payload = evaluateTreatment as unknown as EvaluationPayload;
const sweep = sweepToy as unknown as SweepPayload;
const critical = criticalToy as unknown as CriticalPayload;

describe("findWinnerFlips", () => {
  it("sees the symmetric toy's winner flip at t = 0.5", () => {
    const flips = findWinnerFlips(sweep);
    expect(flips).toHaveLength(1);
    expect(flips[0]!.t).toBeCloseTo(0.5, 12);
    expect(flips[0]!.from).toBe("B");
    expect(flips[0]!.to).toBe("A");
  });

  it("agrees with the exact breakpoint from the service", () => {
    expect(critical.breakpoints).toHaveLength(1);
    expect(critical.breakpoints[0]!.t).toBeCloseTo(0.5, 9);
    expect(critical.top_at_zero).toBe("B");
    expect(critical.top_at_one).toBe("A");
  });
});

describe("svg builders", () => {
  it("utility bars show the display values verbatim", () => {
    const svg = utilityBars(payload);
    expect(svg).toContain(">76<");
    expect(svg).toContain(">73<");
    expect(svg).toContain("Plan A");
    expect((svg.match(/<rect/g) ?? [])).toHaveLength(3);
  });

  it("contribution bars stack one segment per attribute", () => {
    const svg = contributionBars(payload);
    // 3 options x 4 attributes + 4 legend swatches
    expect((svg.match(/<rect/g) ?? [])).toHaveLength(16);
    expect(svg).toContain("effectiveness");
  });

  it("sweep chart draws one polyline per option and marks breakpoints", () => {
    const svg = sweepChart(sweep, critical.breakpoints);
    expect((svg.match(/<polyline/g) ?? [])).toHaveLength(2);
    expect(svg).toContain('class="breakpoint"');
    expect(svg).toContain("t=0.5000");
  });

  it("curve preview renders a polyline for every shape", () => {
    for (const shape of ["linear", "power", "s_shape"] as const) {
      expect(curvePreview(shape, 0.5)).toContain("<polyline");
    }
  });

  it("escapes markup in option names", () => {
    const hostile = JSON.parse(JSON.stringify(payload)) as EvaluationPayload;
    hostile.options[0]!.name = '<script>"x"</script>';
    const svg = utilityBars(hostile);
    expect(svg).not.toContain("<script>");
    expect(svg).toContain("&lt;script&gt;");
  });
});
