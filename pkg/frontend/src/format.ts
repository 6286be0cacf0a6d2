/** Display formatting: at most 4 fractional digits, trailing zeros cut.
 * Matches the CLI's human rounding so cross-interface comparisons line up. */
export function fmt4(value: number): string {
  const text = value.toFixed(4).replace(/0+$/, "").replace(/\.$/, "");
  return text === "" || text === "-" || text === "-0" ? "0" : text;
}

/** Fractional t rendered for slider labels and breakpoint markers. */
export function fmtT(t: number): string {
  return t.toFixed(4);
}

/** Signed delta in display scale. */
export function fmtDelta(value: number): string {
  const text = fmt4(Math.abs(value));
  if (text === "0") return "±0";
  return (value >= 0 ? "+" : "-") + text;
}
