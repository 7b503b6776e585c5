/** Number formatting shared across views. Text shows 4 decimals for
 * statistics (matching the CLI's tabular report); exact values always
 * travel alongside in data-value attributes. */

export function fmt4(value: number): string {
  return value.toFixed(4);
}

export function fmtPercent(fraction: number): string {
  return `${(fraction * 100).toFixed(2)}%`;
}

export function fmtCount(count: number): string {
  return count.toLocaleString("en-US");
}

/** Compact bound label for chips and axes. */
export function fmtBound(value: number): string {
  if (Number.isInteger(value)) return String(value);
  const magnitude = Math.abs(value);
  if (magnitude >= 1000 || (magnitude < 0.001 && magnitude > 0)) {
    return value.toExponential(2);
  }
  return String(Math.round(value * 1000) / 1000);
}
