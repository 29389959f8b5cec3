/** Legend gradient, mirroring the service's documented color convention.
 *
 * Ball colors are always taken verbatim from the server's per-ball `hex`
 * field; these stops exist only to paint the continuous legend bar between
 * the server-provided domain endpoints.
 */
export const GRADIENT_STOPS = [
  "#ff0000", // red (low)
  "#ff7f00", // orange
  "#ffff00", // yellow
  "#00c000", // green
  "#0000ff", // blue
  "#8000ff", // purple (high)
] as const;

function channel(hex: string, offset: number): number {
  return parseInt(hex.slice(offset, offset + 2), 16);
}

/** Hex color at gradient position t in [0, 1], piecewise-linear. */
export function colorAt(t: number): string {
  const clamped = Math.min(Math.max(t, 0), 1);
  const x = clamped * (GRADIENT_STOPS.length - 1);
  const i = Math.min(Math.floor(x), GRADIENT_STOPS.length - 2);
  const frac = x - i;
  const low = GRADIENT_STOPS[i]!;
  const high = GRADIENT_STOPS[i + 1]!;
  const mix = (offset: number) =>
    Math.round(channel(low, offset) * (1 - frac) + channel(high, offset) * frac);
  const rgb = [mix(1), mix(3), mix(5)];
  return `#${rgb.map((v) => v.toString(16).padStart(2, "0")).join("")}`;
}

/** Compact numeric label for legend endpoints and panel values. */
export function formatValue(value: number): string {
  if (Number.isInteger(value) && Math.abs(value) < 1e15) return String(value);
  return Number(value.toPrecision(4)).toString();
}
