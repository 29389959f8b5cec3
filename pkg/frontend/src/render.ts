import { colorAt, formatValue } from "./colors.js";
import type { GraphDocument, GraphMetadata } from "./types.js";

/** The 2D-context slice the renderer draws with; test stubs implement it,
 * and a real CanvasRenderingContext2D satisfies it structurally. */
export interface Canvas2D {
  fillStyle: string;
  strokeStyle: string;
  lineWidth: number;
  font: string;
  textAlign: string;
  textBaseline: string;
  clearRect(x: number, y: number, w: number, h: number): void;
  fillRect(x: number, y: number, w: number, h: number): void;
  strokeRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  arc(x: number, y: number, r: number, start: number, end: number): void;
  fill(): void;
  stroke(): void;
  fillText(text: string, x: number, y: number): void;
}

export interface Viewport {
  width: number;
  height: number;
  padding?: number;
}

/** Affine map from layout coordinates to pixels, aspect preserved. */
export interface Projection {
  scale: number;
  toX(x: number): number;
  toY(y: number): number;
}

export function fitProjection(doc: GraphDocument, vp: Viewport): Projection {
  const pad = vp.padding ?? 24;
  let minX = Infinity;
  let maxX = -Infinity;
  let minY = Infinity;
  let maxY = -Infinity;
  for (const ball of doc.balls) {
    minX = Math.min(minX, ball.x - ball.radius);
    maxX = Math.max(maxX, ball.x + ball.radius);
    minY = Math.min(minY, ball.y - ball.radius);
    maxY = Math.max(maxY, ball.y + ball.radius);
  }
  const spanX = Math.max(maxX - minX, 1e-9);
  const spanY = Math.max(maxY - minY, 1e-9);
  const scale = Math.min(
    (vp.width - 2 * pad) / spanX,
    (vp.height - 2 * pad) / spanY,
  );
  const centerX = (minX + maxX) / 2;
  const centerY = (minY + maxY) / 2;
  return {
    scale,
    toX: (x) => vp.width / 2 + (x - centerX) * scale,
    // canvas y grows downward; keep layout orientation by flipping
    toY: (y) => vp.height / 2 - (y - centerY) * scale,
  };
}

export interface RenderOptions {
  showLabels: boolean;
  selected: number | null;
}

export interface RenderStats {
  balls: number;
  edges: number;
  labels: number;
}

/** Draw the graph exactly as the server laid it out: every circle sits at
 * the server's position with the server's radius and hex color. */
export function renderGraph(
  ctx: Canvas2D,
  doc: GraphDocument,
  vp: Viewport,
  opts: RenderOptions,
): RenderStats {
  const proj = fitProjection(doc, vp);
  const byId = new Map(doc.balls.map((ball) => [ball.id, ball]));
  ctx.clearRect(0, 0, vp.width, vp.height);

  ctx.strokeStyle = "#9a9a9a";
  ctx.lineWidth = 1;
  let edges = 0;
  for (const [a, b] of doc.edges) {
    const from = byId.get(a);
    const to = byId.get(b);
    if (from === undefined || to === undefined) continue;
    ctx.beginPath();
    ctx.moveTo(proj.toX(from.x), proj.toY(from.y));
    ctx.lineTo(proj.toX(to.x), proj.toY(to.y));
    ctx.stroke();
    edges += 1;
  }

  for (const ball of doc.balls) {
    ctx.beginPath();
    ctx.arc(
      proj.toX(ball.x),
      proj.toY(ball.y),
      ball.radius * proj.scale,
      0,
      2 * Math.PI,
    );
    ctx.fillStyle = ball.hex;
    ctx.fill();
    const isSelected = ball.id === opts.selected;
    ctx.strokeStyle = isSelected ? "#000000" : "#555555";
    ctx.lineWidth = isSelected ? 2.5 : 0.75;
    ctx.stroke();
  }

  let labels = 0;
  if (opts.showLabels) {
    ctx.fillStyle = "#111111";
    ctx.font = "11px sans-serif";
    ctx.textAlign = "center";
    ctx.textBaseline = "middle";
    for (const ball of doc.balls) {
      ctx.fillText(String(ball.id), proj.toX(ball.x), proj.toY(ball.y));
      labels += 1;
    }
  }
  return { balls: doc.balls.length, edges, labels };
}

/** Topmost ball under the pixel (last drawn wins), or null. */
export function pickBall(
  doc: GraphDocument,
  vp: Viewport,
  px: number,
  py: number,
): number | null {
  const proj = fitProjection(doc, vp);
  for (let i = doc.balls.length - 1; i >= 0; i -= 1) {
    const ball = doc.balls[i]!;
    const dx = px - proj.toX(ball.x);
    const dy = py - proj.toY(ball.y);
    // a couple of pixels of slop so tiny balls stay clickable
    const reach = Math.max(ball.radius * proj.scale, 3);
    if (dx * dx + dy * dy <= reach * reach) return ball.id;
  }
  return null;
}

/** Continuous legend bar with the server-provided numeric domain. */
export function renderLegend(
  ctx: Canvas2D,
  metadata: GraphMetadata,
  vp: Viewport,
  slices: number = 64,
): { slices: number; low: string; high: string } {
  const pad = vp.padding ?? 24;
  const barWidth = vp.width - 2 * pad;
  const barHeight = Math.max(vp.height - 22, 4);
  ctx.clearRect(0, 0, vp.width, vp.height);
  const step = barWidth / slices;
  for (let i = 0; i < slices; i += 1) {
    ctx.fillStyle = colorAt((i + 0.5) / slices);
    ctx.fillRect(pad + i * step, 0, step + 0.5, barHeight);
  }
  ctx.strokeStyle = "#555555";
  ctx.lineWidth = 1;
  ctx.strokeRect(pad, 0, barWidth, barHeight);

  const low = formatValue(metadata.color_low);
  const high = formatValue(metadata.color_high);
  ctx.fillStyle = "#111111";
  ctx.font = "12px sans-serif";
  ctx.textBaseline = "top";
  ctx.textAlign = "left";
  ctx.fillText(low, pad, barHeight + 4);
  ctx.textAlign = "right";
  ctx.fillText(high, pad + barWidth, barHeight + 4);
  return { slices, low, high };
}
