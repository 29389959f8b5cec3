import { describe, expect, test } from "vitest";

import { colorAt, formatValue, GRADIENT_STOPS } from "../src/colors.js";
import {
  fitProjection,
  pickBall,
  renderGraph,
  renderLegend,
  type Canvas2D,
  type Viewport,
} from "../src/render.js";
import type { GraphDocument } from "../src/types.js";
import { fixture } from "./helpers.js";

/** Records every drawing call; enough structure to count shapes. */
class RecordingContext implements Canvas2D {
  fillStyle = "";
  strokeStyle = "";
  lineWidth = 0;
  font = "";
  textAlign = "";
  textBaseline = "";
  readonly arcs: Array<{ x: number; y: number; r: number; fill: string }> = [];
  readonly lines: Array<[number, number, number, number]> = [];
  readonly rects: Array<{ x: number; w: number; fill: string }> = [];
  readonly texts: Array<{ text: string; x: number; y: number }> = [];
  private path: Array<{ kind: string; x: number; y: number; r?: number }> = [];

  clearRect(): void {}
  fillRect(x: number, _y: number, w: number): void {
    this.rects.push({ x, w, fill: this.fillStyle });
  }
  strokeRect(): void {}
  beginPath(): void {
    this.path = [];
  }
  moveTo(x: number, y: number): void {
    this.path.push({ kind: "move", x, y });
  }
  lineTo(x: number, y: number): void {
    this.path.push({ kind: "line", x, y });
  }
  arc(x: number, y: number, r: number): void {
    this.path.push({ kind: "arc", x, y, r });
  }
  fill(): void {
    for (const step of this.path) {
      if (step.kind === "arc") {
        this.arcs.push({ x: step.x, y: step.y, r: step.r!, fill: this.fillStyle });
      }
    }
  }
  stroke(): void {
    const [from, to] = this.path;
    if (from?.kind === "move" && to?.kind === "line") {
      this.lines.push([from.x, from.y, to.x, to.y]);
    }
  }
  fillText(text: string, x: number, y: number): void {
    this.texts.push({ text, x, y });
  }
}

const VP: Viewport = { width: 800, height: 600 };

const tinyDoc: GraphDocument = {
  schema_version: 1,
  metadata: {
    epsilon: 1,
    metric: "euclidean",
    color_fn: "mean",
    flag: null,
    color_low: 10,
    color_high: 30,
    layout_seed: 123,
    n_points: 3,
  },
  balls: [
    { id: 1, landmark: 1, size: 2, members: [1, 2], value: 10,
      hex: "#ff0000", x: -0.3, y: 0, radius: 0.08 },
    { id: 2, landmark: 3, size: 2, members: [2, 3], value: 30,
      hex: "#8000ff", x: 0.3, y: 0, radius: 0.05 },
  ],
  edges: [[1, 2]],
};

describe("graph rendering", () => {
  test("two balls and one edge become two circles and one line", () => {
    const ctx = new RecordingContext();
    const stats = renderGraph(ctx, tinyDoc, VP, {
      showLabels: false,
      selected: null,
    });
    expect(stats).toEqual({ balls: 2, edges: 1, labels: 0 });
    expect(ctx.arcs.length).toBe(2);
    expect(ctx.lines.length).toBe(1);
    expect(ctx.texts).toEqual([]);
  });

  test("circles take the server's hex colors verbatim", () => {
    const ctx = new RecordingContext();
    renderGraph(ctx, tinyDoc, VP, { showLabels: false, selected: null });
    expect(ctx.arcs.map((a) => a.fill)).toEqual(["#ff0000", "#8000ff"]);
  });

  test("label toggle draws each ball id", () => {
    const ctx = new RecordingContext();
    const stats = renderGraph(ctx, tinyDoc, VP, {
      showLabels: true,
      selected: null,
    });
    expect(stats.labels).toBe(2);
    expect(ctx.texts.map((t) => t.text)).toEqual(["1", "2"]);
  });

  test("edges connect the projected ball centers", () => {
    const ctx = new RecordingContext();
    renderGraph(ctx, tinyDoc, VP, { showLabels: false, selected: null });
    const [x0, y0, x1, y1] = ctx.lines[0]!;
    const [a, b] = ctx.arcs;
    expect([x0, y0]).toEqual([a!.x, a!.y]);
    expect([x1, y1]).toEqual([b!.x, b!.y]);
  });

  test("switching coloration re-colors without moving any ball", () => {
    // same cloud, same epsilon, same layout seed; only the color function
    // differs — positions and radii must be identical
    const meanDoc = fixture<GraphDocument>("graph_mean.json");
    const propDoc = fixture<GraphDocument>("graph_proportion.json");
    expect(meanDoc.balls.length).toBe(propDoc.balls.length);
    let recolored = 0;
    for (const [i, ball] of meanDoc.balls.entries()) {
      const other = propDoc.balls[i]!;
      expect(other.id).toBe(ball.id);
      expect(other.x).toBe(ball.x);
      expect(other.y).toBe(ball.y);
      expect(other.radius).toBe(ball.radius);
      if (other.hex !== ball.hex) recolored += 1;
    }
    expect(recolored).toBeGreaterThan(0);
  });

  test("single-ball document still projects finitely", () => {
    const single: GraphDocument = {
      ...tinyDoc,
      balls: [tinyDoc.balls[0]!],
      edges: [],
    };
    const proj = fitProjection(single, VP);
    expect(Number.isFinite(proj.scale)).toBe(true);
    expect(proj.toX(single.balls[0]!.x)).toBeCloseTo(VP.width / 2, 6);
  });
});

describe("picking", () => {
  test("clicking a ball center finds it, empty space finds nothing", () => {
    const proj = fitProjection(tinyDoc, VP);
    const first = tinyDoc.balls[0]!;
    expect(pickBall(tinyDoc, VP, proj.toX(first.x), proj.toY(first.y))).toBe(1);
    expect(pickBall(tinyDoc, VP, 2, 2)).toBeNull();
  });

  test("overlapping balls resolve to the one drawn last", () => {
    const overlapping: GraphDocument = {
      ...tinyDoc,
      balls: tinyDoc.balls.map((ball) => ({ ...ball, x: 0, y: 0 })),
    };
    expect(pickBall(overlapping, VP, VP.width / 2, VP.height / 2)).toBe(2);
  });
});

describe("legend", () => {
  test("gradient bar spans the server domain with the documented stops", () => {
    const ctx = new RecordingContext();
    const result = renderLegend(ctx, tinyDoc.metadata, {
      width: 300,
      height: 40,
      padding: 8,
    });
    expect(ctx.rects.length).toBe(result.slices);
    expect(result.low).toBe("10");
    expect(result.high).toBe("30");
    expect(ctx.texts.map((t) => t.text)).toEqual(["10", "30"]);
    // leftmost slice sits in the first gradient segment, rightmost in the last
    expect(ctx.rects[0]!.fill.startsWith("#ff")).toBe(true);
    expect(ctx.rects[ctx.rects.length - 1]!.fill).not.toBe(ctx.rects[0]!.fill);
  });

  test("gradient endpoints equal the anchor stops", () => {
    expect(colorAt(0)).toBe(GRADIENT_STOPS[0]);
    expect(colorAt(1)).toBe(GRADIENT_STOPS[GRADIENT_STOPS.length - 1]);
    expect(colorAt(-5)).toBe(GRADIENT_STOPS[0]);
    expect(colorAt(5)).toBe(GRADIENT_STOPS[GRADIENT_STOPS.length - 1]);
  });

  test("value formatting trims float noise", () => {
    expect(formatValue(0.5)).toBe("0.5");
    expect(formatValue(114)).toBe("114");
    expect(formatValue(0.2769999999999868)).toBe("0.277");
  });
});
