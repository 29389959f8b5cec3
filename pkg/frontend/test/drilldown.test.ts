import { describe, expect, test } from "vitest";

import { ApiClient } from "../src/api.js";
import { ExplorerController } from "../src/controller.js";
import { drilldownView, panelLines } from "../src/drilldown.js";
import type { BallDetail, GraphDocument } from "../src/types.js";
import { RecordingDisplay } from "./display.js";
import { FetchStub, fixture } from "./helpers.js";

const graph = fixture<GraphDocument>("graph_proportion.json");
const details = fixture<Record<string, BallDetail>>("balls_proportion.json");
const engineMap = fixture<Record<string, number[]>>("point_to_ball_map.json");

const numericSort = (ids: Array<number | string>) =>
  [...ids].map(Number).sort((a, b) => a - b);

describe("drill-down fidelity against the service and the engine", () => {
  test("every ball's member ids equal the ball response exactly", () => {
    expect(graph.balls.length).toBeGreaterThan(0);
    for (const ball of graph.balls) {
      const detail = details[String(ball.id)];
      expect(detail).toBeDefined();
      const view = drilldownView(detail!);
      expect(view.memberIds).toEqual(detail!.member_ids);
      expect(view.rows.map((row) => row.pointId)).toEqual(detail!.member_ids);
    }
  });

  test("every ball's member ids equal the graph document's member list", () => {
    for (const ball of graph.balls) {
      const view = drilldownView(details[String(ball.id)]!);
      expect(view.memberIds).toEqual(ball.members);
    }
  });

  test("every ball's member ids equal the engine's point-to-ball map", () => {
    for (const ball of graph.balls) {
      const view = drilldownView(details[String(ball.id)]!);
      const fromMap = Object.entries(engineMap)
        .filter(([, ballIds]) => ballIds.includes(ball.id))
        .map(([pointId]) => Number(pointId));
      expect(numericSort(view.memberIds)).toEqual(numericSort(fromMap));
    }
  });

  test("the panel rendered through the controller shows those same ids", async () => {
    const stub = new FetchStub((url) => {
      if (url.pathname === "/api/graph") return graph;
      const match = url.pathname.match(/^\/api\/ball\/(\d+)$/);
      if (match) return details[match[1]!];
      throw new Error(`unexpected request ${url.pathname}`);
    });
    const display = new RecordingDisplay();
    const controller = new ExplorerController(
      new ApiClient("", stub.fn),
      display,
    );
    controller.refreshGraph();
    await controller.idle();
    for (const ball of graph.balls) {
      controller.selectBall(ball.id);
      await controller.idle();
      expect(display.lastPanel?.memberIds).toEqual(
        details[String(ball.id)]!.member_ids,
      );
    }
  });
});

describe("the walkthrough ball", () => {
  // ball 44 is the two-member intersection showcase: opposite-sign third
  // axis, so the flag proportion is exactly one half
  const detail = details["44"]!;
  const view = drilldownView(detail);

  test("two members with opposite-sign third axis", () => {
    expect(view.memberIds).toEqual([44, 45]);
    expect(view.size).toBe(2);
    const x3 = view.rows.map((row) => row.coords[2]!);
    expect(x3[0]! * x3[1]!).toBeLessThan(0);
  });

  test("proportion one half, outcome sd as served", () => {
    expect(view.value).toBe(0.5);
    expect(Math.abs(view.outcomeSd! - 0.277)).toBeLessThan(1e-9);
    expect(panelLines(view).join("\n")).toContain("value 0.5");
  });

  test("single-member ball displays sd 0", () => {
    const single = drilldownView(details["1"]!);
    expect(single.size).toBe(1);
    expect(single.outcomeSd).toBe(0);
    expect(single.meanSdRatio).toBeNull();
    expect(panelLines(single).join("\n")).toContain("sd 0");
  });
});

describe("panel lifecycle", () => {
  test("clicking empty canvas clears the panel", async () => {
    const stub = new FetchStub((url) => {
      if (url.pathname === "/api/graph") return graph;
      return details["44"];
    });
    const display = new RecordingDisplay();
    const controller = new ExplorerController(
      new ApiClient("", stub.fn),
      display,
    );
    controller.refreshGraph();
    await controller.idle();
    controller.selectBall(44);
    await controller.idle();
    expect(display.lastPanel?.ballId).toBe(44);
    controller.selectBall(null);
    expect(display.lastPanel).toBeNull();
    expect(controller.viewState.selectedBall).toBeNull();
  });

  test("unknown ball becomes an inline notice, not a panel", async () => {
    const stub = new FetchStub((url) => {
      if (url.pathname === "/api/graph") return graph;
      return {
        status: 404,
        body: { error: { kind: "not_found", message: "no ball 99" } },
      };
    });
    const display = new RecordingDisplay();
    const controller = new ExplorerController(
      new ApiClient("", stub.fn),
      display,
    );
    controller.refreshGraph();
    await controller.idle();
    controller.selectBall(99);
    await controller.idle();
    expect(display.notices.some((msg) => msg.includes("no ball 99"))).toBe(true);
    expect(display.panels).toEqual([]);
  });
});
