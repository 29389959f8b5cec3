import { ApiClient, ApiError } from "./api.js";
import { ExplorerController, type Display } from "./controller.js";
import { panelLines, type DrilldownView } from "./drilldown.js";
import {
  pickBall,
  renderGraph,
  renderLegend,
  type Canvas2D,
  type Viewport,
} from "./render.js";
import { parseViewState, serializeViewState } from "./state.js";
import type { GraphDocument } from "./types.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing element #${id}`);
  return node as T;
}

function context2d(canvas: HTMLCanvasElement): Canvas2D {
  const ctx = canvas.getContext("2d");
  if (ctx === null) throw new Error("canvas 2d context unavailable");
  // CanvasRenderingContext2D's style properties are unions (gradients,
  // patterns); the renderer only ever writes plain color strings.
  return ctx as unknown as Canvas2D;
}

function bootstrap(): void {
  const canvas = el<HTMLCanvasElement>("graph");
  const legendCanvas = el<HTMLCanvasElement>("legend");
  const panel = el<HTMLUListElement>("panel");
  const banner = el<HTMLDivElement>("banner");
  const toast = el<HTMLDivElement>("toast");
  const slider = el<HTMLInputElement>("epsilon");
  const epsilonLabel = el<HTMLSpanElement>("epsilon-value");
  const colorSelect = el<HTMLSelectElement>("color");
  const flagSelect = el<HTMLSelectElement>("flag");
  const labelsBox = el<HTMLInputElement>("labels");
  const seedInput = el<HTMLInputElement>("order-seed");
  const statusLine = el<HTMLSpanElement>("status");
  const stateBox = el<HTMLTextAreaElement>("view-state");
  const csvBox = el<HTMLTextAreaElement>("csv");

  const viewport = (): Viewport => ({
    width: canvas.width,
    height: canvas.height,
  });
  const ctx = context2d(canvas);
  const legendCtx = context2d(legendCanvas);
  let currentDoc: GraphDocument | null = null;
  let showLabels = false;
  let selected: number | null = null;
  let toastTimer: ReturnType<typeof setTimeout> | undefined;

  const redraw = () => {
    if (currentDoc === null) return;
    renderGraph(ctx, currentDoc, viewport(), { showLabels, selected });
    renderLegend(legendCtx, currentDoc.metadata, {
      width: legendCanvas.width,
      height: legendCanvas.height,
      padding: 8,
    });
  };

  const display: Display = {
    showGraph(doc) {
      currentDoc = doc;
      selected = controller.viewState.selectedBall;
      statusLine.textContent =
        `${doc.balls.length} balls, ${doc.edges.length} edges ` +
        `at ε=${doc.metadata.epsilon}`;
      redraw();
    },
    showDrilldown(view: DrilldownView | null) {
      panel.replaceChildren();
      selected = view === null ? null : view.ballId;
      if (view !== null) {
        for (const line of panelLines(view)) {
          const item = document.createElement("li");
          item.textContent = line;
          panel.append(item);
        }
      }
      redraw();
    },
    showNotice(message) {
      toast.textContent = message;
      toast.hidden = false;
      if (toastTimer !== undefined) clearTimeout(toastTimer);
      toastTimer = setTimeout(() => {
        toast.hidden = true;
      }, 4000);
    },
    showBanner(message) {
      banner.textContent = message;
      banner.hidden = false;
    },
  };

  const api = new ApiClient("");
  const controller = new ExplorerController(api, display);

  slider.addEventListener("input", () => {
    const value = Number(slider.value);
    epsilonLabel.textContent = slider.value;
    controller.setEpsilon(value);
  });
  colorSelect.addEventListener("change", () => {
    const flag = flagSelect.value === "" ? null : flagSelect.value;
    controller.setColor(colorSelect.value, flag);
  });
  flagSelect.addEventListener("change", () => {
    if (colorSelect.value === "proportion") {
      controller.setColor("proportion", flagSelect.value || null);
    }
  });
  labelsBox.addEventListener("change", () => {
    showLabels = controller.toggleLabels();
    redraw();
  });
  seedInput.addEventListener("change", () => {
    const raw = seedInput.value.trim();
    controller.setOrderSeed(raw === "" ? null : Number(raw));
  });
  canvas.addEventListener("click", (event) => {
    if (currentDoc === null) return;
    const rect = canvas.getBoundingClientRect();
    const id = pickBall(
      currentDoc,
      viewport(),
      event.clientX - rect.left,
      event.clientY - rect.top,
    );
    controller.selectBall(id);
  });

  el<HTMLButtonElement>("save-state").addEventListener("click", () => {
    stateBox.value = serializeViewState(controller.viewState);
  });
  el<HTMLButtonElement>("restore-state").addEventListener("click", () => {
    try {
      const state = parseViewState(stateBox.value);
      slider.value = String(state.epsilon);
      epsilonLabel.textContent = slider.value;
      colorSelect.value = state.color;
      showLabels = state.showLabels;
      labelsBox.checked = state.showLabels;
      controller.replay(state);
    } catch (error) {
      display.showNotice(error instanceof Error ? error.message : String(error));
    }
  });

  const loadCloud = async (payload: object) => {
    try {
      const summary = await api.loadCloud(payload);
      const flags = summary.flags;
      flagSelect.replaceChildren(
        ...["", ...flags].map((name) => {
          const option = document.createElement("option");
          option.value = name;
          option.textContent = name === "" ? "(flag)" : name;
          return option;
        }),
      );
      statusLine.textContent =
        `loaded ${summary.n} points, ${summary.d} axes`;
      controller.refreshGraph();
    } catch (error) {
      display.showNotice(
        error instanceof ApiError ? error.message : String(error),
      );
    }
  };

  el<HTMLButtonElement>("load-noise").addEventListener("click", () => {
    void loadCloud({ generator: { kind: "noise", n_points: 500, n_axes: 5 } });
  });
  el<HTMLButtonElement>("load-five-part").addEventListener("click", () => {
    void loadCloud({
      generator: { kind: "five_part", n_points: 500, n_axes: 5 },
    });
  });
  el<HTMLButtonElement>("load-csv").addEventListener("click", () => {
    if (csvBox.value.trim() === "") {
      display.showNotice("paste CSV text first");
      return;
    }
    void loadCloud({ csv: csvBox.value });
  });

  void controller.checkMeta().then((ok) => {
    if (ok) controller.refreshGraph();
  });
}

bootstrap();
