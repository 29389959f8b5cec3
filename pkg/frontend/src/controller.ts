import { ApiClient, type GraphQuery } from "./api.js";
import { Debouncer } from "./debounce.js";
import { drilldownView, type DrilldownView } from "./drilldown.js";
import { DEFAULT_VIEW, type ViewState } from "./state.js";
import { SUPPORTED_SCHEMA_VERSION, type GraphDocument } from "./types.js";

/** What the controller drives. The DOM implements this in main.ts; tests
 * implement it with plain recording objects. */
export interface Display {
  showGraph(doc: GraphDocument): void;
  showDrilldown(view: DrilldownView | null): void;
  /** Transient problem (bad request, unknown ball): inline notice. */
  showNotice(message: string): void;
  /** Wire-format mismatch: blocking banner, nothing else rendered. */
  showBanner(message: string): void;
}

function describe(error: unknown): string {
  return error instanceof Error ? error.message : String(error);
}

/** Orchestrates the view loop: slider and coloration changes become
 * debounced graph requests; clicks become ball requests; responses are
 * applied only if no newer request has been issued (stale-drop), so the
 * display always reflects the latest server answer. */
export class ExplorerController {
  private view: ViewState;
  private readonly debouncer: Debouncer;
  private graph: GraphDocument | null = null;
  private graphEpoch = 0;
  private ballEpoch = 0;
  private readonly pending = new Set<Promise<void>>();

  constructor(
    private readonly api: ApiClient,
    private readonly display: Display,
    waitMs: number = 250,
    initial: ViewState = DEFAULT_VIEW,
  ) {
    this.view = { ...initial };
    this.debouncer = new Debouncer(waitMs);
  }

  get viewState(): ViewState {
    return { ...this.view };
  }

  get currentGraph(): GraphDocument | null {
    return this.graph;
  }

  /** Ball count currently on display, or null before the first graph. */
  ballCount(): number | null {
    return this.graph === null ? null : this.graph.balls.length;
  }

  /** Resolves once every request issued so far has settled. */
  async idle(): Promise<void> {
    while (this.pending.size > 0) {
      await Promise.all([...this.pending]);
    }
  }

  private track(op: Promise<void>): void {
    this.pending.add(op);
    const drop = () => this.pending.delete(op);
    op.then(drop, drop);
  }

  private query(): GraphQuery {
    return {
      epsilon: this.view.epsilon,
      color: this.view.color,
      flag: this.view.flag,
      orderSeed: this.view.orderSeed,
      layoutSeed: this.view.layoutSeed,
    };
  }

  /** Slider input: remember the value, request after the debounce window. */
  setEpsilon(value: number): void {
    if (!Number.isFinite(value) || value <= 0) return; // slider minimum
    this.view.epsilon = value;
    this.debouncer.schedule(() => this.refreshGraph());
  }

  setColor(color: string, flag: string | null = null): void {
    this.view.color = color;
    this.view.flag = flag;
    this.refreshGraph();
  }

  setOrderSeed(seed: number | null): void {
    this.view.orderSeed = seed;
    this.refreshGraph();
  }

  toggleLabels(): boolean {
    this.view.showLabels = !this.view.showLabels;
    return this.view.showLabels;
  }

  refreshGraph(): void {
    const epoch = ++this.graphEpoch;
    const query = this.query();
    this.track(
      (async () => {
        let doc: GraphDocument;
        try {
          doc = await this.api.graph(query);
        } catch (error) {
          if (epoch === this.graphEpoch) this.display.showNotice(describe(error));
          return;
        }
        if (epoch !== this.graphEpoch) return; // superseded while in flight
        if (doc.schema_version !== SUPPORTED_SCHEMA_VERSION) {
          this.display.showBanner(
            `graph schema ${doc.schema_version} is not supported ` +
              `(this explorer renders version ${SUPPORTED_SCHEMA_VERSION})`,
          );
          return;
        }
        this.graph = doc;
        if (
          this.view.selectedBall !== null &&
          !doc.balls.some((ball) => ball.id === this.view.selectedBall)
        ) {
          this.view.selectedBall = null;
          this.display.showDrilldown(null);
        }
        this.display.showGraph(doc);
      })(),
    );
  }

  /** Click on a ball (or on empty canvas with null, clearing the panel). */
  selectBall(id: number | null): void {
    this.view.selectedBall = id;
    if (id === null) {
      this.display.showDrilldown(null);
      return;
    }
    const epoch = ++this.ballEpoch;
    const query = this.query();
    this.track(
      (async () => {
        try {
          const detail = await this.api.ball(id, query);
          if (epoch === this.ballEpoch) {
            this.display.showDrilldown(drilldownView(detail));
          }
        } catch (error) {
          if (epoch === this.ballEpoch) this.display.showNotice(describe(error));
        }
      })(),
    );
  }

  /** Re-issue the requests a saved view describes, without debounce. */
  replay(state: ViewState): void {
    this.view = { ...state };
    this.debouncer.cancel();
    this.refreshGraph();
    if (state.selectedBall !== null) this.selectBall(state.selectedBall);
  }

  /** Verify the service speaks our schema before doing anything else. */
  async checkMeta(): Promise<boolean> {
    try {
      const meta = await this.api.meta();
      if (meta.schema_version !== SUPPORTED_SCHEMA_VERSION) {
        this.display.showBanner(
          `service schema ${meta.schema_version} is not supported ` +
            `(this explorer renders version ${SUPPORTED_SCHEMA_VERSION})`,
        );
        return false;
      }
      return true;
    } catch (error) {
      this.display.showBanner(`service unreachable: ${describe(error)}`);
      return false;
    }
  }
}
