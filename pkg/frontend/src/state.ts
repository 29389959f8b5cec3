/** The serializable view: exactly one server graph request plus panel and
 * label settings. Replaying a saved state re-issues the same requests and
 * reproduces the same display. */
export interface ViewState {
  epsilon: number;
  color: string;
  flag: string | null;
  orderSeed: number | null;
  layoutSeed: number | null;
  selectedBall: number | null;
  showLabels: boolean;
}

export const DEFAULT_VIEW: ViewState = {
  epsilon: 1.0,
  color: "mean",
  flag: null,
  orderSeed: null,
  layoutSeed: null,
  selectedBall: null,
  showLabels: false,
};

export function serializeViewState(view: ViewState): string {
  return JSON.stringify({
    epsilon: view.epsilon,
    color: view.color,
    flag: view.flag,
    orderSeed: view.orderSeed,
    layoutSeed: view.layoutSeed,
    selectedBall: view.selectedBall,
    showLabels: view.showLabels,
  });
}

function bad(field: string, why: string): never {
  throw new Error(`view state: ${field} ${why}`);
}

function optionalInt(raw: unknown, field: string): number | null {
  if (raw === null || raw === undefined) return null;
  if (typeof raw !== "number" || !Number.isInteger(raw)) {
    bad(field, "must be an integer or null");
  }
  return raw;
}

export function parseViewState(raw: string): ViewState {
  let data: unknown;
  try {
    data = JSON.parse(raw);
  } catch {
    bad("payload", "is not valid JSON");
  }
  if (typeof data !== "object" || data === null || Array.isArray(data)) {
    bad("payload", "must be an object");
  }
  const obj = data as Record<string, unknown>;
  const epsilon = obj["epsilon"];
  if (typeof epsilon !== "number" || !Number.isFinite(epsilon) || epsilon <= 0) {
    bad("epsilon", "must be a positive number");
  }
  const color = obj["color"];
  if (typeof color !== "string" || color === "") {
    bad("color", "must be a non-empty string");
  }
  const flag = obj["flag"] ?? null;
  if (flag !== null && typeof flag !== "string") {
    bad("flag", "must be a string or null");
  }
  const showLabels = obj["showLabels"] ?? false;
  if (typeof showLabels !== "boolean") bad("showLabels", "must be a boolean");
  return {
    epsilon,
    color,
    flag,
    orderSeed: optionalInt(obj["orderSeed"], "orderSeed"),
    layoutSeed: optionalInt(obj["layoutSeed"], "layoutSeed"),
    selectedBall: optionalInt(obj["selectedBall"], "selectedBall"),
    showLabels,
  };
}
