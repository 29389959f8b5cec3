import type {
  BallDetail,
  CloudSummary,
  GraphDocument,
  MetaResponse,
} from "./types.js";

/** The slice of fetch the client uses; injectable so tests can stub it. */
export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ ok: boolean; status: number; json(): Promise<unknown> }>;

/** Parameters every graph-shaped endpoint takes. Null means server default. */
export interface GraphQuery {
  epsilon: number;
  color: string;
  flag: string | null;
  orderSeed: number | null;
  layoutSeed: number | null;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly kind: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

function graphParams(query: GraphQuery): URLSearchParams {
  const params = new URLSearchParams({
    epsilon: String(query.epsilon),
    color: query.color,
  });
  if (query.flag !== null) params.set("flag", query.flag);
  if (query.orderSeed !== null) params.set("seed", String(query.orderSeed));
  if (query.layoutSeed !== null) {
    params.set("layout_seed", String(query.layoutSeed));
  }
  return params;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(
    path: string,
    init?: Parameters<FetchLike>[1],
  ): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, init);
    const payload: unknown = await response.json();
    if (!response.ok) {
      const detail = (payload as { error?: { kind?: string; message?: string } })
        .error;
      throw new ApiError(
        response.status,
        detail?.kind ?? "error",
        detail?.message ?? `HTTP ${response.status}`,
      );
    }
    return payload as T;
  }

  graph(query: GraphQuery): Promise<GraphDocument> {
    return this.request(`/api/graph?${graphParams(query)}`);
  }

  ball(id: number, query: GraphQuery): Promise<BallDetail> {
    return this.request(`/api/ball/${id}?${graphParams(query)}`);
  }

  meta(): Promise<MetaResponse> {
    return this.request("/api/meta");
  }

  loadCloud(payload: object): Promise<CloudSummary> {
    return this.request("/api/cloud", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  }
}
