import { readFileSync } from "node:fs";

import type { FetchLike } from "../src/api.js";

export function fixture<T>(name: string): T {
  const url = new URL(`./fixtures/${name}`, import.meta.url);
  return JSON.parse(readFileSync(url, "utf8")) as T;
}

export interface StubResponse {
  status?: number;
  body: unknown;
}

/** A recording fetch stub routed on pathname + query. The route callback
 * may return a plain body, a StubResponse, or a Promise of either (so
 * tests can hold responses open and resolve them out of order). */
export class FetchStub {
  readonly urls: string[] = [];

  constructor(
    private readonly route: (
      url: URL,
    ) => unknown | StubResponse | Promise<unknown>,
  ) {}

  /** URLs of requests whose path starts with the prefix. */
  requests(prefix: string): string[] {
    return this.urls.filter((raw) =>
      new URL(raw, "http://test").pathname.startsWith(prefix),
    );
  }

  readonly fn: FetchLike = async (raw) => {
    this.urls.push(raw);
    const routed = await this.route(new URL(raw, "http://test"));
    const stub =
      typeof routed === "object" && routed !== null && "body" in routed
        ? (routed as StubResponse)
        : { body: routed };
    const status = stub.status ?? 200;
    return {
      ok: status >= 200 && status < 300,
      status,
      json: () => Promise.resolve(stub.body),
    };
  };
}

/** Deferred promise with its resolver exposed. */
export function deferred<T>(): { promise: Promise<T>; resolve: (v: T) => void } {
  let resolve!: (v: T) => void;
  const promise = new Promise<T>((r) => {
    resolve = r;
  });
  return { promise, resolve };
}
