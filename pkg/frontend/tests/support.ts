// Hand-rolled fetch doubles: queue responses per URL prefix, or hand out
// manually-resolvable promises to simulate out-of-order delivery.

import { FetchLike, ResponseLike } from "../src/api.js";

export function jsonResponse(payload: unknown): ResponseLike {
  return { ok: true, status: 200, json: () => Promise.resolve(payload) };
}

export interface RecordingFetch {
  fetchFn: FetchLike;
  calls: string[];
}

export function respondWith(router: (url: string) => unknown): RecordingFetch {
  const calls: string[] = [];
  const fetchFn: FetchLike = (url) => {
    calls.push(url);
    return Promise.resolve(jsonResponse(router(url)));
  };
  return { fetchFn, calls };
}

export interface ManualFetch {
  fetchFn: FetchLike;
  calls: string[];
  signals: Array<AbortSignal | undefined>;
  resolve(index: number, payload: unknown): void;
  reject(index: number): void;
}

export function manualFetch(): ManualFetch {
  const calls: string[] = [];
  const signals: Array<AbortSignal | undefined> = [];
  const handlers: Array<{
    resolve: (r: ResponseLike) => void;
    reject: (e: Error) => void;
  }> = [];
  return {
    calls,
    signals,
    fetchFn: (url, init) => {
      calls.push(url);
      signals.push(init?.signal);
      return new Promise<ResponseLike>((resolve, reject) => {
        handlers.push({ resolve, reject });
      });
    },
    resolve(index, payload) {
      handlers[index].resolve(jsonResponse(payload));
    },
    reject(index) {
      handlers[index].reject(new Error("network down"));
    },
  };
}

export function flushMicrotasks(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
