import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { FetchLike } from "../src/api.js";
import { findAll, textContent, VNode } from "../src/vdom.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

export function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(FIXTURES, name), "utf-8")) as T;
}

export interface RecordedCall {
  url: string;
  method: string;
  headers: Record<string, string>;
  body: unknown;
}

export interface FetchStub {
  fetch: FetchLike;
  calls: RecordedCall[];
}

/** Serve canned JSON bodies by substring match on the URL, recording calls. */
export function fetchStub(routes: [string, () => unknown][]): FetchStub {
  const calls: RecordedCall[] = [];
  const impl: FetchLike = async (url, init) => {
    const method = init?.method ?? "GET";
    calls.push({
      url,
      method,
      headers: (init?.headers ?? {}) as Record<string, string>,
      body: init?.body ? JSON.parse(String(init.body)) : undefined,
    });
    for (const [pattern, payload] of routes) {
      if (url.includes(pattern)) {
        return new Response(JSON.stringify(payload()), {
          status: 200,
          headers: { "content-type": "application/json" },
        });
      }
    }
    return new Response(JSON.stringify({ detail: `no route for ${url}` }), { status: 404 });
  };
  return { fetch: impl, calls };
}

/** All numeric values reachable inside a JSON payload. */
export function numbersIn(payload: unknown): Set<string> {
  const out = new Set<string>();
  const walk = (value: unknown) => {
    if (typeof value === "number") out.add(String(value));
    else if (Array.isArray(value)) value.forEach(walk);
    else if (value && typeof value === "object") Object.values(value).forEach(walk);
  };
  walk(payload);
  return out;
}

/** Text of every node the views mark as a data number. */
export function datumTexts(root: VNode): string[] {
  return findAll(root, (n) => String(n.attrs.class ?? "").split(" ").includes("datum"))
    .map((n) => textContent(n).trim())
    .filter((t) => t.length > 0);
}
