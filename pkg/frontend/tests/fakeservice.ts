/**
 * In-memory stand-in for the recognition service, speaking the same wire
 * contract. Inference and graph responses are canned payloads captured from
 * the real service; validation implements the prior-normalization rule the
 * tests exercise. Every request is recorded so tests can assert what was
 * (not) called.
 */

import { load } from "js-yaml";

import type { FetchLike } from "../src/api.js";

export interface RecordedCall {
  method: string;
  path: string;
  body?: string;
}

interface Violation {
  code: string;
  path: string;
  message: string;
}

export class FakeService {
  calls: RecordedCall[] = [];
  private inferResponses = new Map<string, unknown>();

  constructor(
    private document: string,
    private graphPayload: unknown,
  ) {}

  get configDocument(): string {
    return this.document;
  }

  /** Register the canned response for one evidence payload. */
  onInfer(evidence: unknown, response: unknown): void {
    this.inferResponses.set(canonical(evidence), response);
  }

  get fetch(): FetchLike {
    return (input, init) => Promise.resolve(this.handle(input, init));
  }

  private handle(input: string, init?: RequestInit): Response {
    const method = (init?.method ?? "GET").toUpperCase();
    const path = input.replace(/^https?:\/\/[^/]+/, "");
    const body = typeof init?.body === "string" ? init.body : undefined;
    this.calls.push({ method, path, body });

    if (method === "GET" && path === "/config") {
      return new Response(this.document, {
        status: 200,
        headers: { "content-type": "application/yaml" },
      });
    }
    if (method === "PUT" && path === "/config") {
      const violations = validatePriors(body ?? "");
      if (violations.length > 0) {
        return json({ applied: false, violations }, 422);
      }
      this.document = body ?? "";
      return json({ applied: true, violations: [] }, 200);
    }
    if (method === "POST" && path === "/validate") {
      return json({ violations: validatePriors(body ?? "") }, 200);
    }
    if (method === "POST" && path === "/infer") {
      const canned = this.inferResponses.get(canonical(JSON.parse(body ?? "{}")));
      if (canned === undefined) {
        return json({ code: "EVIDENCE_ERROR", message: "no canned response" }, 400);
      }
      return json(canned, 200);
    }
    if (method === "GET" && path === "/graph") {
      return json(this.graphPayload, 200);
    }
    return json({ code: "NOT_FOUND", message: path }, 404);
  }
}

/** Stable key for an evidence payload regardless of property order. */
export function canonical(value: unknown): string {
  if (Array.isArray(value)) {
    return `[${value.map(canonical).join(",")}]`;
  }
  if (typeof value === "object" && value !== null) {
    const entries = Object.entries(value as Record<string, unknown>)
      .sort(([a], [b]) => (a < b ? -1 : 1))
      .map(([key, item]) => `${JSON.stringify(key)}:${canonical(item)}`);
    return `{${entries.join(",")}}`;
  }
  return JSON.stringify(value);
}

function validatePriors(document: string): Violation[] {
  let raw: unknown;
  try {
    raw = load(document);
  } catch {
    return [];
  }
  const contexts = (raw as { contexts?: Record<string, Record<string, number>> }).contexts ?? {};
  const violations: Violation[] = [];
  for (const [name, priors] of Object.entries(contexts)) {
    const total = Object.values(priors).reduce((a, b) => a + b, 0);
    if (Math.abs(total - 1) > 1e-6) {
      violations.push({
        code: "PRIORS_NOT_NORMALIZED",
        path: `contexts.${name}`,
        message: `priors sum to ${total}, expected 1`,
      });
    }
  }
  return violations;
}

function json(payload: unknown, status: number): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { "content-type": "application/json" },
  });
}
