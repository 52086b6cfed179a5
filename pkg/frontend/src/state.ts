/**
 * Designer state and the rules that keep it safe:
 *
 * - every edit revalidates against the service; an invalid draft stays on
 *   screen with its violations, nothing is silently discarded;
 * - apply re-validates and refuses to PUT unless the violation list is
 *   empty, so the service can never be pushed into an invalid state;
 * - at most one validate and one infer request are in flight; stale
 *   responses are dropped (latest wins);
 * - all displayed numbers come from service responses, never from local
 *   arithmetic.
 */

import { ApiClient } from "./api.js";
import type {
  EvidenceSelector,
  GraphView,
  InferenceResult,
  ScenarioDraft,
  Violation,
} from "./model.js";
import { cloneDraft, evidenceFromSelectors } from "./model.js";
import { documentToDraft, draftToDocument } from "./yamlio.js";

export type Listener = () => void;

export class DesignerController {
  draft: ScenarioDraft | null = null;
  violations: Violation[] = [];
  /** True once the current draft text has a service verdict. */
  draftValidated = false;
  graph: GraphView | null = null;
  selectors = new Map<string, EvidenceSelector>();
  result: InferenceResult | null = null;
  banner: string | null = null;
  lastApplied: string | null = null;

  private validateTicket = 0;
  private inferTicket = 0;
  private validateAbort: AbortController | null = null;
  private inferAbort: AbortController | null = null;
  private listeners: Listener[] = [];

  constructor(private readonly api: ApiClient) {}

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) {
      listener();
    }
  }

  get canApply(): boolean {
    return this.draft !== null && this.draftValidated && this.violations.length === 0;
  }

  async initialize(): Promise<void> {
    try {
      const document = await this.api.getConfigDocument();
      this.draft = documentToDraft(document);
      this.lastApplied = document;
      this.violations = [];
      this.draftValidated = true;
      this.graph = await this.api.graph();
      this.banner = null;
    } catch (error) {
      this.banner = `service unreachable or not loaded: ${String(error)}`;
    }
    this.notify();
  }

  /** Mutate the draft in place and revalidate; user input always survives. */
  async editDraft(mutate: (draft: ScenarioDraft) => void): Promise<void> {
    if (this.draft === null) {
      return;
    }
    const working = cloneDraft(this.draft);
    mutate(working);
    this.draft = working;
    this.draftValidated = false;
    this.notify();
    await this.revalidate();
  }

  async revalidate(): Promise<void> {
    if (this.draft === null) {
      return;
    }
    const ticket = ++this.validateTicket;
    this.validateAbort?.abort();
    const abort = new AbortController();
    this.validateAbort = abort;
    try {
      const report = await this.api.validateDraft(draftToDocument(this.draft), abort.signal);
      if (ticket !== this.validateTicket) {
        return; // a newer edit superseded this request
      }
      this.violations = report.violations;
      this.draftValidated = true;
      this.banner = null;
    } catch (error) {
      if (ticket !== this.validateTicket || isAbort(error)) {
        return;
      }
      this.banner = `validation unavailable: ${String(error)}`;
    }
    this.notify();
  }

  /**
   * Push the draft to the service. A final validation runs first; on any
   * violation the PUT is skipped entirely and the report is shown instead.
   */
  async apply(): Promise<boolean> {
    if (this.draft === null) {
      return false;
    }
    const document = draftToDocument(this.draft);
    try {
      const precheck = await this.api.validateDraft(document);
      this.violations = precheck.violations;
      this.draftValidated = true;
      if (precheck.violations.length > 0) {
        this.notify();
        return false;
      }
      const report = await this.api.putConfig(document);
      this.violations = report.violations;
      if (report.violations.length > 0) {
        this.notify();
        return false;
      }
      this.lastApplied = document;
      this.graph = await this.api.graph();
      this.pruneSelectors();
      this.banner = null;
      this.notify();
      return true;
    } catch (error) {
      this.banner = `apply failed: ${String(error)}`;
      this.notify();
      return false;
    }
  }

  setSelector(context: string, selector: EvidenceSelector): void {
    this.selectors.set(context, selector);
    this.notify();
  }

  /** Drop playground choices that no longer exist in the applied config. */
  private pruneSelectors(): void {
    if (this.graph === null) {
      return;
    }
    const byName = new Map(this.graph.contexts.map((c) => [c.name, c]));
    for (const [context, selector] of [...this.selectors]) {
      const node = byName.get(context);
      if (!node) {
        this.selectors.delete(context);
        continue;
      }
      if (selector.kind === "hard" && !node.instantiations.includes(selector.instantiation)) {
        this.selectors.delete(context);
      }
      if (
        selector.kind === "soft" &&
        Object.keys(selector.weights).some((name) => !node.instantiations.includes(name))
      ) {
        this.selectors.delete(context);
      }
    }
    this.result = null;
  }

  async runInference(): Promise<void> {
    const ticket = ++this.inferTicket;
    this.inferAbort?.abort();
    const abort = new AbortController();
    this.inferAbort = abort;
    try {
      const result = await this.api.infer(evidenceFromSelectors(this.selectors), abort.signal);
      if (ticket !== this.inferTicket) {
        return;
      }
      this.result = result;
      this.banner = null;
    } catch (error) {
      if (ticket !== this.inferTicket || isAbort(error)) {
        return;
      }
      this.banner = `inference failed: ${String(error)}`;
    }
    this.notify();
  }
}

function isAbort(error: unknown): boolean {
  return error instanceof Error && error.name === "AbortError";
}
