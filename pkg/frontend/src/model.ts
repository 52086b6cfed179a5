/** Shared types for the designer: drafts, service payloads, playground state. */

export interface InstantiationDraft {
  name: string;
  prior: number;
}

export interface ContextDraft {
  name: string;
  instantiations: InstantiationDraft[];
}

export interface IntentionDraft {
  name: string;
  /** context name -> instantiation name -> influence value 0..5 */
  influences: Record<string, Record<string, number>>;
}

export interface CombinedDraft {
  intention: string;
  conditions: Record<string, string>;
  value: number;
}

export interface ScenarioDraft {
  contexts: ContextDraft[];
  intentions: IntentionDraft[];
  combined: CombinedDraft[];
  decisionThreshold: number;
}

export interface Violation {
  code: string;
  path: string;
  message: string;
}

export interface ValidationReport {
  violations: Violation[];
  applied?: boolean;
}

export interface GraphContextNode {
  name: string;
  instantiations: string[];
  priors: Record<string, number>;
}

export interface GraphEdge {
  context: string;
  intention: string;
  /** influence values in the context's instantiation order */
  values: number[];
}

export interface CombinedEdge {
  intention: string;
  conditions: Record<string, string>;
  value: number;
}

export interface GraphView {
  contexts: GraphContextNode[];
  intentions: { name: string }[];
  edges: GraphEdge[];
  combined_edges: CombinedEdge[];
  decision_threshold: number;
}

export interface ContextTerm {
  expected_observed: number;
  expected_prior: number;
  delta: number;
}

export interface IntentionExplanation {
  baseline: number;
  terms: Record<string, ContextTerm>;
  combined_corrections: { conditions: Record<string, string>; contribution: number }[];
}

export interface InferenceResult {
  posteriors: Record<string, number>;
  normalized: Record<string, number>;
  decision: string | null;
  tie: boolean;
  explanation: Record<string, IntentionExplanation>;
}

/** Hard, soft, or absent observation chosen for one context. */
export type EvidenceSelector =
  | { kind: "unset" }
  | { kind: "hard"; instantiation: string }
  | { kind: "soft"; weights: Record<string, number> };

export type EvidencePayload = Record<string, string | Record<string, number>>;

/** Influence scale shown next to every editor control. */
export const SCALE_LABELS: ReadonlyArray<string> = [
  "0 (0%)",
  "1 (5%)",
  "2 (25%)",
  "3 (50%)",
  "4 (75%)",
  "5 (95%)",
];

export function evidenceFromSelectors(
  selectors: ReadonlyMap<string, EvidenceSelector>,
): EvidencePayload {
  const payload: EvidencePayload = {};
  for (const [context, selector] of selectors) {
    if (selector.kind === "hard") {
      payload[context] = selector.instantiation;
    } else if (selector.kind === "soft") {
      payload[context] = { ...selector.weights };
    }
  }
  return payload;
}

/** Rescale soft weights to sum to 1; an all-zero vector becomes uniform. */
export function normalizeWeights(weights: Record<string, number>): Record<string, number> {
  const names = Object.keys(weights);
  const total = names.reduce((sum, name) => sum + weights[name], 0);
  const normalized: Record<string, number> = {};
  for (const name of names) {
    normalized[name] = total === 0 ? 1 / names.length : weights[name] / total;
  }
  return normalized;
}

/** Deep-copy a draft so edits never alias the applied config. */
export function cloneDraft(draft: ScenarioDraft): ScenarioDraft {
  return structuredClone(draft);
}

/**
 * Add one instantiation to a context and give every intention an influence
 * row for it, keeping the draft total (the engine requires exactly one value
 * per instantiation per intention).
 */
export function addInstantiation(
  draft: ScenarioDraft,
  contextName: string,
  instantiation: string,
  prior = 0,
): void {
  const context = draft.contexts.find((c) => c.name === contextName);
  if (!context) {
    throw new Error(`unknown context ${contextName}`);
  }
  context.instantiations.push({ name: instantiation, prior });
  for (const intention of draft.intentions) {
    const row = intention.influences[contextName] ?? {};
    row[instantiation] = 0;
    intention.influences[contextName] = row;
  }
}

export function removeInstantiation(
  draft: ScenarioDraft,
  contextName: string,
  instantiation: string,
): void {
  const context = draft.contexts.find((c) => c.name === contextName);
  if (!context) {
    return;
  }
  context.instantiations = context.instantiations.filter((i) => i.name !== instantiation);
  for (const intention of draft.intentions) {
    delete intention.influences[contextName]?.[instantiation];
  }
  draft.combined = draft.combined.filter(
    (entry) => entry.conditions[contextName] !== instantiation,
  );
}

export function addContext(draft: ScenarioDraft, name: string): void {
  draft.contexts.push({
    name,
    instantiations: [
      { name: "option a", prior: 0.5 },
      { name: "option b", prior: 0.5 },
    ],
  });
  for (const intention of draft.intentions) {
    intention.influences[name] = { "option a": 0, "option b": 0 };
  }
}

export function removeContext(draft: ScenarioDraft, name: string): void {
  draft.contexts = draft.contexts.filter((c) => c.name !== name);
  for (const intention of draft.intentions) {
    delete intention.influences[name];
  }
  draft.combined = draft.combined.filter((entry) => !(name in entry.conditions));
}

export function addIntention(draft: ScenarioDraft, name: string): void {
  const influences: Record<string, Record<string, number>> = {};
  for (const context of draft.contexts) {
    influences[context.name] = Object.fromEntries(
      context.instantiations.map((i) => [i.name, 0]),
    );
  }
  draft.intentions.push({ name, influences });
}

export function removeIntention(draft: ScenarioDraft, name: string): void {
  draft.intentions = draft.intentions.filter((m) => m.name !== name);
  draft.combined = draft.combined.filter((entry) => entry.intention !== name);
}
