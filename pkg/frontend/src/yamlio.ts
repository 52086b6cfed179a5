/**
 * Draft <-> YAML document conversion.
 *
 * The service speaks YAML on GET/PUT /config; the designer edits a structured
 * draft. js-yaml quotes ambiguous plain strings (yes/no/on/off) on its own,
 * which keeps emitted documents safe for YAML 1.1 readers too.
 */

import { dump, load } from "js-yaml";

import type { CombinedDraft, ScenarioDraft } from "./model.js";

export class DocumentError extends Error {}

export function draftToDocument(draft: ScenarioDraft): string {
  const contexts: Record<string, Record<string, number>> = {};
  for (const context of draft.contexts) {
    contexts[context.name] = Object.fromEntries(
      context.instantiations.map((i) => [i.name, i.prior]),
    );
  }
  const intentions: Record<string, Record<string, Record<string, number>>> = {};
  for (const intention of draft.intentions) {
    const byContext: Record<string, Record<string, number>> = {};
    for (const context of draft.contexts) {
      const row = intention.influences[context.name] ?? {};
      byContext[context.name] = Object.fromEntries(
        context.instantiations.map((i) => [i.name, row[i.name] ?? 0]),
      );
    }
    intentions[intention.name] = byContext;
  }
  const document: Record<string, unknown> = { contexts, intentions };
  if (draft.combined.length > 0) {
    document["combined_influences"] = draft.combined.map((entry) => ({
      intention: entry.intention,
      conditions: { ...entry.conditions },
      value: entry.value,
    }));
  }
  document["decision_threshold"] = draft.decisionThreshold;
  return dump(document, { sortKeys: false });
}

export function documentToDraft(text: string): ScenarioDraft {
  let raw: unknown;
  try {
    raw = load(text);
  } catch (error) {
    throw new DocumentError(`not valid YAML: ${String(error)}`);
  }
  const doc = asRecord(raw, "document");
  const contextsRaw = asRecord(doc["contexts"], "contexts");
  const intentionsRaw = asRecord(doc["intentions"], "intentions");

  const contexts = Object.entries(contextsRaw).map(([name, body]) => ({
    name,
    instantiations: Object.entries(asRecord(body, `contexts.${name}`)).map(
      ([inst, prior]) => ({ name: inst, prior: asNumber(prior, `contexts.${name}.${inst}`) }),
    ),
  }));

  const intentions = Object.entries(intentionsRaw).map(([name, body]) => {
    const influences: Record<string, Record<string, number>> = {};
    for (const [context, row] of Object.entries(asRecord(body, `intentions.${name}`))) {
      influences[context] = {};
      for (const [inst, value] of Object.entries(
        asRecord(row, `intentions.${name}.${context}`),
      )) {
        influences[context][inst] = asNumber(value, `intentions.${name}.${context}.${inst}`);
      }
    }
    return { name, influences };
  });

  const combined: CombinedDraft[] = [];
  const combinedRaw = doc["combined_influences"];
  if (combinedRaw !== undefined) {
    if (!Array.isArray(combinedRaw)) {
      throw new DocumentError("combined_influences must be a list");
    }
    combinedRaw.forEach((item, index) => {
      const entry = asRecord(item, `combined_influences[${index}]`);
      const conditions: Record<string, string> = {};
      for (const [context, inst] of Object.entries(
        asRecord(entry["conditions"], `combined_influences[${index}].conditions`),
      )) {
        conditions[context] = String(inst);
      }
      combined.push({
        intention: String(entry["intention"]),
        conditions,
        value: asNumber(entry["value"], `combined_influences[${index}].value`),
      });
    });
  }

  return {
    contexts,
    intentions,
    combined,
    decisionThreshold: asNumber(doc["decision_threshold"], "decision_threshold"),
  };
}

function asRecord(value: unknown, where: string): Record<string, unknown> {
  if (typeof value !== "object" || value === null || Array.isArray(value)) {
    throw new DocumentError(`${where}: expected a mapping`);
  }
  return value as Record<string, unknown>;
}

function asNumber(value: unknown, where: string): number {
  if (typeof value !== "number" || !Number.isFinite(value)) {
    throw new DocumentError(`${where}: expected a number`);
  }
  return value;
}
