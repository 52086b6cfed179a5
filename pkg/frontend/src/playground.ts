/**
 * What-if panel: choose evidence per context, run the service's inference,
 * and read the posteriors, the decision, and which contexts drove it.
 *
 * Numbers are printed exactly as the service sent them (String(value)); the
 * client never recomputes probabilities.
 */

import type { DesignerController } from "./state.js";
import type { EvidenceSelector, GraphContextNode, InferenceResult } from "./model.js";
import { normalizeWeights } from "./model.js";

export function renderPlayground(container: HTMLElement, controller: DesignerController): void {
  container.textContent = "";
  const view = controller.graph;
  if (!view) {
    container.appendChild(note("Apply a valid configuration to start experimenting."));
    return;
  }

  const selectorsBox = div("playground-selectors");
  for (const context of view.contexts) {
    selectorsBox.appendChild(renderSelector(context, controller));
  }
  container.appendChild(selectorsBox);

  const run = document.createElement("button");
  run.textContent = "Infer";
  run.dataset["action"] = "run-inference";
  run.addEventListener("click", () => void controller.runInference());
  container.appendChild(run);

  container.appendChild(renderResult(view.decision_threshold, controller.result));
}

function renderSelector(context: GraphContextNode, controller: DesignerController): HTMLElement {
  const card = div("selector-card");
  card.dataset["selectorFor"] = context.name;
  const title = document.createElement("h4");
  title.textContent = context.name;
  card.appendChild(title);

  const current = controller.selectors.get(context.name) ?? { kind: "unset" as const };

  const mode = document.createElement("select");
  mode.dataset["selectorMode"] = context.name;
  for (const option of ["unset", "hard", "soft"]) {
    const element = document.createElement("option");
    element.value = option;
    element.textContent =
      option === "unset" ? "not observed (use prior)" : option === "hard" ? "observed" : "soft";
    element.selected = current.kind === option;
    mode.appendChild(element);
  }
  mode.addEventListener("change", () => {
    controller.setSelector(context.name, defaultSelector(mode.value, context));
  });
  card.appendChild(mode);

  if (current.kind === "hard") {
    const pick = document.createElement("select");
    pick.dataset["hardChoice"] = context.name;
    for (const instantiation of context.instantiations) {
      const option = document.createElement("option");
      option.value = instantiation;
      option.textContent = instantiation;
      option.selected = current.instantiation === instantiation;
      pick.appendChild(option);
    }
    pick.addEventListener("change", () => {
      controller.setSelector(context.name, { kind: "hard", instantiation: pick.value });
    });
    card.appendChild(pick);
  }

  if (current.kind === "soft") {
    for (const instantiation of context.instantiations) {
      const row = div("soft-row");
      const label = document.createElement("label");
      label.textContent = instantiation;
      const slider = document.createElement("input");
      slider.type = "range";
      slider.min = "0";
      slider.max = "1";
      slider.step = "0.01";
      slider.value = String(current.weights[instantiation] ?? 0);
      slider.dataset["softWeight"] = `${context.name}.${instantiation}`;
      // Normalizing on release keeps the distribution a distribution without
      // fighting the user mid-drag.
      slider.addEventListener("change", () => {
        const weights: Record<string, number> = { ...current.weights };
        weights[instantiation] = Number(slider.value);
        controller.setSelector(context.name, { kind: "soft", weights: normalizeWeights(weights) });
      });
      row.append(label, slider);
      card.appendChild(row);
    }
  }

  return card;
}

function defaultSelector(kind: string, context: GraphContextNode): EvidenceSelector {
  if (kind === "hard") {
    return { kind: "hard", instantiation: context.instantiations[0] };
  }
  if (kind === "soft") {
    const uniform = 1 / context.instantiations.length;
    return {
      kind: "soft",
      weights: Object.fromEntries(context.instantiations.map((name) => [name, uniform])),
    };
  }
  return { kind: "unset" };
}

function renderResult(threshold: number, result: InferenceResult | null): HTMLElement {
  const panel = div("result-panel");
  panel.dataset["panel"] = "result";
  if (!result) {
    panel.appendChild(note("No inference yet."));
    return panel;
  }

  const decision = div("decision-badge");
  decision.dataset["decision"] = result.decision ?? "NONE";
  decision.textContent =
    result.decision === null ? "NONE (below threshold)" : `decision: ${result.decision}`;
  if (result.tie) {
    decision.textContent += " [tie]";
  }
  panel.appendChild(decision);

  for (const [intention, posterior] of Object.entries(result.posteriors)) {
    const row = div("posterior-row");
    const label = div("posterior-label");
    label.textContent = intention;
    const track = div("posterior-track");
    const bar = div("posterior-bar");
    bar.style.width = `${posterior * 100}%`;
    bar.dataset["posteriorBar"] = intention;
    const marker = div("threshold-marker");
    marker.style.left = `${threshold * 100}%`;
    marker.title = `decision threshold ${threshold}`;
    track.append(bar, marker);
    const value = document.createElement("span");
    value.className = "posterior-value";
    value.dataset["posteriorFor"] = intention;
    value.textContent = String(posterior);
    const normalized = document.createElement("span");
    normalized.className = "normalized-value";
    normalized.dataset["normalizedFor"] = intention;
    normalized.textContent = String(result.normalized[intention]);
    row.append(label, track, value, normalized);
    panel.appendChild(row);
  }

  panel.appendChild(renderContributions(result));
  return panel;
}

function renderContributions(result: InferenceResult): HTMLElement {
  const box = div("contributions");
  const heading = document.createElement("h4");
  heading.textContent = "context contributions (delta from prior)";
  box.appendChild(heading);
  for (const [intention, explanation] of Object.entries(result.explanation)) {
    const list = document.createElement("ol");
    list.dataset["contributionsFor"] = intention;
    const ranked = Object.entries(explanation.terms).sort(
      (a, b) => Math.abs(b[1].delta) - Math.abs(a[1].delta),
    );
    for (const [context, term] of ranked) {
      const item = document.createElement("li");
      item.dataset["contextDelta"] = `${intention}.${context}`;
      item.textContent = `${context}: ${String(term.delta)}`;
      list.appendChild(item);
    }
    for (const correction of explanation.combined_corrections) {
      const item = document.createElement("li");
      item.dataset["combinedCorrection"] = intention;
      item.textContent = `combined ${Object.entries(correction.conditions)
        .map(([ctx, inst]) => `${ctx}=${inst}`)
        .join(" & ")}: ${String(correction.contribution)}`;
      list.appendChild(item);
    }
    const title = document.createElement("h5");
    title.textContent = intention;
    box.append(title, list);
  }
  return box;
}

function div(className: string): HTMLDivElement {
  const element = document.createElement("div");
  element.className = className;
  return element;
}

function note(text: string): HTMLElement {
  const element = document.createElement("p");
  element.className = "muted";
  element.textContent = text;
  return element;
}
