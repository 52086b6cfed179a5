/**
 * Structured editor for the scenario draft. Violations reported by the
 * service are pinned inline at the card whose config path they name; an
 * invalid draft stays fully editable and Apply stays disabled until the
 * violation list is empty.
 */

import type { DesignerController } from "./state.js";
import type { ScenarioDraft, Violation } from "./model.js";
import {
  SCALE_LABELS,
  addContext,
  addInstantiation,
  addIntention,
  removeContext,
  removeInstantiation,
  removeIntention,
} from "./model.js";

/** Jump to the influence controls behind a graph edge and highlight them. */
export function focusInfluenceEditor(root: ParentNode, context: string, intention: string): void {
  const cards = [...root.querySelectorAll<HTMLElement>(".intention-card")];
  for (const card of cards) {
    card.classList.remove("selected");
  }
  const card = cards.find((c) => c.dataset["path"] === `intentions.${intention}`);
  if (!card) {
    return;
  }
  card.classList.add("selected");
  for (const group of card.querySelectorAll<HTMLElement>("fieldset")) {
    const legend = group.querySelector("legend");
    group.classList.toggle("selected", legend?.textContent === context);
  }
  try {
    card.scrollIntoView({ block: "nearest" });
  } catch {
    // scrolling is cosmetic; some DOM implementations do not support it
  }
}


export function renderEditor(container: HTMLElement, controller: DesignerController): void {
  container.textContent = "";
  const draft = controller.draft;
  if (!draft) {
    const empty = document.createElement("p");
    empty.className = "muted";
    empty.textContent = "No configuration loaded.";
    container.appendChild(empty);
    return;
  }

  container.appendChild(renderContexts(draft, controller));
  container.appendChild(renderIntentions(draft, controller));
  container.appendChild(renderThreshold(draft, controller));
  container.appendChild(renderApply(controller));
}

function violationsAt(violations: Violation[], pathPrefix: string): Violation[] {
  return violations.filter((v) => v.path === pathPrefix || v.path.startsWith(`${pathPrefix}.`));
}

function inlineViolations(violations: Violation[]): HTMLElement {
  const box = document.createElement("div");
  box.className = "violations";
  for (const violation of violations) {
    const line = document.createElement("p");
    line.className = "violation";
    line.dataset["violationCode"] = violation.code;
    line.textContent = `${violation.code}: ${violation.message}`;
    box.appendChild(line);
  }
  return box;
}

function renderContexts(draft: ScenarioDraft, controller: DesignerController): HTMLElement {
  const section = document.createElement("section");
  section.appendChild(heading("Contexts"));
  for (const context of draft.contexts) {
    const card = document.createElement("div");
    card.className = "card context-card";
    card.dataset["path"] = `contexts.${context.name}`;
    card.appendChild(subheading(context.name));

    for (const instantiation of context.instantiations) {
      const row = document.createElement("div");
      row.className = "field-row";
      const label = document.createElement("label");
      label.textContent = instantiation.name;
      const prior = document.createElement("input");
      prior.type = "number";
      prior.step = "0.01";
      prior.min = "0";
      prior.max = "1";
      prior.value = String(instantiation.prior);
      prior.dataset["prior"] = `${context.name}.${instantiation.name}`;
      prior.addEventListener("change", () => {
        void controller.editDraft((d) => {
          const target = d.contexts
            .find((c) => c.name === context.name)
            ?.instantiations.find((i) => i.name === instantiation.name);
          if (target) {
            target.prior = Number(prior.value);
          }
        });
      });
      const drop = smallButton("remove", () => {
        void controller.editDraft((d) => removeInstantiation(d, context.name, instantiation.name));
      });
      row.append(label, prior, drop);
      card.appendChild(row);
    }

    card.appendChild(
      smallButton("add instantiation", () => {
        const name = prompt("instantiation name");
        if (name) {
          void controller.editDraft((d) => addInstantiation(d, context.name, name));
        }
      }),
    );
    card.appendChild(
      smallButton("remove context", () => {
        void controller.editDraft((d) => removeContext(d, context.name));
      }),
    );
    card.appendChild(
      inlineViolations(violationsAt(controller.violations, `contexts.${context.name}`)),
    );
    section.appendChild(card);
  }
  section.appendChild(
    smallButton("add context", () => {
      const name = prompt("context name");
      if (name) {
        void controller.editDraft((d) => addContext(d, name));
      }
    }),
  );
  return section;
}

function renderIntentions(draft: ScenarioDraft, controller: DesignerController): HTMLElement {
  const section = document.createElement("section");
  section.appendChild(heading("Intentions"));
  for (const intention of draft.intentions) {
    const card = document.createElement("div");
    card.className = "card intention-card";
    card.dataset["path"] = `intentions.${intention.name}`;
    card.appendChild(subheading(intention.name));

    for (const context of draft.contexts) {
      const group = document.createElement("fieldset");
      const legend = document.createElement("legend");
      legend.textContent = context.name;
      group.appendChild(legend);
      for (const instantiation of context.instantiations) {
        const row = document.createElement("div");
        row.className = "field-row";
        const label = document.createElement("label");
        label.textContent = instantiation.name;
        const select = document.createElement("select");
        select.dataset["influence"] =
          `${intention.name}.${context.name}.${instantiation.name}`;
        SCALE_LABELS.forEach((text, value) => {
          const option = document.createElement("option");
          option.value = String(value);
          option.textContent = text;
          option.selected =
            (intention.influences[context.name]?.[instantiation.name] ?? 0) === value;
          select.appendChild(option);
        });
        select.addEventListener("change", () => {
          void controller.editDraft((d) => {
            const target = d.intentions.find((m) => m.name === intention.name);
            if (target) {
              target.influences[context.name][instantiation.name] = Number(select.value);
            }
          });
        });
        row.append(label, select);
        group.appendChild(row);
      }
      card.appendChild(group);
    }
    card.appendChild(
      smallButton("remove intention", () => {
        void controller.editDraft((d) => removeIntention(d, intention.name));
      }),
    );
    card.appendChild(
      inlineViolations(violationsAt(controller.violations, `intentions.${intention.name}`)),
    );
    section.appendChild(card);
  }
  section.appendChild(
    smallButton("add intention", () => {
      const name = prompt("intention name");
      if (name) {
        void controller.editDraft((d) => addIntention(d, name));
      }
    }),
  );
  return section;
}

function renderThreshold(draft: ScenarioDraft, controller: DesignerController): HTMLElement {
  const section = document.createElement("section");
  section.dataset["path"] = "decision_threshold";
  section.appendChild(heading("Decision threshold"));
  const input = document.createElement("input");
  input.type = "number";
  input.step = "0.01";
  input.min = "0";
  input.max = "1";
  input.value = String(draft.decisionThreshold);
  input.dataset["field"] = "decision-threshold";
  input.addEventListener("change", () => {
    void controller.editDraft((d) => {
      d.decisionThreshold = Number(input.value);
    });
  });
  section.appendChild(input);
  section.appendChild(
    inlineViolations(violationsAt(controller.violations, "decision_threshold")),
  );
  return section;
}

function renderApply(controller: DesignerController): HTMLElement {
  const bar = document.createElement("div");
  bar.className = "apply-bar";
  const apply = document.createElement("button");
  apply.textContent = "Apply configuration";
  apply.dataset["action"] = "apply";
  apply.disabled = !controller.canApply;
  apply.addEventListener("click", () => void controller.apply());
  bar.appendChild(apply);

  const status = document.createElement("span");
  status.dataset["field"] = "validation-status";
  if (!controller.draftValidated) {
    status.textContent = "validating...";
  } else if (controller.violations.length === 0) {
    status.textContent = "draft is valid";
  } else {
    status.textContent = `${controller.violations.length} problem(s) to fix`;
  }
  bar.appendChild(status);
  return bar;
}

function heading(text: string): HTMLElement {
  const element = document.createElement("h3");
  element.textContent = text;
  return element;
}

function subheading(text: string): HTMLElement {
  const element = document.createElement("h4");
  element.textContent = text;
  return element;
}

function smallButton(text: string, onClick: () => void): HTMLButtonElement {
  const button = document.createElement("button");
  button.type = "button";
  button.className = "small";
  button.textContent = text;
  button.addEventListener("click", onClick);
  return button;
}
