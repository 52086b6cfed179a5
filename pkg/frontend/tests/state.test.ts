/**
 * Apply gating: an invalid draft can never reach PUT /config, and the
 * service keeps serving the previously applied document.
 */

import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { focusInfluenceEditor, renderEditor } from "../src/editor.js";
import type { GraphView } from "../src/model.js";
import { DesignerController } from "../src/state.js";
import { FakeService } from "./fakeservice.js";
import { fixtureJson, fixtureText } from "./helpers.js";

const sprinklerDocument = fixtureText("sprinkler_config.yaml");
const graph = fixtureJson<GraphView>("graph_sprinkler.json");

function makeController(): { controller: DesignerController; service: FakeService } {
  const service = new FakeService(sprinklerDocument, graph);
  const controller = new DesignerController(new ApiClient("", service.fetch));
  return { controller, service };
}

function breakPriors(controller: DesignerController): Promise<void> {
  return controller.editDraft((draft) => {
    const sunny = draft.contexts[0].instantiations.find((i) => i.name === "sunny")!;
    sunny.prior = 0.4; // 0.2 + 0.3 + 0.4 = 0.9
  });
}

let editorPane: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = '<div id="editor"></div>';
  editorPane = document.getElementById("editor")!;
});

describe("apply gating", () => {
  it("loads the applied config into an editable, valid draft", async () => {
    const { controller } = makeController();
    await controller.initialize();
    expect(controller.draft?.contexts.map((c) => c.name)).toEqual(["weather", "time_of_day"]);
    expect(controller.violations).toEqual([]);
    expect(controller.canApply).toBe(true);
  });

  it("flags a broken prior sum inline and keeps the draft on screen", async () => {
    const { controller } = makeController();
    await controller.initialize();
    await breakPriors(controller);

    expect(controller.violations.map((v) => v.code)).toEqual(["PRIORS_NOT_NORMALIZED"]);
    expect(controller.canApply).toBe(false);
    // The edit is preserved even though it is invalid.
    expect(controller.draft?.contexts[0].instantiations[2].prior).toBe(0.4);

    renderEditor(editorPane, controller);
    const card = editorPane.querySelector('[data-path="contexts.weather"]')!;
    expect(card.querySelector('[data-violation-code="PRIORS_NOT_NORMALIZED"]')).not.toBeNull();
    const apply = editorPane.querySelector<HTMLButtonElement>('[data-action="apply"]')!;
    expect(apply.disabled).toBe(true);
  });

  it("refuses to apply an invalid draft and never touches the service", async () => {
    const { controller, service } = makeController();
    await controller.initialize();
    await breakPriors(controller);

    const applied = await controller.apply();

    expect(applied).toBe(false);
    expect(service.calls.filter((call) => call.method === "PUT")).toHaveLength(0);
    // The service still serves the original document.
    expect(service.configDocument).toBe(sprinklerDocument);
    const fetched = await new ApiClient("", service.fetch).getConfigDocument();
    expect(fetched).toBe(sprinklerDocument);
  });

  it("applies a repaired draft and refreshes the graph", async () => {
    const { controller, service } = makeController();
    await controller.initialize();
    await breakPriors(controller);
    await controller.editDraft((draft) => {
      draft.contexts[0].instantiations.find((i) => i.name === "sunny")!.prior = 0.5;
    });

    expect(controller.canApply).toBe(true);
    const applied = await controller.apply();

    expect(applied).toBe(true);
    expect(service.calls.filter((call) => call.method === "PUT")).toHaveLength(1);
    expect(service.configDocument).toContain("sunny: 0.5");
  });

  it("shows a banner and preserves edits when the service is unreachable", async () => {
    const { controller, service } = makeController();
    await controller.initialize();

    const offline = new DesignerController(
      new ApiClient("", () => Promise.reject(new Error("connection refused"))),
    );
    offline.draft = controller.draft;
    offline.draftValidated = true;
    await offline.editDraft((draft) => {
      draft.decisionThreshold = 0.9;
    });

    expect(offline.banner).toContain("validation unavailable");
    expect(offline.draft?.decisionThreshold).toBe(0.9);
    expect(service.calls.filter((call) => call.method === "PUT")).toHaveLength(0);
  });

  it("selecting a graph edge highlights that influence editor", async () => {
    const { controller } = makeController();
    await controller.initialize();
    renderEditor(editorPane, controller);

    focusInfluenceEditor(document, "weather", "turn on sprinkler");

    const card = editorPane.querySelector('[data-path="intentions.turn on sprinkler"]')!;
    expect(card.classList.contains("selected")).toBe(true);
    const highlighted = [...card.querySelectorAll("fieldset.selected legend")].map(
      (legend) => legend.textContent,
    );
    expect(highlighted).toEqual(["weather"]);
  });

  it("matches the real service's violation payload for the broken fixture", async () => {
    // sprinkler_priors_09.yaml and validate_priors_violation.json are
    // captures of a real /validate exchange; the fake must agree on the
    // machine-readable parts.
    const { service } = makeController();
    const api = new ApiClient("", service.fetch);
    const report = await api.validateDraft(fixtureText("sprinkler_priors_09.yaml"));
    const real = fixtureJson<{ violations: { code: string; path: string }[] }>(
      "validate_priors_violation.json",
    );
    expect(report.violations.map((v) => ({ code: v.code, path: v.path }))).toEqual(
      real.violations.map((v) => ({ code: v.code, path: v.path })),
    );
  });

  it("drops stale validation responses (latest wins)", async () => {
    const { service } = makeController();
    let release: (() => void) | null = null;
    const gated: typeof service.fetch = async (input, init) => {
      if ((init?.method ?? "GET") === "POST" && input.endsWith("/validate") && release === null) {
        await new Promise<void>((resolve) => {
          release = resolve;
        });
      }
      return service.fetch(input, init);
    };
    const controller = new DesignerController(new ApiClient("", gated));
    await controller.initialize();

    const slow = breakPriors(controller); // first validate hangs on the gate
    const fast = controller.editDraft((draft) => {
      draft.contexts[0].instantiations.find((i) => i.name === "sunny")!.prior = 0.5;
    });
    await fast;
    expect(controller.violations).toEqual([]);

    release!();
    await slow;
    // The stale (broken) verdict must not overwrite the newer (clean) one.
    expect(controller.violations).toEqual([]);
  });
});
