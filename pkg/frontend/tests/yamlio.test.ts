import { describe, expect, it } from "vitest";

import { documentToDraft, draftToDocument } from "../src/yamlio.js";
import type { ScenarioDraft } from "../src/model.js";
import { fixtureText } from "./helpers.js";

const sprinklerDocument = fixtureText("sprinkler_config.yaml");

describe("documentToDraft", () => {
  it("reads the service's canonical document", () => {
    const draft = documentToDraft(sprinklerDocument);
    expect(draft.contexts.map((c) => c.name)).toEqual(["weather", "time_of_day"]);
    expect(draft.contexts[0].instantiations).toEqual([
      { name: "cloudy", prior: 0.2 },
      { name: "rainy", prior: 0.3 },
      { name: "sunny", prior: 0.5 },
    ]);
    expect(draft.intentions[0].name).toBe("turn on sprinkler");
    expect(draft.intentions[0].influences["weather"]["sunny"]).toBe(4);
    expect(draft.decisionThreshold).toBe(0.6);
    expect(draft.combined).toEqual([]);
  });

  it("rejects non-yaml and wrong shapes", () => {
    expect(() => documentToDraft("contexts: [unclosed")).toThrow();
    expect(() => documentToDraft("contexts: 3\nintentions: {}\ndecision_threshold: 0.5")).toThrow(
      /contexts/,
    );
  });
});

describe("draftToDocument", () => {
  it("round trips through the draft structure", () => {
    const draft = documentToDraft(sprinklerDocument);
    const emitted = draftToDocument(draft);
    expect(documentToDraft(emitted)).toEqual(draft);
  });

  it("round trips combined influence entries", () => {
    const draft: ScenarioDraft = {
      contexts: [
        {
          name: "speech command",
          instantiations: [
            { name: "pick up", prior: 0.1 },
            { name: "silence", prior: 0.9 },
          ],
        },
        {
          name: "speech directed",
          instantiations: [
            { name: "yes", prior: 0.5 },
            { name: "no", prior: 0.5 },
          ],
        },
      ],
      intentions: [
        {
          name: "pick up tool",
          influences: {
            "speech command": { "pick up": 4, silence: 0 },
            "speech directed": { yes: 1, no: 0 },
          },
        },
      ],
      combined: [
        {
          intention: "pick up tool",
          conditions: { "speech command": "pick up", "speech directed": "yes" },
          value: 5,
        },
      ],
      decisionThreshold: 0.7,
    };
    const emitted = draftToDocument(draft);
    expect(documentToDraft(emitted)).toEqual(draft);
  });

  it("quotes yes/no names so they survive any yaml dialect", () => {
    const draft = documentToDraft(sprinklerDocument);
    draft.contexts[1].instantiations[0].name = "yes";
    const renamed = draft.intentions[0].influences["time_of_day"]["day"];
    delete draft.intentions[0].influences["time_of_day"]["day"];
    draft.intentions[0].influences["time_of_day"]["yes"] = renamed;
    const emitted = draftToDocument(draft);
    expect(emitted).toContain("'yes'");
    expect(documentToDraft(emitted).contexts[1].instantiations[0].name).toBe("yes");
  });
});
