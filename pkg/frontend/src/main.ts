/** Entry point: wire the controller to the three panes and the banner. */

import { ApiClient } from "./api.js";
import { DesignerController } from "./state.js";
import { focusInfluenceEditor, renderEditor } from "./editor.js";
import { renderGraph } from "./graphview.js";
import { renderPlayground } from "./playground.js";

function serviceBaseUrl(): string {
  const params = new URLSearchParams(window.location.search);
  return params.get("service") ?? "";
}

export function bootstrap(root: Document = document): DesignerController {
  const api = new ApiClient(serviceBaseUrl());
  const controller = new DesignerController(api);

  const banner = root.getElementById("banner")!;
  const editorPane = root.getElementById("editor")!;
  const graphPane = root.getElementById("graph")!;
  const playgroundPane = root.getElementById("playground")!;

  controller.subscribe(() => {
    banner.textContent = controller.banner ?? "";
    banner.classList.toggle("visible", controller.banner !== null);
    renderEditor(editorPane, controller);
    if (controller.graph) {
      renderGraph(graphPane, controller.graph, ({ context, intention }) =>
        focusInfluenceEditor(root, context, intention),
      );
    } else {
      graphPane.textContent = "";
    }
    renderPlayground(playgroundPane, controller);
  });

  void controller.initialize();
  return controller;
}

if (typeof window !== "undefined" && document.getElementById("editor")) {
  bootstrap();
}
