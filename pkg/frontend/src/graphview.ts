/**
 * Two-column diagram of the network: contexts on the left, intentions on the
 * right, one labeled edge per pair. Pure function of the graph payload.
 */

import type { GraphView } from "./model.js";

export interface EdgeSelection {
  context: string;
  intention: string;
}

const SVG_NS = "http://www.w3.org/2000/svg";
const ROW_HEIGHT = 72;
const NODE_WIDTH = 190;
const COLUMN_GAP = 360;
const MARGIN = 24;

export function renderGraph(
  container: HTMLElement,
  view: GraphView,
  onSelectEdge?: (edge: EdgeSelection) => void,
): void {
  container.textContent = "";
  const rows = Math.max(view.contexts.length, view.intentions.length, 1);
  const height = rows * ROW_HEIGHT + 2 * MARGIN;
  const width = NODE_WIDTH * 2 + COLUMN_GAP + 2 * MARGIN;

  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("class", "graph-canvas");
  svg.setAttribute("role", "img");

  const contextY = new Map<string, number>();
  view.contexts.forEach((context, index) => {
    const y = MARGIN + index * ROW_HEIGHT + ROW_HEIGHT / 2;
    contextY.set(context.name, y);
  });
  const intentionY = new Map<string, number>();
  view.intentions.forEach((intention, index) => {
    const y = MARGIN + index * ROW_HEIGHT + ROW_HEIGHT / 2;
    intentionY.set(intention.name, y);
  });

  for (const edge of view.edges) {
    const y1 = contextY.get(edge.context) ?? 0;
    const y2 = intentionY.get(edge.intention) ?? 0;
    const x1 = MARGIN + NODE_WIDTH;
    const x2 = MARGIN + NODE_WIDTH + COLUMN_GAP;
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(x1));
    line.setAttribute("y1", String(y1));
    line.setAttribute("x2", String(x2));
    line.setAttribute("y2", String(y2));
    line.setAttribute("class", "graph-edge");
    line.dataset["edge"] = `${edge.context}->${edge.intention}`;
    if (onSelectEdge) {
      line.addEventListener("click", () =>
        onSelectEdge({ context: edge.context, intention: edge.intention }),
      );
    }
    svg.appendChild(line);

    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String((x1 + x2) / 2));
    label.setAttribute("y", String((y1 + y2) / 2 - 4));
    label.setAttribute("class", "graph-edge-label");
    label.dataset["edgeLabel"] = `${edge.context}->${edge.intention}`;
    label.textContent = edge.values.join("/");
    if (onSelectEdge) {
      label.addEventListener("click", () =>
        onSelectEdge({ context: edge.context, intention: edge.intention }),
      );
    }
    svg.appendChild(label);
  }

  for (const entry of view.combined_edges) {
    const involved = Object.keys(entry.conditions);
    const ys = involved.map((name) => contextY.get(name) ?? 0);
    const yMid = ys.reduce((a, b) => a + b, 0) / Math.max(ys.length, 1);
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(MARGIN + NODE_WIDTH));
    line.setAttribute("y1", String(yMid));
    line.setAttribute("x2", String(MARGIN + NODE_WIDTH + COLUMN_GAP));
    line.setAttribute("y2", String(intentionY.get(entry.intention) ?? 0));
    line.setAttribute("class", "graph-edge graph-edge-combined");
    line.dataset["combinedEdge"] = entry.intention;
    svg.appendChild(line);
  }

  view.contexts.forEach((context, index) => {
    svg.appendChild(
      nodeBox(MARGIN, MARGIN + index * ROW_HEIGHT, "context", context.name,
        context.instantiations.join(", ")),
    );
  });
  view.intentions.forEach((intention, index) => {
    svg.appendChild(
      nodeBox(MARGIN + NODE_WIDTH + COLUMN_GAP, MARGIN + index * ROW_HEIGHT, "intention",
        intention.name, ""),
    );
  });

  container.appendChild(svg);
}

function nodeBox(
  x: number,
  y: number,
  kind: "context" | "intention",
  title: string,
  subtitle: string,
): SVGGElement {
  const group = document.createElementNS(SVG_NS, "g");
  group.dataset["nodeKind"] = kind;
  group.dataset["nodeName"] = title;

  const rect = document.createElementNS(SVG_NS, "rect");
  rect.setAttribute("x", String(x));
  rect.setAttribute("y", String(y + 8));
  rect.setAttribute("width", String(NODE_WIDTH));
  rect.setAttribute("height", String(ROW_HEIGHT - 16));
  rect.setAttribute("rx", "8");
  rect.setAttribute("class", `graph-node graph-node-${kind}`);
  group.appendChild(rect);

  const text = document.createElementNS(SVG_NS, "text");
  text.setAttribute("x", String(x + 10));
  text.setAttribute("y", String(y + 32));
  text.setAttribute("class", "graph-node-title");
  text.textContent = title;
  group.appendChild(text);

  if (subtitle) {
    const sub = document.createElementNS(SVG_NS, "text");
    sub.setAttribute("x", String(x + 10));
    sub.setAttribute("y", String(y + 48));
    sub.setAttribute("class", "graph-node-subtitle");
    sub.textContent = subtitle;
    group.appendChild(sub);
  }
  return group;
}
