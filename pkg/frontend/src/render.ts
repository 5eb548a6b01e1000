// SVG rendering of a laid-out blueprint, plus the two Fig-style
// behaviors: hovering a node emphasizes exactly its incident edges and
// dims the rest; clicking a node opens the details panel with the
// block's description, inputs, outputs, and verbatim citation.

import { layoutBlueprint, type BlueprintLayout, type NodeLayout } from "./layout.js";
import type { Blueprint, GranularBlock } from "./types.js";
import { granularBlocks } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface RenderHandles {
  layout: BlueprintLayout;
  svg: SVGSVGElement;
  selectBlock(id: number): void;
  clearHover(): void;
}

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [name, value] of Object.entries(attrs)) {
    el.setAttribute(name, String(value));
  }
  return el;
}

function text(el: SVGElement, value: string): void {
  el.textContent = value;
}

function blockById(bp: Blueprint, id: number): GranularBlock | null {
  for (const [, , gran] of granularBlocks(bp)) {
    if (gran.ID === id) return gran;
  }
  return null;
}

function fillDetailsPanel(panel: HTMLElement, block: GranularBlock): void {
  panel.replaceChildren();
  const add = (field: string, label: string, value: string) => {
    const row = document.createElement("div");
    row.className = "detail-row";
    row.dataset.field = field;
    const dt = document.createElement("span");
    dt.className = "detail-label";
    dt.textContent = label;
    const dd = document.createElement("span");
    dd.className = "detail-value";
    dd.textContent = value;
    row.append(dt, dd);
    panel.append(row);
  };
  add("name", "Name", block.GranularBlockName);
  add("id", "ID", String(block.ID));
  add("description", "Description", block.PaperDescription);
  add("inputs", "Inputs", block.Inputs.join(", "));
  add("outputs", "Outputs", block.Outputs.join(", "));
  add("citation", "Citation", block.ReferenceCitation);
  panel.hidden = false;
}

/**
 * Render a blueprint into `container`; details go into `panel`.
 * Throws nothing: malformed payloads produce an error panel instead.
 */
export function renderBlueprint(
  container: HTMLElement,
  panel: HTMLElement,
  bp: Blueprint,
): RenderHandles | null {
  container.replaceChildren();
  panel.hidden = true;

  let layout: BlueprintLayout;
  try {
    layout = layoutBlueprint(bp);
  } catch (err) {
    const box = document.createElement("div");
    box.className = "render-error";
    box.textContent = `Cannot render this blueprint: ${String(err)}`;
    container.append(box);
    return null;
  }

  if (layout.nodes.length === 0 && layout.regions.length === 0) {
    const empty = document.createElement("div");
    empty.className = "empty-state";
    empty.textContent = "This blueprint has no blocks yet.";
    container.append(empty);
    return null;
  }

  const svg = svgEl("svg", {
    width: layout.width,
    height: layout.height,
    viewBox: `0 0 ${layout.width} ${layout.height}`,
  });
  svg.classList.add("blueprint-canvas");

  for (const region of layout.regions) {
    const g = svgEl("g", {});
    g.classList.add("region");
    g.append(
      svgEl("rect", {
        x: region.x,
        y: region.y,
        width: region.width,
        height: region.height,
        rx: 8,
        class: "region-rect",
      }),
    );
    const label = svgEl("text", {
      x: region.x + 10,
      y: region.y + 20,
      class: "region-label",
    });
    text(label, region.name);
    g.append(label);
    svg.append(g);
  }

  for (const box of layout.boxes) {
    const g = svgEl("g", {});
    g.classList.add("box");
    g.setAttribute("data-box", box.name);
    g.setAttribute("data-region", box.region);
    g.append(
      svgEl("rect", {
        x: box.x,
        y: box.y,
        width: box.width,
        height: box.height,
        rx: 6,
        class: "box-rect",
      }),
    );
    const label = svgEl("text", { x: box.x + 8, y: box.y + 16, class: "box-label" });
    text(label, box.name);
    g.append(label);
    svg.append(g);
  }

  // edges under nodes, one element per dependency, kind as a CSS class
  const edgeEls: { el: SVGLineElement; sourceId: number; targetId: number }[] = [];
  for (const edge of layout.edges) {
    const line = svgEl("line", {
      x1: edge.x1,
      y1: edge.y1,
      x2: edge.x2,
      y2: edge.y2,
    });
    line.classList.add("edge", `edge-${edge.kind}`);
    line.setAttribute("data-source", String(edge.sourceId));
    line.setAttribute("data-target", String(edge.targetId));
    svg.append(line);
    edgeEls.push({ el: line, sourceId: edge.sourceId, targetId: edge.targetId });
  }

  const applyHover = (node: NodeLayout | null) => {
    for (const { el, sourceId, targetId } of edgeEls) {
      el.classList.remove("emphasized", "dimmed");
      if (node === null) continue;
      if (sourceId === node.id || targetId === node.id) {
        el.classList.add("emphasized");
      } else {
        el.classList.add("dimmed");
      }
    }
  };

  const selectBlock = (id: number) => {
    const block = blockById(bp, id);
    if (block) fillDetailsPanel(panel, block);
  };

  for (const node of layout.nodes) {
    const g = svgEl("g", {});
    g.classList.add("node");
    g.setAttribute("data-id", String(node.id));
    g.append(
      svgEl("rect", {
        x: node.x,
        y: node.y,
        width: node.width,
        height: node.height,
        rx: 5,
        class: "node-rect",
      }),
    );
    const label = svgEl("text", {
      x: node.x + node.width / 2,
      y: node.y + node.height / 2 + 4,
      "text-anchor": "middle",
      class: "node-label",
    });
    text(label, node.name);
    g.append(label);
    g.addEventListener("mouseenter", () => applyHover(node));
    g.addEventListener("mouseleave", () => applyHover(null));
    g.addEventListener("click", () => selectBlock(node.id));
    svg.append(g);
  }

  container.append(svg);
  return { layout, svg, selectBlock, clearHover: () => applyHover(null) };
}
