// @vitest-environment jsdom
//
// Rendered-DOM behaviors: edge visual classes, hover emphasis of
// incident edges, click-to-details with the verbatim citation, and the
// empty/error states.

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { beforeEach, describe, expect, it } from "vitest";

import { renderBlueprint } from "../src/render.js";
import type { Blueprint } from "../src/types.js";

const FIXTURES = join(
  dirname(fileURLToPath(import.meta.url)),
  "..",
  "..",
  "src",
  "blueprintkit",
  "fixtures",
);

const taxivis = JSON.parse(readFileSync(join(FIXTURES, "taxivis.json"), "utf-8")) as Blueprint;

let container: HTMLElement;
let panel: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = "";
  container = document.createElement("div");
  panel = document.createElement("aside");
  document.body.append(container, panel);
});

function hover(id: number): void {
  const node = container.querySelector(`g.node[data-id="${id}"]`)!;
  node.dispatchEvent(new MouseEvent("mouseenter"));
}

function unhover(id: number): void {
  const node = container.querySelector(`g.node[data-id="${id}"]`)!;
  node.dispatchEvent(new MouseEvent("mouseleave"));
}

describe("blueprint rendering", () => {
  it("draws four stage regions and both edge classes for TaxiVis", () => {
    renderBlueprint(container, panel, taxivis);
    expect(container.querySelectorAll("g.region")).toHaveLength(4);
    expect(container.querySelectorAll("g.node")).toHaveLength(12);
    expect(container.querySelectorAll(".edge-data")).toHaveLength(14);
    expect(container.querySelectorAll(".edge-interaction")).toHaveLength(3);
  });

  it("hover emphasizes exactly the incident edges and dims the rest", () => {
    renderBlueprint(container, panel, taxivis);
    // block 2 is the Visual Query Engine: 10 incident edges in the fixture
    hover(2);
    const emphasized = [...container.querySelectorAll(".edge.emphasized")];
    const dimmed = [...container.querySelectorAll(".edge.dimmed")];
    expect(emphasized).toHaveLength(10);
    expect(dimmed).toHaveLength(7);
    for (const edge of emphasized) {
      const touches =
        edge.getAttribute("data-source") === "2" || edge.getAttribute("data-target") === "2";
      expect(touches).toBe(true);
    }
  });

  it("hover then unhover returns to baseline", () => {
    renderBlueprint(container, panel, taxivis);
    hover(2);
    unhover(2);
    expect(container.querySelectorAll(".edge.emphasized")).toHaveLength(0);
    expect(container.querySelectorAll(".edge.dimmed")).toHaveLength(0);
  });

  it("hovering an isolated node emphasizes nothing", () => {
    const lonely: Blueprint = {
      PaperTitle: "Lonely",
      HighLevelBlocks: [
        {
          HighLevelBlockName: "Visualization",
          IntermediateBlocks: [
            {
              IntermediateBlockName: "Infovis",
              GranularBlocks: [
                {
                  GranularBlockName: "Only Block",
                  ID: 0,
                  PaperDescription: "",
                  Inputs: [],
                  Outputs: [],
                  ReferenceCitation: "",
                  FeedsInto: [],
                  InteractsWith: [],
                },
              ],
            },
          ],
        },
      ],
    };
    renderBlueprint(container, panel, lonely);
    hover(0);
    expect(container.querySelectorAll(".edge.emphasized")).toHaveLength(0);
  });

  it("click opens the details panel with the verbatim citation", () => {
    renderBlueprint(container, panel, taxivis);
    const node = container.querySelector('g.node[data-id="1"]')!;
    node.dispatchEvent(new MouseEvent("click"));
    expect(panel.hidden).toBe(false);
    const citation = panel.querySelector('[data-field="citation"] .detail-value')!;
    const expected = taxivis.HighLevelBlocks.flatMap((h) =>
      h.IntermediateBlocks.flatMap((i) => i.GranularBlocks),
    ).find((g) => g.ID === 1)!.ReferenceCitation;
    expect(citation.textContent).toBe(expected);
    const name = panel.querySelector('[data-field="name"] .detail-value')!;
    expect(name.textContent).toBe("Spatiotemporal Index");
  });

  it("shows an empty state for a blueprint with no blocks", () => {
    renderBlueprint(container, panel, { PaperTitle: "Empty", HighLevelBlocks: [] });
    expect(container.querySelector(".empty-state")).not.toBeNull();
    expect(container.querySelector("svg")).toBeNull();
  });

  it("shows an error panel on a malformed payload", () => {
    const broken = { PaperTitle: "Broken", HighLevelBlocks: [{}] } as unknown as Blueprint;
    renderBlueprint(container, panel, broken);
    expect(container.querySelector(".render-error")).not.toBeNull();
  });
});
