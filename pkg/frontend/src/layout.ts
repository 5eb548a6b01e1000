// Nested containment layout: one column per high-level stage (canonical
// left-to-right order), intermediate boxes stacked inside each stage
// region, granular nodes stacked inside each box. Deterministic for a
// given blueprint, and every node rectangle lies strictly inside its
// box, which lies inside its region.

import type { Blueprint, EdgeKind } from "./types.js";
import { granularBlocks } from "./types.js";

export const STAGE_ORDER = [
  "Data Loading",
  "Data Processing",
  "Visualization",
  "Interaction",
] as const;

export const MARGIN = 16;
export const REGION_GAP = 28;
export const REGION_PAD = 14;
export const REGION_HEADER = 30;
export const BOX_GAP = 14;
export const BOX_PAD = 10;
export const BOX_HEADER = 24;
export const NODE_W = 170;
export const NODE_H = 34;
export const NODE_GAP = 10;

export interface Rect {
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface RegionLayout extends Rect {
  name: string;
}

export interface BoxLayout extends Rect {
  name: string;
  region: string;
}

export interface NodeLayout extends Rect {
  id: number;
  name: string;
  region: string;
  box: string;
}

export interface EdgeLayout {
  sourceId: number;
  targetId: number;
  kind: EdgeKind;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
}

export interface BlueprintLayout {
  title: string;
  regions: RegionLayout[];
  boxes: BoxLayout[];
  nodes: NodeLayout[];
  edges: EdgeLayout[];
  width: number;
  height: number;
}

function stageRank(name: string): number {
  const index = (STAGE_ORDER as readonly string[]).indexOf(name);
  return index === -1 ? STAGE_ORDER.length : index;
}

function boxHeight(granularCount: number): number {
  const inner = granularCount === 0 ? 0 : granularCount * NODE_H + (granularCount - 1) * NODE_GAP;
  return BOX_HEADER + inner + BOX_PAD;
}

export function layoutBlueprint(bp: Blueprint): BlueprintLayout {
  // stable sort: canonical stages first, unknown stage names keep
  // document order after them
  const ordered = bp.HighLevelBlocks.map((high, index) => ({ high, index })).sort(
    (a, b) => stageRank(a.high.HighLevelBlockName) - stageRank(b.high.HighLevelBlockName) || a.index - b.index,
  );

  const regions: RegionLayout[] = [];
  const boxes: BoxLayout[] = [];
  const nodes: NodeLayout[] = [];
  const regionWidth = NODE_W + 2 * BOX_PAD + 2 * REGION_PAD;

  let x = MARGIN;
  let maxBottom = 0;
  for (const { high } of ordered) {
    const regionName = high.HighLevelBlockName;
    let y = MARGIN + REGION_HEADER;
    for (const inter of high.IntermediateBlocks) {
      const count = inter.GranularBlocks.length;
      const box: BoxLayout = {
        name: inter.IntermediateBlockName,
        region: regionName,
        x: x + REGION_PAD,
        y,
        width: NODE_W + 2 * BOX_PAD,
        height: boxHeight(count),
      };
      boxes.push(box);
      inter.GranularBlocks.forEach((gran, row) => {
        nodes.push({
          id: gran.ID,
          name: gran.GranularBlockName,
          region: regionName,
          box: box.name,
          x: box.x + BOX_PAD,
          y: box.y + BOX_HEADER + row * (NODE_H + NODE_GAP),
          width: NODE_W,
          height: NODE_H,
        });
      });
      y += box.height + BOX_GAP;
    }
    const contentBottom = high.IntermediateBlocks.length ? y - BOX_GAP : y;
    const region: RegionLayout = {
      name: regionName,
      x,
      y: MARGIN,
      width: regionWidth,
      height: contentBottom - MARGIN + REGION_PAD,
    };
    regions.push(region);
    maxBottom = Math.max(maxBottom, region.y + region.height);
    x += regionWidth + REGION_GAP;
  }

  const nodeById = new Map(nodes.map((n) => [n.id, n]));
  const edges: EdgeLayout[] = [];
  for (const [, , gran] of granularBlocks(bp)) {
    const source = nodeById.get(gran.ID);
    if (!source) continue;
    const push = (targetId: number, kind: EdgeKind) => {
      const target = nodeById.get(targetId);
      if (!target) return;
      edges.push({
        sourceId: gran.ID,
        targetId,
        kind,
        x1: source.x + source.width / 2,
        y1: source.y + source.height / 2,
        x2: target.x + target.width / 2,
        y2: target.y + target.height / 2,
      });
    };
    for (const t of gran.FeedsInto) push(t, "data");
    for (const t of gran.InteractsWith) push(t, "interaction");
  }

  return {
    title: bp.PaperTitle,
    regions,
    boxes,
    nodes,
    edges,
    width: regions.length ? x - REGION_GAP + MARGIN : 2 * MARGIN,
    height: (maxBottom || MARGIN) + MARGIN,
  };
}

export function contains(outer: Rect, inner: Rect): boolean {
  return (
    inner.x >= outer.x &&
    inner.y >= outer.y &&
    inner.x + inner.width <= outer.x + outer.width &&
    inner.y + inner.height <= outer.y + outer.height
  );
}

export function overlaps(a: Rect, b: Rect): boolean {
  return (
    a.x < b.x + b.width && b.x < a.x + a.width && a.y < b.y + b.height && b.y < a.y + a.height
  );
}
