// Local editing of a blueprint document plus the client-side mirror of
// the server's structural validation, so the UI never sends a payload
// the service would reject for anything other than a version conflict.

import type { Blueprint, EdgeKind, GranularBlock, ValidationIssue } from "./types.js";
import { granularBlocks } from "./types.js";

function clone(bp: Blueprint): Blueprint {
  return JSON.parse(JSON.stringify(bp)) as Blueprint;
}

function findBlock(bp: Blueprint, id: number): GranularBlock | null {
  for (const [, , gran] of granularBlocks(bp)) {
    if (gran.ID === id) return gran;
  }
  return null;
}

export function renameBlock(bp: Blueprint, id: number, newName: string): Blueprint {
  const next = clone(bp);
  const block = findBlock(next, id);
  if (!block) throw new Error(`no granular block with ID ${id}`);
  block.GranularBlockName = newName;
  return next;
}

export function editBlockText(
  bp: Blueprint,
  id: number,
  fields: { description?: string; citation?: string },
): Blueprint {
  const next = clone(bp);
  const block = findBlock(next, id);
  if (!block) throw new Error(`no granular block with ID ${id}`);
  if (fields.description !== undefined) block.PaperDescription = fields.description;
  if (fields.citation !== undefined) block.ReferenceCitation = fields.citation;
  return next;
}

export function nextFreeId(bp: Blueprint): number {
  let max = -1;
  for (const [, , gran] of granularBlocks(bp)) max = Math.max(max, gran.ID);
  return max + 1;
}

export function addBlock(
  bp: Blueprint,
  highName: string,
  intermediateName: string,
  name: string,
): Blueprint {
  const next = clone(bp);
  const high = next.HighLevelBlocks.find((h) => h.HighLevelBlockName === highName);
  if (!high) throw new Error(`no high-level block named ${highName}`);
  let inter = high.IntermediateBlocks.find((i) => i.IntermediateBlockName === intermediateName);
  if (!inter) {
    inter = { IntermediateBlockName: intermediateName, GranularBlocks: [] };
    high.IntermediateBlocks.push(inter);
  }
  inter.GranularBlocks.push({
    GranularBlockName: name,
    ID: nextFreeId(next),
    PaperDescription: "",
    Inputs: [],
    Outputs: [],
    ReferenceCitation: "",
    FeedsInto: [],
    InteractsWith: [],
  });
  return next;
}

export function removeBlock(bp: Blueprint, id: number): Blueprint {
  const next = clone(bp);
  for (const high of next.HighLevelBlocks) {
    for (const inter of high.IntermediateBlocks) {
      inter.GranularBlocks = inter.GranularBlocks.filter((g) => g.ID !== id);
    }
  }
  // drop edges that pointed at the removed block
  for (const [, , gran] of granularBlocks(next)) {
    gran.FeedsInto = gran.FeedsInto.filter((t) => t !== id);
    gran.InteractsWith = gran.InteractsWith.filter((t) => t !== id);
  }
  return next;
}

export function addEdge(bp: Blueprint, sourceId: number, targetId: number, kind: EdgeKind): Blueprint {
  const next = clone(bp);
  const source = findBlock(next, sourceId);
  if (!source) throw new Error(`no granular block with ID ${sourceId}`);
  const list = kind === "data" ? source.FeedsInto : source.InteractsWith;
  if (!list.includes(targetId)) list.push(targetId);
  return next;
}

export function removeEdge(
  bp: Blueprint,
  sourceId: number,
  targetId: number,
  kind: EdgeKind,
): Blueprint {
  const next = clone(bp);
  const source = findBlock(next, sourceId);
  if (!source) throw new Error(`no granular block with ID ${sourceId}`);
  if (kind === "data") {
    source.FeedsInto = source.FeedsInto.filter((t) => t !== targetId);
  } else {
    source.InteractsWith = source.InteractsWith.filter((t) => t !== targetId);
  }
  return next;
}

const STAGES = new Set(["Data Loading", "Data Processing", "Visualization", "Interaction"]);

/**
 * Structural validation mirroring the service: duplicate IDs, dangling
 * or self edges, duplicated targets, kind conflicts, empty names, and
 * (strict mode) the stage vocabulary. Paths use the JSON-pointer style
 * the server reports, so inline messages line up either way.
 */
export function validateBlueprint(bp: Blueprint, strict = true): ValidationIssue[] {
  const issues: ValidationIssue[] = [];
  const issue = (code: string, path: string, message: string) =>
    issues.push({ code, path, message });

  if (!bp.PaperTitle || !bp.PaperTitle.trim()) {
    issue("EMPTY_NAME", "/PaperTitle", "title must be non-empty");
  }

  const idPaths = new Map<number, string>();
  bp.HighLevelBlocks.forEach((high, hi) => {
    const hpath = `/HighLevelBlocks/${hi}`;
    if (!high.HighLevelBlockName.trim()) {
      issue("EMPTY_NAME", `${hpath}/HighLevelBlockName`, "stage name is empty");
    } else if (strict && !STAGES.has(high.HighLevelBlockName)) {
      issue(
        "BAD_CATEGORY",
        `${hpath}/HighLevelBlockName`,
        `${high.HighLevelBlockName} is not a known stage`,
      );
    }
    high.IntermediateBlocks.forEach((inter, ii) => {
      const ipath = `${hpath}/IntermediateBlocks/${ii}`;
      if (!inter.IntermediateBlockName.trim()) {
        issue("EMPTY_NAME", `${ipath}/IntermediateBlockName`, "grouping name is empty");
      }
      inter.GranularBlocks.forEach((gran, gi) => {
        const gpath = `${ipath}/GranularBlocks/${gi}`;
        if (!gran.GranularBlockName.trim()) {
          issue("EMPTY_NAME", `${gpath}/GranularBlockName`, "block name is empty");
        }
        if (idPaths.has(gran.ID)) {
          issue("DUP_ID", `${gpath}/ID`, `ID ${gran.ID} already used`);
        } else {
          idPaths.set(gran.ID, gpath);
        }
      });
    });
  });

  bp.HighLevelBlocks.forEach((high, hi) => {
    high.IntermediateBlocks.forEach((inter, ii) => {
      inter.GranularBlocks.forEach((gran, gi) => {
        const gpath = `/HighLevelBlocks/${hi}/IntermediateBlocks/${ii}/GranularBlocks/${gi}`;
        const lists: [string, number[]][] = [
          ["FeedsInto", gran.FeedsInto],
          ["InteractsWith", gran.InteractsWith],
        ];
        for (const [key, targets] of lists) {
          const seen = new Set<number>();
          targets.forEach((target, j) => {
            const epath = `${gpath}/${key}/${j}`;
            if (target === gran.ID) {
              issue("SELF_EDGE", epath, "a block cannot depend on itself");
              return;
            }
            if (seen.has(target)) {
              issue("DUP_EDGE", epath, `target ${target} repeated`);
              return;
            }
            seen.add(target);
            if (!idPaths.has(target)) {
              issue("DANGLING_EDGE", epath, `target ${target} does not exist`);
            }
          });
        }
        const overlap = gran.FeedsInto.filter((t) => gran.InteractsWith.includes(t));
        if (overlap.length) {
          issue("EDGE_KIND_CONFLICT", gpath, `targets ${overlap.join(", ")} carry both kinds`);
        }
      });
    });
  });

  return issues;
}

/** An edit is saveable when the client-side validation finds nothing. */
export function canSave(bp: Blueprint, strict = true): boolean {
  return validateBlueprint(bp, strict).length === 0;
}
