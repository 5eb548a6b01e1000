// Edit -> save -> reload against the real service: version bump on a
// rename, the stale-version conflict path, and the client-side guard
// that blocks structurally invalid payloads before any request.

import { type ChildProcess, spawn } from "node:child_process";
import { copyFileSync, mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { BlueprintApi } from "../src/api.js";
import { addEdge, canSave, renameBlock, validateBlueprint } from "../src/editor.js";

const HERE = dirname(fileURLToPath(import.meta.url));
const FIXTURES = join(HERE, "..", "..", "src", "blueprintkit", "fixtures");

let serverProcess: ChildProcess;
let workDir: string;
let api: BlueprintApi;

function startServer(root: string): Promise<string> {
  return new Promise((resolve, reject) => {
    serverProcess = spawn(
      "python3",
      ["-m", "blueprintkit.cli", "serve", root, "--port", "0"],
      { stdio: ["ignore", "pipe", "pipe"] },
    );
    const timer = setTimeout(() => reject(new Error("service did not start in time")), 15000);
    let buffer = "";
    serverProcess.stdout!.on("data", (chunk: Buffer) => {
      buffer += chunk.toString();
      const match = buffer.match(/on (http:\/\/[\d.]+:\d+)/);
      if (match) {
        clearTimeout(timer);
        resolve(match[1]!);
      }
    });
    serverProcess.stderr!.on("data", () => {});
    serverProcess.on("exit", (code) => {
      clearTimeout(timer);
      reject(new Error(`service exited early with code ${code}`));
    });
  });
}

beforeAll(async () => {
  workDir = mkdtempSync(join(tmpdir(), "studio-"));
  copyFileSync(join(FIXTURES, "taxivis.json"), join(workDir, "taxivis.json"));
  const baseUrl = await startServer(workDir);
  api = new BlueprintApi(baseUrl);
}, 20000);

afterAll(() => {
  serverProcess?.kill();
  rmSync(workDir, { recursive: true, force: true });
});

describe("edit, save, reload", () => {
  it("rename round-trips with the version incremented by one", async () => {
    const { doc, version } = await api.fetchSystem("taxivis");
    expect(version).toBe(1);
    const edited = renameBlock(doc, 0, "Trip Records");
    expect(canSave(edited)).toBe(true);

    const result = await api.saveSystem("taxivis", edited, version);
    expect(result.outcome).toBe("saved");
    if (result.outcome !== "saved") return;
    expect(result.version).toBe(version + 1);

    const reloaded = await api.fetchSystem("taxivis");
    expect(reloaded.version).toBe(version + 1);
    const renamed = reloaded.doc.HighLevelBlocks.flatMap((h) =>
      h.IntermediateBlocks.flatMap((i) => i.GranularBlocks),
    ).find((g) => g.ID === 0)!;
    expect(renamed.GranularBlockName).toBe("Trip Records");
    // the rest of the document survived the round trip untouched
    expect(reloaded.doc).toEqual(edited);
  });

  it("a stale-version save surfaces the conflict path", async () => {
    const { doc, version } = await api.fetchSystem("taxivis");
    const mine = renameBlock(doc, 0, "Mine");
    const theirs = renameBlock(doc, 0, "Theirs");
    const first = await api.saveSystem("taxivis", mine, version);
    expect(first.outcome).toBe("saved");
    const second = await api.saveSystem("taxivis", theirs, version);
    expect(second.outcome).toBe("conflict");
    if (second.outcome === "conflict") {
      expect(second.currentVersion).toBe(version + 1);
    }
    // no silent overwrite: the first save's content is what persists
    const current = await api.fetchSystem("taxivis");
    const block = current.doc.HighLevelBlocks.flatMap((h) =>
      h.IntermediateBlocks.flatMap((i) => i.GranularBlocks),
    ).find((g) => g.ID === 0)!;
    expect(block.GranularBlockName).toBe("Mine");
  });

  it("client-side validation blocks a dangling edge before any request", async () => {
    const { doc } = await api.fetchSystem("taxivis");
    const withDangling = addEdge(doc, 0, 999, "data");
    const issues = validateBlueprint(withDangling);
    expect(issues.some((issue) => issue.code === "DANGLING_EDGE")).toBe(true);
    expect(canSave(withDangling)).toBe(false);
  });

  it("the server rejects what the client flags, and accepts what it clears", async () => {
    const { doc, version } = await api.fetchSystem("taxivis");
    const withDangling = addEdge(doc, 0, 999, "data");
    const rejected = await api.saveSystem("taxivis", withDangling, version);
    expect(rejected.outcome).toBe("invalid");
    if (rejected.outcome === "invalid") {
      expect(rejected.report.errors.some((e) => e.code === "DANGLING_EDGE")).toBe(true);
    }
    const valid = addEdge(doc, 4, 5, "interaction");
    expect(canSave(valid)).toBe(true);
    const accepted = await api.saveSystem("taxivis", valid, version);
    expect(accepted.outcome).toBe("saved");
  });
});
