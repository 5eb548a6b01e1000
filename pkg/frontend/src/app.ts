// Application shell: system picker, blueprint canvas with the details
// panel, inline editing of the selected block, and the curation queue.
// The view model updates only on confirmed server responses.

import { BlueprintApi, type FetchedSystem } from "./api.js";
import { canSave, editBlockText, renameBlock, validateBlueprint } from "./editor.js";
import { renderBlueprint, type RenderHandles } from "./render.js";
import type { Blueprint } from "./types.js";

interface AppState {
  key: string | null;
  fetched: FetchedSystem | null;
  working: Blueprint | null;
  dirty: boolean;
  selectedId: number | null;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className = "",
  textContent = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (textContent) node.textContent = textContent;
  return node;
}

export function startApp(root: HTMLElement, baseUrl: string): void {
  const api = new BlueprintApi(baseUrl);
  const state: AppState = { key: null, fetched: null, working: null, dirty: false, selectedId: null };

  const sidebar = el("div", "sidebar");
  const systemList = el("ul", "system-list");
  const queueSection = el("div", "queue-section");
  const queueHeading = el("h2", "", "Review queue");
  const queueList = el("ul", "queue-list");
  queueSection.append(queueHeading, queueList);
  sidebar.append(el("h2", "", "Systems"), systemList, queueSection);

  const main = el("div", "main");
  const statusBar = el("div", "status-bar");
  const canvas = el("div", "canvas");
  const panel = el("aside", "details-panel");
  panel.hidden = true;
  const editBox = el("div", "edit-box");
  editBox.hidden = true;
  main.append(statusBar, canvas, editBox);

  root.replaceChildren(sidebar, main, panel);

  let handles: RenderHandles | null = null;

  const setStatus = (message: string, isError = false) => {
    statusBar.textContent = message;
    statusBar.classList.toggle("error", isError);
  };

  const redraw = () => {
    if (!state.working) return;
    handles = renderBlueprint(canvas, panel, state.working);
    if (handles && state.selectedId !== null) handles.selectBlock(state.selectedId);
  };

  const refreshQueue = async () => {
    queueList.replaceChildren();
    let items;
    try {
      items = await api.fetchQueue();
    } catch {
      return; // queue is optional when the service has no records
    }
    for (const item of items) {
      const li = el("li", "queue-item");
      li.append(el("span", "", `${item.key} (refinements: ${item.refinement_count})`));
      const accept = el("button", "", "Accept");
      accept.addEventListener("click", async () => {
        await api.review(item.key, "accept");
        await refreshQueue();
      });
      const refine = el("button", "", "Request refinement");
      refine.addEventListener("click", async () => {
        const instructions = window.prompt("Refinement instructions:") ?? "";
        if (!instructions.trim()) return;
        try {
          await api.review(item.key, "needs_revision", instructions);
        } catch (err) {
          setStatus(`refinement failed: ${String(err)}`, true);
        }
        await refreshQueue();
      });
      li.append(accept, refine);
      queueList.append(li);
    }
  };

  const openEditor = (id: number) => {
    if (!state.working) return;
    state.selectedId = id;
    const block = state.working.HighLevelBlocks.flatMap((h) =>
      h.IntermediateBlocks.flatMap((i) => i.GranularBlocks),
    ).find((g) => g.ID === id);
    if (!block) return;
    editBox.hidden = false;
    editBox.replaceChildren();
    const nameInput = el("input") as HTMLInputElement;
    nameInput.value = block.GranularBlockName;
    const citationInput = el("textarea") as HTMLTextAreaElement;
    citationInput.value = block.ReferenceCitation;
    const saveButton = el("button", "save-button", "Save");
    const problems = el("div", "problems");

    const applyLocal = () => {
      if (!state.working) return;
      let next = renameBlock(state.working, id, nameInput.value);
      next = editBlockText(next, id, { citation: citationInput.value });
      state.working = next;
      state.dirty = true;
      const issues = validateBlueprint(next);
      problems.replaceChildren(
        ...issues.map((issue) => el("div", "problem", `${issue.code} at ${issue.path}`)),
      );
      saveButton.disabled = !canSave(next);
    };
    nameInput.addEventListener("input", applyLocal);
    citationInput.addEventListener("input", applyLocal);

    saveButton.addEventListener("click", async () => {
      if (!state.key || !state.working || !state.fetched) return;
      const result = await api.saveSystem(state.key, state.working, state.fetched.version);
      if (result.outcome === "saved") {
        state.fetched = { doc: state.working, version: result.version };
        state.dirty = false;
        setStatus(`saved version ${result.version}`);
        redraw();
      } else if (result.outcome === "conflict") {
        setStatus("conflict: someone else saved first; reloading their version", true);
        await load(state.key);
      } else if (result.outcome === "invalid") {
        problems.replaceChildren(
          ...result.report.errors.map((issue) =>
            el("div", "problem", `${issue.code} at ${issue.path}: ${issue.message}`),
          ),
        );
        setStatus("the service rejected the blueprint", true);
      } else {
        setStatus("service is read-only", true);
      }
    });

    editBox.append(
      el("h3", "", `Edit block ${id}`),
      nameInput,
      citationInput,
      saveButton,
      problems,
    );
  };

  const load = async (key: string) => {
    state.key = key;
    state.selectedId = null;
    editBox.hidden = true;
    try {
      state.fetched = await api.fetchSystem(key);
    } catch (err) {
      setStatus(`cannot load ${key}: ${String(err)}`, true);
      return;
    }
    state.working = state.fetched.doc;
    state.dirty = false;
    setStatus(`${key} @ version ${state.fetched.version}`);
    redraw();
    if (handles) {
      canvas.querySelectorAll<SVGGElement>("g.node").forEach((node) => {
        node.addEventListener("click", () => openEditor(Number(node.dataset.id)));
      });
    }
  };

  api
    .listSystems()
    .then((entries) => {
      for (const entry of entries) {
        const li = el("li", "system-entry");
        const link = el("a", "", entry.title ?? entry.key);
        link.setAttribute("href", "#");
        link.addEventListener("click", (event) => {
          event.preventDefault();
          void load(entry.key);
        });
        li.append(link);
        if (entry.year) li.append(el("span", "year", ` (${entry.year})`));
        systemList.append(li);
      }
    })
    .catch((err) => setStatus(`cannot reach the service: ${String(err)}`, true));

  void refreshQueue();
}

declare global {
  interface Window {
    startBlueprintStudio: (root: HTMLElement, baseUrl: string) => void;
  }
}

if (typeof window !== "undefined") {
  window.startBlueprintStudio = startApp;
}
