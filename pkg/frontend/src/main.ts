/** Browser wiring: renders a Notebook into the page and keeps the DOM
 * in sync with it. All state lives in the Notebook (and behind it the
 * service session); this file only draws.
 */

import { CodaClient } from "./api.js";
import { Notebook, DEFAULT_BUDGET } from "./notebook.js";

const SESSION_KEY = "coda-session-id";
const DEMO_NAMES = ["consistency", "godel", "curry", "yablo", "berry"];

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

async function connect(client: CodaClient): Promise<Notebook> {
  const stored = window.localStorage.getItem(SESSION_KEY);
  if (stored !== null) {
    try {
      return await Notebook.rehydrate(client, stored);
    } catch {
      window.localStorage.removeItem(SESSION_KEY);
    }
  }
  const notebook = await Notebook.create(client);
  window.localStorage.setItem(SESSION_KEY, notebook.sessionId);
  return notebook;
}

function renderDefinitions(notebook: Notebook, panel: HTMLElement): void {
  panel.replaceChildren();
  const heading = el("h2", undefined, "definitions");
  panel.append(heading);
  if (notebook.definitions.length === 0) {
    panel.append(el("p", "empty", "none yet"));
    return;
  }
  const list = el("ul");
  for (const def of notebook.definitions) {
    const item = el("li");
    item.append(
      el("span", "def-kind", def.kind),
      el("span", "def-name", ` ${def.name} `),
      el("code", "def-body", def.body),
    );
    list.append(item);
  }
  panel.append(list);
}

function renderCells(notebook: Notebook, container: HTMLElement): void {
  container.replaceChildren();
  for (const cell of notebook.cells) {
    const box = el("section", "cell");
    const input = el("textarea");
    input.value = cell.text;
    input.rows = Math.max(1, cell.text.split("\n").length);
    input.addEventListener("input", () => {
      cell.text = input.value;
    });

    const run = el("button", undefined, "run");
    run.addEventListener("click", () => {
      void notebook.runCell(cell.id, DEFAULT_BUDGET);
    });

    const output = el("pre", "output");
    output.textContent = notebook.display(cell);
    if (cell.error !== null) {
      output.classList.add("error");
    } else if (cell.logic !== null) {
      output.classList.add(`logic-${cell.logic}`);
    }

    const badge = el("span", "badge");
    if (cell.logic !== null) {
      badge.textContent = cell.undecidableHint
        ? `${cell.logic} (undecidable?)`
        : cell.logic;
    }

    const controls = el("div", "controls");
    controls.append(run, badge);
    box.append(input, controls, output);
    container.append(box);
  }
}

function renderDemoPanel(notebook: Notebook, panel: HTMLElement): void {
  panel.replaceChildren();
  panel.append(el("h2", undefined, "demos"));
  const picker = el("select");
  for (const name of DEMO_NAMES) {
    const option = el("option", undefined, name);
    option.value = name;
    picker.append(option);
  }
  const budget = el("input");
  budget.type = "number";
  budget.placeholder = "budget";
  const launch = el("button", undefined, "run demo");
  const out = el("pre", "output");
  launch.addEventListener("click", () => {
    const chosen = picker.value;
    const parsed = budget.value === "" ? undefined : Number(budget.value);
    void notebook
      .runDemo(chosen, parsed)
      .then((view) => {
        out.textContent = [view.headline, view.notes, ...view.steps].join("\n");
      })
      .catch((err: unknown) => {
        out.textContent = `error: ${err instanceof Error ? err.message : err}`;
      });
  });
  panel.append(picker, budget, launch, out);
}

function renderSearchPanel(client: CodaClient, panel: HTMLElement): void {
  panel.replaceChildren();
  panel.append(el("h2", undefined, "classifier search"));
  const pos = el("textarea");
  pos.placeholder = "positives, one per line";
  const neg = el("textarea");
  neg.placeholder = "negatives, one per line";
  const launch = el("button", undefined, "search");
  const out = el("pre", "output");
  launch.addEventListener("click", () => {
    const lines = (t: HTMLTextAreaElement) =>
      t.value.split("\n").map((s) => s.trim()).filter((s) => s.length > 0);
    void client
      .search({ positives: lines(pos), negatives: lines(neg) })
      .then((result) => {
        const body = result.accepted.length > 0
          ? result.accepted.join("\n")
          : "(nothing accepted)";
        out.textContent =
          `${body}\n# accepted ${result.accepted.length} of ` +
          `${result.tried} candidates in ${result.elapsed.toFixed(1)}s`;
      })
      .catch((err: unknown) => {
        out.textContent = `error: ${err instanceof Error ? err.message : err}`;
      });
  });
  panel.append(pos, neg, launch, out);
}

export async function boot(root: HTMLElement): Promise<void> {
  const client = new CodaClient(window.location.origin);
  const notebook = await connect(client);

  const defsPanel = el("aside", "definitions-panel");
  const cellsPanel = el("main", "cells");
  const demoPanel = el("section", "demo-panel");
  const searchPanel = el("section", "search-panel");
  const addButton = el("button", "add-cell", "+ cell");
  addButton.addEventListener("click", () => {
    notebook.addCell("");
  });

  const redraw = () => {
    renderDefinitions(notebook, defsPanel);
    renderCells(notebook, cellsPanel);
  };
  notebook.onChange(redraw);

  if (notebook.cells.length === 0) {
    notebook.addCell("");
  }
  renderDemoPanel(notebook, demoPanel);
  renderSearchPanel(client, searchPanel);
  redraw();

  root.replaceChildren(defsPanel, cellsPanel, addButton, demoPanel, searchPanel);
}

const rootElement = document.getElementById("notebook");
if (rootElement !== null) {
  void boot(rootElement);
}
