import { describe, expect, it } from "vitest";
import { CodaClient, FetchLike } from "../src/api.js";
import { Notebook } from "../src/notebook.js";

/** In-memory stand-in for the service: enough of the six routes for the
 * state machine to run, with per-call hooks so tests can inject delays
 * and failures and observe concurrency. */
class FakeService {
  definitions: string[] = [];
  history: Array<Record<string, unknown>> = [];
  evaluations: string[] = [];
  inFlight = 0;
  maxInFlight = 0;
  delayMs = 0;
  failNext: string | null = null;

  respond(source: string): Record<string, unknown> {
    const final = source.trim() === "" ? "()" : `<${source.trim()}>`;
    if (source.startsWith("def ")) {
      const name = source.split(" ")[1] ?? "?";
      this.definitions.push(`def\t${name}\t{B}`);
      return { final: "()", steps: ["()"], logic: "true", status: "fixed" };
    }
    return {
      final,
      steps: [`${final} step1`, final],
      logic: "undecided",
      status: "fixed",
    };
  }

  fetch: FetchLike = async (input, init) => {
    const url = new URL(input, "http://fake");
    const path = url.pathname;
    const ok = (payload: unknown, status = 200) => ({
      status,
      json: async () => payload,
    });

    if (path === "/api/sessions") {
      return ok({ session_id: "s-1" });
    }
    if (path === "/api/evaluate") {
      this.inFlight += 1;
      this.maxInFlight = Math.max(this.maxInFlight, this.inFlight);
      if (this.delayMs > 0) {
        await new Promise((resolve) => setTimeout(resolve, this.delayMs));
      }
      this.inFlight -= 1;
      const body = JSON.parse(init?.body ?? "{}") as {
        source: string;
        budget: number;
      };
      if (this.failNext !== null) {
        const message = this.failNext;
        this.failNext = null;
        return ok({ error: message }, 400);
      }
      this.evaluations.push(body.source);
      const result = this.respond(body.source);
      this.history.push({
        source: body.source,
        budget: body.budget,
        final: result.final,
        logic: result.logic,
        status: result.status,
      });
      return ok({
        session_id: "s-1",
        steps: result.steps,
        status: result.status,
        logic: result.logic,
        undecidable_hint: false,
        final: result.final,
      });
    }
    if (path === "/api/definitions") {
      return ok({ session_id: "s-1", definitions: [...this.definitions] });
    }
    if (path === "/api/history") {
      return ok({ session_id: "s-1", history: [...this.history] });
    }
    if (path === "/api/demo") {
      const body = JSON.parse(init?.body ?? "{}") as { name: string };
      return ok({
        name: body.name,
        verdict: "undecided",
        ok: true,
        notes: "stays open",
        undecidable_hint: true,
        steps: ["line one", "line two"],
      });
    }
    return ok({ error: `no route: ${path}` }, 404);
  };
}

function makeNotebook(service: FakeService): Promise<Notebook> {
  return Notebook.create(new CodaClient("http://fake", service.fetch));
}

describe("cell runs", () => {
  it("stores the trace and final value on the cell", async () => {
    const service = new FakeService();
    const notebook = await makeNotebook(service);
    const cell = notebook.addCell("sum n : 3 5");
    await notebook.runCell(cell.id);
    expect(cell.final).toBe("<sum n : 3 5>");
    expect(cell.steps).toHaveLength(2);
    expect(cell.mode).toBe("final");
    expect(notebook.display(cell)).toBe("<sum n : 3 5>");
  });

  it("shows the verbatim trace for step-prefixed cells", async () => {
    const service = new FakeService();
    const notebook = await makeNotebook(service);
    const cell = notebook.addCell("step : nat : 0");
    await notebook.runCell(cell.id);
    expect(service.evaluations).toEqual([" nat : 0"]);
    expect(cell.mode).toBe("steps");
    expect(notebook.display(cell)).toBe(cell.steps.join("\n"));
  });

  it("renders the empty cell's evaluation as ()", async () => {
    const service = new FakeService();
    const notebook = await makeNotebook(service);
    const cell = notebook.addCell("");
    await notebook.runCell(cell.id);
    expect(notebook.display(cell)).toBe("()");
  });

  it("mirrors the service definitions after every run", async () => {
    const service = new FakeService();
    const notebook = await makeNotebook(service);
    expect(notebook.definitions).toEqual([]);
    const cell = notebook.addCell("def twice : {B B}");
    await notebook.runCell(cell.id);
    expect(notebook.definitions).toEqual([
      { kind: "def", name: "twice", body: "{B}" },
    ]);
  });

  it("keeps going after a service error, with an inline diagnostic", async () => {
    const service = new FakeService();
    const notebook = await makeNotebook(service);
    const bad = notebook.addCell("whatever");
    service.failNext = "evaluation failed: boom";
    await notebook.runCell(bad.id);
    expect(bad.error).toBe("evaluation failed: boom");
    expect(notebook.display(bad)).toBe("error: evaluation failed: boom");

    const good = notebook.addCell("a b");
    await notebook.runCell(good.id);
    expect(good.error).toBeNull();
    expect(good.final).toBe("<a b>");
  });

  it("clears the diagnostic once the cell succeeds again", async () => {
    const service = new FakeService();
    const notebook = await makeNotebook(service);
    const cell = notebook.addCell("x");
    service.failNext = "nope";
    await notebook.runCell(cell.id);
    expect(cell.error).not.toBeNull();
    await notebook.runCell(cell.id);
    expect(cell.error).toBeNull();
    expect(cell.final).toBe("<x>");
  });
});

describe("evaluation queue", () => {
  it("never has more than one evaluation in flight", async () => {
    const service = new FakeService();
    service.delayMs = 5;
    const notebook = await makeNotebook(service);
    const cells = ["a", "b", "c", "d", "e"].map((t) => notebook.addCell(t));
    await Promise.all(cells.map((cell) => notebook.runCell(cell.id)));
    expect(service.maxInFlight).toBe(1);
    expect(service.evaluations).toEqual(["a", "b", "c", "d", "e"]);
  });

  it("keeps the queue alive after a failing run", async () => {
    const service = new FakeService();
    const notebook = await makeNotebook(service);
    const first = notebook.addCell("one");
    const second = notebook.addCell("two");
    service.failNext = "boom";
    const runs = [notebook.runCell(first.id), notebook.runCell(second.id)];
    await Promise.all(runs);
    expect(first.error).toBe("boom");
    expect(second.final).toBe("<two>");
  });
});

describe("rehydration", () => {
  it("rebuilds cell order and definitions from the service", async () => {
    const service = new FakeService();
    const notebook = await makeNotebook(service);
    for (const text of ["def g : {B}", "a b", "c"]) {
      const cell = notebook.addCell(text);
      await notebook.runCell(cell.id);
    }

    const reloaded = await Notebook.rehydrate(
      new CodaClient("http://fake", service.fetch),
      notebook.sessionId,
    );
    expect(reloaded.cells.map((c) => c.text)).toEqual([
      "def g : {B}",
      "a b",
      "c",
    ]);
    expect(reloaded.cells.map((c) => c.final)).toEqual([
      "()",
      "<a b>",
      "<c>",
    ]);
    expect(reloaded.definitions).toEqual(notebook.definitions);
  });
});

describe("demo launcher", () => {
  it("renders the CLI-style verdict headline", async () => {
    const service = new FakeService();
    const notebook = await makeNotebook(service);
    const view = await notebook.runDemo("yablo", 20);
    expect(view.headline).toBe("demo yablo: verdict Undecided");
    expect(view.steps).toEqual(["line one", "line two"]);
  });
});
