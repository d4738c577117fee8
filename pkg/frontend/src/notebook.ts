/** Notebook state machine: ordered cells against one service session.
 *
 * The kernel behind the service is the single source of truth. A cell
 * run posts the source and displays whatever comes back; the
 * definitions panel is refreshed from the service after every run so
 * it always mirrors the session context. Evaluations are serialized
 * client-side: one in flight, later runs queue behind it.
 */

import {
  CodaClient,
  DemoResponse,
  EvalStatus,
  LogicValue,
  ServiceError,
} from "./api.js";
import {
  Definition,
  DisplayMode,
  parseCellSource,
  parseDefinition,
  traceText,
  verdictLabel,
} from "./trace.js";

export const DEFAULT_BUDGET = 10;

export interface Cell {
  id: number;
  /** The text as typed, `step :` prefix and all. */
  text: string;
  mode: DisplayMode;
  steps: string[];
  final: string | null;
  logic: LogicValue | null;
  status: EvalStatus | null;
  undecidableHint: boolean;
  /** Inline diagnostic from a failed service call; the notebook keeps going. */
  error: string | null;
}

export interface DemoView {
  /** Same line the CLI prints: `demo <name>: verdict <Label>`. */
  headline: string;
  notes: string;
  undecidableHint: boolean;
  steps: string[];
}

function freshCell(id: number, text: string): Cell {
  return {
    id,
    text,
    mode: "final",
    steps: [],
    final: null,
    logic: null,
    status: null,
    undecidableHint: false,
    error: null,
  };
}

export class Notebook {
  readonly cells: Cell[] = [];
  definitions: Definition[] = [];

  private nextId = 1;
  private queueTail: Promise<void> = Promise.resolve();
  private listeners: Array<() => void> = [];

  private constructor(
    private readonly client: CodaClient,
    readonly sessionId: string,
  ) {}

  /** Start a brand-new session. */
  static async create(client: CodaClient): Promise<Notebook> {
    const sessionId = await client.createSession();
    const notebook = new Notebook(client, sessionId);
    await notebook.refreshDefinitions();
    return notebook;
  }

  /** Rebuild a notebook for an existing session: cell order comes from
   * the service's history, definitions from its context. Traces are not
   * stored server-side, so rehydrated cells show their final value until
   * re-run (which, against the unchanged session, reproduces the same
   * trace). */
  static async rehydrate(
    client: CodaClient,
    sessionId: string,
  ): Promise<Notebook> {
    const entries = await client.history(sessionId);
    const notebook = new Notebook(client, sessionId);
    for (const entry of entries) {
      const cell = notebook.addCell(entry.source);
      cell.final = entry.final;
      cell.steps = [entry.final];
      cell.logic = entry.logic;
      cell.status = entry.status;
    }
    await notebook.refreshDefinitions();
    return notebook;
  }

  onChange(listener: () => void): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) {
      listener();
    }
  }

  addCell(text = ""): Cell {
    const cell = freshCell(this.nextId++, text);
    this.cells.push(cell);
    this.notify();
    return cell;
  }

  getCell(id: number): Cell | undefined {
    return this.cells.find((cell) => cell.id === id);
  }

  /** Queue a cell for evaluation. Resolves once this cell's run (and
   * every run queued before it) has finished; errors land in the cell
   * as inline diagnostics rather than rejecting. */
  runCell(id: number, budget = DEFAULT_BUDGET): Promise<Cell> {
    const result = this.queueTail.then(() => this.evaluateNow(id, budget));
    this.queueTail = result.then(
      () => undefined,
      () => undefined,
    );
    return result;
  }

  private async evaluateNow(id: number, budget: number): Promise<Cell> {
    const cell = this.getCell(id);
    if (cell === undefined) {
      throw new Error(`no cell with id ${id}`);
    }
    const parsed = parseCellSource(cell.text);
    cell.mode = parsed.mode;
    try {
      const response = await this.client.evaluate(
        this.sessionId,
        parsed.source,
        budget,
      );
      cell.steps = response.steps;
      cell.final = response.final;
      cell.logic = response.logic;
      cell.status = response.status;
      cell.undecidableHint = response.undecidable_hint;
      cell.error = null;
    } catch (err) {
      cell.error = err instanceof Error ? err.message : String(err);
    }
    await this.refreshDefinitions();
    this.notify();
    return cell;
  }

  /** What the cell's output pane shows. Steps-mode cells display the
   * service trace verbatim; final-mode cells display the settled value. */
  display(cell: Cell): string {
    if (cell.error !== null) {
      return `error: ${cell.error}`;
    }
    if (cell.final === null) {
      return "";
    }
    return cell.mode === "steps" ? traceText(cell.steps) : cell.final;
  }

  async refreshDefinitions(): Promise<void> {
    try {
      const lines = await this.client.definitions(this.sessionId);
      this.definitions = lines
        .map(parseDefinition)
        .filter((d): d is Definition => d !== null);
    } catch (err) {
      if (!(err instanceof ServiceError)) {
        throw err;
      }
    }
  }

  async runDemo(name: string, budget?: number): Promise<DemoView> {
    const report: DemoResponse = await this.client.demo(name, budget);
    return {
      headline: `demo ${report.name}: verdict ${verdictLabel(report.verdict)}`,
      notes: report.notes,
      undecidableHint: report.undecidable_hint,
      steps: report.steps,
    };
  }
}
