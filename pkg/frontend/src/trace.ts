/** Display helpers shared by the cell renderer and the parity tests.
 *
 * Trace text is never rebuilt on the client: the service's steps are
 * joined with newlines and shown as-is, so whatever the CLI prints for
 * the same source is exactly what appears in the cell.
 */

export type DisplayMode = "final" | "steps";

export interface ParsedSource {
  /** What actually gets sent to the service. */
  source: string;
  /** Steps mode when the cell began with a `step :` prefix. */
  mode: DisplayMode;
}

/** Split a cell's text the way the REPL does: a leading `step` word
 * followed by a colon switches the cell to steps display and strips
 * the prefix before evaluation. Everything else evaluates verbatim. */
export function parseCellSource(text: string): ParsedSource {
  const stripped = text.replace(/^\s+/, "");
  if (stripped.startsWith("step")) {
    const rest = stripped.slice(4).replace(/^\s+/, "");
    if (rest.startsWith(":")) {
      return { source: rest.slice(1), mode: "steps" };
    }
  }
  return { source: text, mode: "final" };
}

/** The text a steps-mode cell displays: the service's trace verbatim. */
export function traceText(steps: string[]): string {
  return steps.join("\n");
}

/** Human form of a logic token, matching the CLI's verdict casing. */
export function verdictLabel(logic: string): string {
  return logic.charAt(0).toUpperCase() + logic.slice(1);
}

/** Parse a `kind<TAB>name<TAB>body` line from the definitions route. */
export interface Definition {
  kind: string;
  name: string;
  body: string;
}

export function parseDefinition(line: string): Definition | null {
  const parts = line.split("\t");
  if (parts.length < 3) {
    return null;
  }
  const [kind, name, ...rest] = parts;
  return { kind: kind ?? "", name: name ?? "", body: rest.join("\t") };
}
