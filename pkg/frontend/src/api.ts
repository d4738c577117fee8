/** Typed fetch client for the coda session service.
 *
 * The notebook never evaluates anything itself: every cell run is a
 * round trip through these six routes, and the trace text that comes
 * back is displayed verbatim.
 */

export type LogicValue = "true" | "false" | "undecided";
export type EvalStatus = "fixed" | "cyclic" | "budget";

export interface EvaluateResponse {
  session_id: string;
  steps: string[];
  status: EvalStatus;
  logic: LogicValue;
  undecidable_hint: boolean;
  final: string;
}

export interface HistoryEntry {
  source: string;
  budget: number;
  final: string;
  logic: LogicValue;
  status: EvalStatus;
}

export interface DemoResponse {
  name: string;
  verdict: LogicValue;
  ok: boolean;
  notes: string;
  undecidable_hint: boolean;
  steps: string[];
}

export interface SearchResponse {
  accepted: string[];
  tried: number;
  elapsed: number;
}

/** Raised for any non-2xx response; carries the service's message. */
export class ServiceError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = "ServiceError";
  }
}

export type FetchLike = (
  input: string,
  init?: { method?: string; body?: string; headers?: Record<string, string> },
) => Promise<{ status: number; json(): Promise<unknown> }>;

export class CodaClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const init: Parameters<FetchLike>[1] = { method };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
      init.headers = { "content-type": "application/json" };
    }
    const response = await this.fetchImpl(this.baseUrl + path, init);
    const payload = (await response.json()) as Record<string, unknown>;
    if (response.status < 200 || response.status >= 300) {
      const message =
        typeof payload.error === "string"
          ? payload.error
          : `service returned ${response.status}`;
      throw new ServiceError(response.status, message);
    }
    return payload as T;
  }

  async createSession(): Promise<string> {
    const payload = await this.request<{ session_id: string }>(
      "POST",
      "/api/sessions",
    );
    return payload.session_id;
  }

  evaluate(
    sessionId: string,
    source: string,
    budget: number,
  ): Promise<EvaluateResponse> {
    return this.request<EvaluateResponse>("POST", "/api/evaluate", {
      session_id: sessionId,
      source,
      budget,
      trace: true,
    });
  }

  async definitions(sessionId: string): Promise<string[]> {
    const payload = await this.request<{ definitions: string[] }>(
      "GET",
      `/api/definitions?session_id=${encodeURIComponent(sessionId)}`,
    );
    return payload.definitions;
  }

  async history(sessionId: string): Promise<HistoryEntry[]> {
    const payload = await this.request<{ history: HistoryEntry[] }>(
      "GET",
      `/api/history?session_id=${encodeURIComponent(sessionId)}`,
    );
    return payload.history;
  }

  demo(name: string, budget?: number): Promise<DemoResponse> {
    const body: Record<string, unknown> = { name };
    if (budget !== undefined) {
      body.budget = budget;
    }
    return this.request<DemoResponse>("POST", "/api/demo", body);
  }

  search(options: {
    positives: string[];
    negatives: string[];
    vocabulary?: string[];
    maxTerms?: number;
    budget?: number;
    stopAfter?: number;
  }): Promise<SearchResponse> {
    const body: Record<string, unknown> = {
      positives: options.positives,
      negatives: options.negatives,
    };
    if (options.vocabulary !== undefined) body.vocabulary = options.vocabulary;
    if (options.maxTerms !== undefined) body.max_terms = options.maxTerms;
    if (options.budget !== undefined) body.budget = options.budget;
    if (options.stopAfter !== undefined) body.stop_after = options.stopAfter;
    return this.request<SearchResponse>("POST", "/api/search", body);
  }
}
