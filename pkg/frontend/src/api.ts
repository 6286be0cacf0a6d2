/** Typed client for the scoring service.
 *
 * Every displayed number originates from these responses; the UI never
 * computes a utility itself. Live-evaluation calls are latest-wins: an
 * in-flight request is aborted when a newer edit supersedes it.
 */

import type {
  CriticalPayload,
  EvaluationPayload,
  ProblemDocument,
  StoredListing,
  SweepPayload,
  ValidationReport,
  WhatIfOverrides,
  WhatIfPayload,
} from "./types.js";

export class ServiceError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

export class ValidationFailure extends ServiceError {
  constructor(readonly report: ValidationReport) {
    super("document rejected by the service", 422);
  }
}

export class RevisionConflict extends ServiceError {
  constructor(readonly currentRevision: number) {
    super(`revision conflict: server is at revision ${currentRevision}`, 409);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private evaluateController: AbortController | null = null;

  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
    signal?: AbortSignal,
  ): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, {
      method,
      headers: body === undefined ? undefined : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
      signal,
    });
    if (response.status === 204) return undefined as T;
    if (response.ok) return (await response.json()) as T;
    if (response.status === 422) {
      throw new ValidationFailure((await response.json()) as ValidationReport);
    }
    if (response.status === 409) {
      const payload = (await response.json()) as { current_revision: number };
      throw new RevisionConflict(payload.current_revision);
    }
    let detail = response.statusText;
    try {
      const payload = (await response.json()) as { error?: string };
      if (payload.error) detail = payload.error;
    } catch {
      /* non-JSON error body */
    }
    throw new ServiceError(detail, response.status);
  }

  /** Stateless evaluation; aborts any previous still-running evaluation so
   * only the newest edit's result ever resolves. */
  async evaluate(doc: ProblemDocument): Promise<EvaluationPayload> {
    this.evaluateController?.abort();
    const controller = new AbortController();
    this.evaluateController = controller;
    try {
      return await this.request<EvaluationPayload>(
        "POST", "/api/evaluate", doc, controller.signal);
    } finally {
      if (this.evaluateController === controller) this.evaluateController = null;
    }
  }

  listProblems(): Promise<StoredListing[]> {
    return this.request("GET", "/api/problems");
  }

  createProblem(doc: ProblemDocument): Promise<{ id: string; revision: number }> {
    return this.request("POST", "/api/problems", doc);
  }

  getProblem(id: string): Promise<{ document: ProblemDocument; revision: number }> {
    return this.request("GET", `/api/problems/${id}`);
  }

  putProblem(id: string, doc: ProblemDocument, expectedRevision: number):
      Promise<{ revision: number }> {
    return this.request("PUT", `/api/problems/${id}`,
      { document: doc, expected_revision: expectedRevision });
  }

  deleteProblem(id: string): Promise<void> {
    return this.request("DELETE", `/api/problems/${id}`);
  }

  evaluateStored(id: string): Promise<EvaluationPayload> {
    return this.request("POST", `/api/problems/${id}/evaluate`);
  }

  sweep(id: string, attribute: string, samples: number): Promise<SweepPayload> {
    return this.request("POST", `/api/problems/${id}/sensitivity`,
      { attribute, mode: "sweep", samples });
  }

  critical(id: string, attribute: string): Promise<CriticalPayload> {
    return this.request("POST", `/api/problems/${id}/sensitivity`,
      { attribute, mode: "critical" });
  }

  whatIf(id: string, overrides: WhatIfOverrides): Promise<WhatIfPayload> {
    return this.request("POST", `/api/problems/${id}/whatif`, overrides);
  }
}
