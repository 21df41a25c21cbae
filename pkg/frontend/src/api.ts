/** Thin typed client for the survey service; every method is one endpoint.
 *
 * Errors surface as ApiError: HTTP failures carry the server's error name
 * ("wrong_state", "invalid_selection", ...) and status; transport failures
 * (server unreachable, connection dropped) use status 0 and name "network"
 * so callers can distinguish "retry" from "reload state".
 */

import type {
  CatalogResponse,
  CreateSessionResponse,
  ErrorEnvelope,
  PanelResponse,
  QuestionnaireBody,
  QuestionnaireResponse,
  ReviewResponse,
  SelectionResponse,
  SessionConfigBody,
} from './types.js';

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  readonly status: number;
  readonly errorName: string;
  readonly detail: unknown;

  constructor(status: number, errorName: string, detail: unknown) {
    super(`${errorName} (${status}): ${JSON.stringify(detail)}`);
    this.status = status;
    this.errorName = errorName;
    this.detail = detail;
  }

  get isConflict(): boolean {
    return this.status === 409;
  }

  get isNetwork(): boolean {
    return this.status === 0;
  }
}

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl = '', fetchImpl?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/$/, '');
    const impl = fetchImpl ?? (globalThis.fetch as FetchLike | undefined);
    if (!impl) {
      throw new Error('no fetch implementation available');
    }
    this.fetchImpl = impl;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchImpl(this.baseUrl + path, {
        method,
        headers: body === undefined ? undefined : { 'Content-Type': 'application/json' },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (cause) {
      throw new ApiError(0, 'network', String(cause));
    }
    if (!response.ok) {
      let envelope: Partial<ErrorEnvelope> = {};
      try {
        envelope = (await response.json()) as Partial<ErrorEnvelope>;
      } catch {
        // non-JSON error body; fall through with the status alone
      }
      throw new ApiError(
        response.status,
        envelope.error ?? `http_${response.status}`,
        envelope.detail ?? null,
      );
    }
    return (await response.json()) as T;
  }

  createSession(config?: SessionConfigBody): Promise<CreateSessionResponse> {
    const body = config === undefined ? {} : { config };
    return this.request('POST', '/api/sessions', body);
  }

  panel(sessionId: string): Promise<PanelResponse> {
    return this.request('GET', `/api/sessions/${sessionId}/panel`);
  }

  submitSelection(
    sessionId: string,
    iteration: number,
    selected: number[],
  ): Promise<SelectionResponse> {
    return this.request(
      'POST',
      `/api/sessions/${sessionId}/iterations/${iteration}/selection`,
      { selected },
    );
  }

  submitQuestionnaire(
    sessionId: string,
    body: QuestionnaireBody,
  ): Promise<QuestionnaireResponse> {
    return this.request('POST', `/api/sessions/${sessionId}/questionnaire`, body);
  }

  review(sessionId: string): Promise<ReviewResponse> {
    return this.request('GET', `/api/sessions/${sessionId}/review`);
  }

  catalog(): Promise<CatalogResponse> {
    return this.request('GET', '/api/catalog');
  }
}
