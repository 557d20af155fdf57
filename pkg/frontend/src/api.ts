import type {
  AnswerPayload,
  DomainInfo,
  ErrorRow,
  PrecedentView,
  SessionView,
  SimilarResponse,
  StatsWindow,
} from './types';

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: string,
  ) {
    super(`${status}: ${detail}`);
  }
}

/** Thin typed client; the bearer token lives in memory only. */
export class ApiClient {
  constructor(
    private baseUrl: string,
    private token: string,
    private fetchFn: typeof fetch = (...args) => fetch(...args),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const res = await this.fetchFn(`${this.baseUrl}${path}`, {
      method,
      headers: {
        Authorization: `Bearer ${this.token}`,
        ...(body !== undefined ? { 'Content-Type': 'application/json' } : {}),
      },
      body: body !== undefined ? JSON.stringify(body) : undefined,
    });
    const text = await res.text();
    let parsed: unknown = null;
    try {
      parsed = text ? JSON.parse(text) : null;
    } catch {
      parsed = null;
    }
    if (!res.ok) {
      const detail =
        parsed && typeof parsed === 'object' && 'detail' in (parsed as Record<string, unknown>)
          ? String((parsed as Record<string, unknown>).detail)
          : res.statusText || 'request failed';
      throw new ApiError(res.status, detail);
    }
    return parsed as T;
  }

  getDomain(id: string): Promise<DomainInfo> {
    return this.request('GET', `/domains/${encodeURIComponent(id)}`);
  }

  createSession(req: {
    domain: string;
    solution: string;
    evidence: Record<string, unknown>;
    seed?: number;
  }): Promise<SessionView> {
    return this.request('POST', '/sessions', req);
  }

  getSession(id: string): Promise<SessionView> {
    return this.request('GET', `/sessions/${encodeURIComponent(id)}`);
  }

  getQuestion(id: string): Promise<{
    state: string;
    question: SessionView['pending_question'];
    finalize_prompt: string | null;
  }> {
    return this.request('GET', `/sessions/${encodeURIComponent(id)}/question`);
  }

  answer(sessionId: string, payload: AnswerPayload): Promise<SessionView> {
    return this.request('POST', `/sessions/${encodeURIComponent(sessionId)}/answer`, payload);
  }

  changeDecision(sessionId: string, solution: string): Promise<SessionView> {
    return this.request('POST', `/sessions/${encodeURIComponent(sessionId)}/decision`, {
      solution,
    });
  }

  finalize(
    sessionId: string,
    prognosis: string,
    solution: string,
  ): Promise<{ precedent_id: string; session: SessionView }> {
    return this.request('POST', `/sessions/${encodeURIComponent(sessionId)}/finalize`, {
      prognosis,
      solution,
    });
  }

  submitOutcome(
    precedentId: string,
    outcome: string,
    matchesPrognosis: boolean,
    discrepancyExplanation?: string,
  ): Promise<PrecedentView> {
    return this.request('POST', `/precedents/${encodeURIComponent(precedentId)}/outcome`, {
      outcome,
      matches_prognosis: matchesPrognosis,
      discrepancy_explanation: discrepancyExplanation,
    });
  }

  updateErrorExplanation(precedentId: string, text: string): Promise<PrecedentView> {
    return this.request(
      'PUT',
      `/precedents/${encodeURIComponent(precedentId)}/error-explanation`,
      { text },
    );
  }

  getErrors(userId: string, domain?: string): Promise<{ rows: ErrorRow[] }> {
    const q = domain ? `?domain=${encodeURIComponent(domain)}` : '';
    return this.request('GET', `/users/${encodeURIComponent(userId)}/errors${q}`);
  }

  getSimilar(userId: string, sessionId: string): Promise<SimilarResponse> {
    return this.request(
      'GET',
      `/users/${encodeURIComponent(userId)}/similar?session=${encodeURIComponent(sessionId)}`,
    );
  }

  getStats(userId: string, domain: string, windowDays = 30): Promise<{ windows: StatsWindow[] }> {
    return this.request(
      'GET',
      `/users/${encodeURIComponent(userId)}/stats?domain=${encodeURIComponent(domain)}&window_days=${windowDays}`,
    );
  }
}
