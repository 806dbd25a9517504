// Typed client for the reviewfinder HTTP API. Mutations are sequenced: at
// most one is in flight, later ones queue behind it in call order.

import type {
  ApiErrorPayload,
  CandidatesPayload,
  PaperDetailsView,
  PaperNetworkPayload,
  ResearcherNetworkPayload,
  SearchResultView,
  SessionView,
  SettingsUpdate,
  SubstitutesPayload,
} from "./types";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly payload: ApiErrorPayload,
  ) {
    super(payload.message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private tail: Promise<unknown> = Promise.resolve();

  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(this.base + path, init);
    if (!response.ok) {
      let payload: ApiErrorPayload = { code: "http_error", message: response.statusText, details: {} };
      try {
        const parsed = await response.json();
        if (parsed && parsed.error) payload = parsed.error;
      } catch {
        // non-JSON error body; keep the generic payload
      }
      throw new ApiError(response.status, payload);
    }
    return response.json() as Promise<T>;
  }

  /** Serialize mutations: each starts only after the previous one settled. */
  private mutate<T>(method: string, path: string, body?: unknown): Promise<T> {
    const next = this.tail.then(
      () => this.request<T>(method, path, body),
      () => this.request<T>(method, path, body),
    );
    this.tail = next.catch(() => undefined);
    return next;
  }

  health(): Promise<{ status: string; papers: number; authors: number; citations: number }> {
    return this.request("GET", "/health");
  }

  searchPapers(q: string, sessionId?: string): Promise<{ results: SearchResultView[] }> {
    const params = new URLSearchParams({ q, limit: "10" });
    if (sessionId) params.set("session_id", sessionId);
    return this.request("GET", `/papers/search?${params}`);
  }

  searchAuthors(q: string): Promise<{ results: Array<{ author_id: string; name: string }> }> {
    const params = new URLSearchParams({ q, limit: "10" });
    return this.request("GET", `/authors/search?${params}`);
  }

  paperDetails(paperId: string): Promise<PaperDetailsView> {
    return this.request("GET", `/papers/${encodeURIComponent(paperId)}`);
  }

  createSession(sessionId?: string): Promise<SessionView> {
    return this.mutate("POST", "/sessions", sessionId ? { session_id: sessionId } : {});
  }

  getSession(sessionId: string): Promise<SessionView> {
    return this.request("GET", `/sessions/${sessionId}`);
  }

  addSeeds(sessionId: string, paperIds: string[]): Promise<SessionView> {
    return this.mutate("POST", `/sessions/${sessionId}/seeds`, { paper_ids: paperIds });
  }

  removeSeed(sessionId: string, paperId: string): Promise<SessionView> {
    return this.mutate("DELETE", `/sessions/${sessionId}/seeds/${encodeURIComponent(paperId)}`);
  }

  selectPaper(sessionId: string, paperId: string): Promise<SessionView> {
    return this.mutate("POST", `/sessions/${sessionId}/selected-papers/${encodeURIComponent(paperId)}`);
  }

  deselectPaper(sessionId: string, paperId: string): Promise<SessionView> {
    return this.mutate("DELETE", `/sessions/${sessionId}/selected-papers/${encodeURIComponent(paperId)}`);
  }

  setSubmittingAuthors(sessionId: string, authorIds: string[]): Promise<SessionView> {
    return this.mutate("PUT", `/sessions/${sessionId}/submitting-authors`, { author_ids: authorIds });
  }

  selectReviewer(sessionId: string, authorId: string): Promise<SessionView> {
    return this.mutate("POST", `/sessions/${sessionId}/reviewers/${encodeURIComponent(authorId)}`);
  }

  removeReviewer(sessionId: string, authorId: string): Promise<SessionView> {
    return this.mutate("DELETE", `/sessions/${sessionId}/reviewers/${encodeURIComponent(authorId)}`);
  }

  candidates(sessionId: string): Promise<CandidatesPayload> {
    return this.request("GET", `/sessions/${sessionId}/candidates`);
  }

  paperNetwork(sessionId: string): Promise<PaperNetworkPayload> {
    return this.request("GET", `/sessions/${sessionId}/paper-network`);
  }

  researcherNetwork(sessionId: string): Promise<ResearcherNetworkPayload> {
    return this.request("GET", `/sessions/${sessionId}/researcher-network`);
  }

  substitutes(sessionId: string, reviewerId: string): Promise<SubstitutesPayload> {
    return this.request("GET", `/sessions/${sessionId}/reviewers/${encodeURIComponent(reviewerId)}/substitutes`);
  }

  swapReviewer(sessionId: string, reviewerId: string, substituteId: string): Promise<SessionView> {
    return this.mutate("POST", `/sessions/${sessionId}/reviewers/${encodeURIComponent(reviewerId)}/swap`, {
      substitute_id: substituteId,
    });
  }

  exportJson(sessionId: string): Promise<unknown> {
    return this.request("GET", `/sessions/${sessionId}/export?format=json`);
  }

  exportText(sessionId: string): Promise<string> {
    return this.fetchImpl(`${this.base}/sessions/${sessionId}/export?format=text`).then(async (r) => {
      if (!r.ok) {
        const parsed = await r.json();
        throw new ApiError(r.status, parsed.error);
      }
      return r.text();
    });
  }

  updateSettings(sessionId: string, settings: SettingsUpdate): Promise<SessionView> {
    return this.mutate("PUT", `/sessions/${sessionId}/settings`, settings);
  }
}
