// Typed client for the service's JSON endpoints. The UI consumes these
// responses verbatim: scores are rendered exactly as received, never
// recomputed client-side.

export interface ScoredResult {
  id: string;
  kind: string;
  name?: string;
  overall: number;
  topical: number;
  social: number;
}

export interface SearchResponse {
  user: string;
  q: string;
  results: ScoredResult[];
}

export interface Suggestion {
  source: "history" | "trending";
  kind: "query" | "entity";
  text: string | null;
  entity: string | null;
  score: number;
}

export interface QsResponse {
  user: string;
  suggestions: Suggestion[];
}

export interface LeaderboardRow {
  user: string;
  score: number;
  rank: number;
  active: boolean;
}

export interface LeaderboardView {
  context: string | null;
  window: string;
  kind: string;
  design: string;
  rows: LeaderboardRow[];
}

export interface LeaderboardQuery {
  user: string;
  context: string;
  window: string;
  kind: string;
  design: string;
}

// Minimal fetch shape so tests can inject hand-rolled responses.
export interface ResponseLike {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}
export type FetchLike = (
  url: string,
  init?: { signal?: AbortSignal },
) => Promise<ResponseLike>;

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  suggestions(user: string, signal?: AbortSignal): Promise<QsResponse> {
    return this.get(`/qs?user=${encodeURIComponent(user)}`, signal);
  }

  autocomplete(user: string, q: string, limit = 10, signal?: AbortSignal): Promise<SearchResponse> {
    return this.get(
      `/qac?user=${encodeURIComponent(user)}&q=${encodeURIComponent(q)}&limit=${limit}`,
      signal,
    );
  }

  search(user: string, q: string, limit = 25): Promise<SearchResponse> {
    return this.get(
      `/search?user=${encodeURIComponent(user)}&q=${encodeURIComponent(q)}&limit=${limit}`,
    );
  }

  leaderboard(query: LeaderboardQuery): Promise<LeaderboardView> {
    const params = new URLSearchParams({
      user: query.user,
      context: query.context,
      window: query.window,
      kind: query.kind,
      design: query.design,
    });
    return this.get(`/leaderboard?${params.toString()}`);
  }

  private async get<T>(path: string, signal?: AbortSignal): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, signal ? { signal } : undefined);
    if (!response.ok) {
      throw new Error(`request failed with status ${response.status}`);
    }
    return (await response.json()) as T;
  }
}
