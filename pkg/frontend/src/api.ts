// Typed client for the play service; all game logic stays on the server.

import type {
  ApplyResult,
  HintResponse,
  MoveRequest,
  SessionView,
  VariantEnvelope,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class GameApi {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    const body = await response.json().catch(() => null);
    if (!response.ok) {
      const message =
        body && typeof body === "object" && "error" in body
          ? String((body as { error: { message: string } }).error.message)
          : `request failed with status ${response.status}`;
      throw new ApiError(response.status, message);
    }
    return body as T;
  }

  health(): Promise<{ status: string }> {
    return this.request("/api/health");
  }

  createGame(state: VariantEnvelope, aiPlayers: (0 | 1)[]): Promise<SessionView> {
    return this.request("/api/games", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ variant_state: state, ai_players: aiPlayers }),
    });
  }

  getGame(id: string): Promise<SessionView> {
    return this.request(`/api/games/${encodeURIComponent(id)}`);
  }

  postMove(id: string, move: MoveRequest): Promise<ApplyResult> {
    return this.request(`/api/games/${encodeURIComponent(id)}/moves`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ move }),
    });
  }

  hint(id: string): Promise<HintResponse> {
    return this.request(`/api/games/${encodeURIComponent(id)}/hint`);
  }
}
