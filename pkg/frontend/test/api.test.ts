import { describe, expect, it } from "vitest";

import { ApiError, GameApi } from "../src/api.js";
import type { FetchLike } from "../src/api.js";

type Recorded = { url: string; init?: RequestInit };

function stubFetch(status: number, body: unknown, log: Recorded[]): FetchLike {
  return async (url, init) => {
    log.push({ url, init });
    return new Response(JSON.stringify(body), {
      status,
      headers: { "content-type": "application/json" },
    });
  };
}

describe("GameApi", () => {
  it("posts the variant state on create", async () => {
    const log: Recorded[] = [];
    const api = new GameApi("http://x", stubFetch(201, { id: "abc" }, log));
    const envelope = {
      variant: "plain" as const,
      position: { vertices: 2, edges: [[0, 1]] as [number, number][], token: 0 },
    };
    await api.createGame(envelope, [1]);
    expect(log).toHaveLength(1);
    expect(log[0]!.url).toBe("http://x/api/games");
    expect(JSON.parse(String(log[0]!.init?.body))).toEqual({
      variant_state: envelope,
      ai_players: [1],
    });
  });

  it("wraps moves in a move envelope", async () => {
    const log: Recorded[] = [];
    const api = new GameApi("", stubFetch(200, { session: {}, moves: [] }, log));
    await api.postMove("s1", { type: "traverse", to: 2 });
    expect(log[0]!.url).toBe("/api/games/s1/moves");
    expect(JSON.parse(String(log[0]!.init?.body))).toEqual({
      move: { type: "traverse", to: 2 },
    });
  });

  it("surfaces service errors with status and message", async () => {
    const log: Recorded[] = [];
    const api = new GameApi(
      "",
      stubFetch(409, { error: { code: 409, message: "illegal move" } }, log),
    );
    await expect(api.postMove("s1", { type: "pass" })).rejects.toThrowError(ApiError);
    await expect(api.postMove("s1", { type: "pass" })).rejects.toMatchObject({
      status: 409,
      message: "illegal move",
    });
  });

  it("escapes session ids in paths", async () => {
    const log: Recorded[] = [];
    const api = new GameApi("", stubFetch(200, { move: null, reason: "terminal" }, log));
    await api.hint("weird/id");
    expect(log[0]!.url).toBe("/api/games/weird%2Fid/hint");
  });
});
