// Wire types mirroring the service's JSON schemas.

export type Card = { color: number; rank: number };

export type MoveRequest =
  | { type: "traverse"; to: number }
  | { type: "multi_traverse"; token_index: number; to: number }
  | { type: "pass" }
  | { type: "swap" }
  | { type: "component_move"; component_index: number; to: number }
  | { type: "uno_play"; card: Card };

export type PositionPayload = {
  vertices: number;
  edges: [number, number][];
  token: number;
  removed?: number[];
};

export type VariantEnvelope =
  | { variant: "plain"; position: PositionPayload }
  | { variant: "sum"; components: PositionPayload[] }
  | { variant: "pass"; position: PositionPayload; passes: number }
  | {
      variant: "multitoken";
      graph: { vertices: number; edges: [number, number][] };
      tokens: number[];
      removed?: number[];
    }
  | { variant: "swapuno"; hands: Card[][]; top: Card | null; swap_used: boolean };

export type HistoryEntry = {
  player: 0 | 1;
  move: MoveRequest;
  by: "human" | "ai";
  advice_quality?: "exact" | "heuristic";
};

export type SessionView = {
  id: string;
  variant: VariantEnvelope["variant"];
  state: VariantEnvelope;
  to_move: 0 | 1;
  terminal: boolean;
  winner: 0 | 1 | null;
  legal_moves: MoveRequest[];
  history: HistoryEntry[];
  ai_players: (0 | 1)[];
  created_at: number;
};

export type ApplyResult = { session: SessionView; moves: HistoryEntry[] };

export type HintResponse = {
  move: MoveRequest | null;
  reason: "winning move" | "no winning move" | "needs_nimber" | "terminal";
};

/** Structural equality for move requests (the payloads are tiny and flat). */
export function sameMove(a: MoveRequest, b: MoveRequest): boolean {
  if (a.type !== b.type) return false;
  switch (a.type) {
    case "traverse":
      return b.type === "traverse" && a.to === b.to;
    case "multi_traverse":
      return b.type === "multi_traverse" && a.to === b.to && a.token_index === b.token_index;
    case "component_move":
      return (
        b.type === "component_move" && a.to === b.to && a.component_index === b.component_index
      );
    case "uno_play":
      return b.type === "uno_play" && a.card.color === b.card.color && a.card.rank === b.card.rank;
    default:
      return true; // pass / swap carry no payload
  }
}
