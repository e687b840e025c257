// SVG board rendering.  Display only: legality comes from the server's
// advertised move list, and clicking anything else is impossible because
// no handler is attached (the app layer double-checks before posting).

import { layoutBoard, type Point } from "./layout.js";
import { sameMove, type MoveRequest, type SessionView } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export type BoardModel = {
  vertices: number;
  edges: [number, number][];
  tokens: number[];
  removed: Set<number>;
};

/** Flatten the variant state into one displayable board, if it has one. */
export function boardModel(view: SessionView): BoardModel | null {
  const state = view.state;
  if (state.variant === "plain" || state.variant === "pass") {
    return {
      vertices: state.position.vertices,
      edges: state.position.edges,
      tokens: [state.position.token],
      removed: new Set(state.position.removed ?? []),
    };
  }
  if (state.variant === "multitoken") {
    return {
      vertices: state.graph.vertices,
      edges: state.graph.edges,
      tokens: state.tokens,
      removed: new Set(state.removed ?? []),
    };
  }
  return null;
}

/** Moves that target a board vertex, keyed by the vertex they move to. */
export function vertexMoves(view: SessionView, selectedToken: number | null): Map<number, MoveRequest> {
  const out = new Map<number, MoveRequest>();
  for (const move of view.legal_moves) {
    if (move.type === "traverse") {
      if (!out.has(move.to)) out.set(move.to, move);
    } else if (move.type === "multi_traverse") {
      const preferred = selectedToken === null || move.token_index === selectedToken;
      if (preferred && !out.has(move.to)) out.set(move.to, move);
    }
  }
  if (selectedToken !== null && out.size === 0) {
    // The selected token is stuck; fall back to every token's moves.
    return vertexMoves(view, null);
  }
  return out;
}

/** Moves rendered as buttons rather than board clicks (pass, swap, cards). */
export function buttonMoves(view: SessionView): { label: string; move: MoveRequest }[] {
  const out: { label: string; move: MoveRequest }[] = [];
  for (const move of view.legal_moves) {
    if (move.type === "pass") out.push({ label: "pass", move });
    else if (move.type === "swap") out.push({ label: "swap hands", move });
    else if (move.type === "uno_play")
      out.push({ label: `play color ${move.card.color} / rank ${move.card.rank}`, move });
    else if (move.type === "component_move")
      out.push({ label: `board ${move.component_index}: to ${move.to}`, move });
  }
  return out;
}

export type BoardCallbacks = {
  onMove(move: MoveRequest): void;
  onSelectToken(index: number): void;
  onHint(): void;
};

export type RenderOptions = {
  humanPlayer: 0 | 1;
  hint: MoveRequest | null;
  hintReason?: string;
  lastMove: MoveRequest | null;
  selectedToken: number | null;
  banner?: string | null;
};

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function statusLine(view: SessionView, humanPlayer: 0 | 1): string {
  if (view.terminal) {
    return view.winner === humanPlayer ? "you win" : `player ${view.winner} wins`;
  }
  const mover = view.to_move === humanPlayer ? "your move" : `player ${view.to_move} to move`;
  if (view.state.variant === "pass") {
    return `${mover} — passes left: ${view.state.passes}`;
  }
  return mover;
}

/**
 * Render one session view into the root element.
 *
 * Clickable vertices are exactly the targets of the server's legal move
 * list (empty while the AI is to move or the game is over); the hint
 * overlay marks the hinted target; pass/swap buttons appear only while
 * such a move is legal.
 */
export function renderSession(
  root: HTMLElement,
  view: SessionView,
  callbacks: BoardCallbacks,
  options: RenderOptions,
): void {
  const doc = root.ownerDocument;
  root.textContent = "";
  root.appendChild(el(doc, "div", "status", statusLine(view, options.humanPlayer)));
  if (options.banner) {
    root.appendChild(el(doc, "div", "banner", options.banner));
  }
  if (view.terminal) {
    const banner = el(doc, "div", "winner-banner", `game over — winner: player ${view.winner}`);
    banner.dataset.winner = String(view.winner);
    root.appendChild(banner);
  }

  const model = boardModel(view);
  const humanTurn = !view.terminal && view.to_move === options.humanPlayer;
  const targets = humanTurn ? vertexMoves(view, options.selectedToken) : new Map<number, MoveRequest>();

  if (model) {
    root.appendChild(
      drawBoard(doc, model, view, targets, callbacks, options),
    );
  } else {
    root.appendChild(el(doc, "div", "no-board", `variant ${view.variant} has no board view`));
  }

  const buttons = el(doc, "div", "special-moves");
  if (humanTurn) {
    for (const { label, move } of buttonMoves(view)) {
      const button = el(doc, "button", "special-move", label);
      button.dataset.move = JSON.stringify(move);
      if (options.hint && sameMove(options.hint, move)) button.classList.add("hint");
      button.addEventListener("click", () => callbacks.onMove(move));
      buttons.appendChild(button);
    }
  }
  root.appendChild(buttons);

  const hintButton = el(doc, "button", "hint-button", "hint");
  hintButton.disabled = !humanTurn;
  hintButton.addEventListener("click", () => callbacks.onHint());
  root.appendChild(hintButton);
  if (options.hint === null && options.hintReason) {
    root.appendChild(el(doc, "div", "hint-reason", `no hint: ${options.hintReason}`));
  }
}

function drawBoard(
  doc: Document,
  model: BoardModel,
  view: SessionView,
  targets: Map<number, MoveRequest>,
  callbacks: BoardCallbacks,
  options: RenderOptions,
): SVGSVGElement {
  const width = 640;
  const height = 420;
  const points: Point[] = layoutBoard(model.vertices, model.edges, width, height);
  const svg = doc.createElementNS(SVG_NS, "svg") as SVGSVGElement;
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("class", "board");

  for (const [u, v] of model.edges) {
    const line = doc.createElementNS(SVG_NS, "line");
    const pu = points[u]!;
    const pv = points[v]!;
    line.setAttribute("x1", String(pu.x));
    line.setAttribute("y1", String(pu.y));
    line.setAttribute("x2", String(pv.x));
    line.setAttribute("y2", String(pv.y));
    const dead = model.removed.has(u) || model.removed.has(v);
    line.setAttribute("class", dead ? "edge dead" : "edge");
    svg.appendChild(line);
  }

  const lastTarget =
    options.lastMove && (options.lastMove.type === "traverse" || options.lastMove.type === "multi_traverse")
      ? options.lastMove.to
      : null;
  const hintTarget =
    options.hint && (options.hint.type === "traverse" || options.hint.type === "multi_traverse")
      ? options.hint.to
      : null;

  for (let v = 0; v < model.vertices; v++) {
    const g = doc.createElementNS(SVG_NS, "g");
    const circle = doc.createElementNS(SVG_NS, "circle");
    const p = points[v]!;
    circle.setAttribute("cx", String(p.x));
    circle.setAttribute("cy", String(p.y));
    circle.setAttribute("r", "14");
    const classes = ["vertex"];
    const tokenIndex = model.tokens.indexOf(v);
    if (model.removed.has(v)) classes.push("removed");
    else if (tokenIndex >= 0) classes.push(`token token-${tokenIndex}`);
    else classes.push("empty");
    if (v === lastTarget) classes.push("last-move");
    if (v === hintTarget) classes.push("hint");
    const move = targets.get(v);
    if (move) classes.push("legal");
    if (options.selectedToken !== null && tokenIndex === options.selectedToken) {
      classes.push("selected");
    }
    circle.setAttribute("class", classes.join(" "));
    circle.dataset.vertex = String(v);
    if (move) {
      circle.addEventListener("click", () => callbacks.onMove(move));
    } else if (tokenIndex >= 0 && model.tokens.length > 1 && !view.terminal) {
      circle.addEventListener("click", () => callbacks.onSelectToken(tokenIndex));
    }
    g.appendChild(circle);
    const label = doc.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(p.x));
    label.setAttribute("y", String(p.y + 4));
    label.setAttribute("class", "vertex-label");
    label.textContent = String(v);
    g.appendChild(label);
    svg.appendChild(g);
  }
  return svg;
}
