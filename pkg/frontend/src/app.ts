// Session loop: clicks become move posts, AI replies and hints re-render.
// The client holds no rules engine; every legality decision is the server's.

import { ApiError, GameApi } from "./api.js";
import { renderSession, type BoardCallbacks } from "./board.js";
import { sameMove, type MoveRequest, type SessionView, type VariantEnvelope } from "./types.js";

export class PlayApp {
  view: SessionView | null = null;
  hint: MoveRequest | null = null;
  hintReason: string | undefined;
  lastMove: MoveRequest | null = null;
  selectedToken: number | null = null;
  banner: string | null = null;
  humanPlayer: 0 | 1 = 0;
  /** Moves this client actually posted; tests assert they were all legal. */
  readonly posted: MoveRequest[] = [];

  private pending: Promise<void> = Promise.resolve();

  constructor(
    private readonly root: HTMLElement,
    private readonly api: GameApi,
  ) {}

  /** Everything queued by click handlers has finished after this resolves. */
  settle(): Promise<void> {
    return this.pending;
  }

  private enqueue(task: () => Promise<void>): Promise<void> {
    this.pending = this.pending.then(task, task);
    return this.pending;
  }

  async start(state: VariantEnvelope, aiPlayer: 0 | 1 | null = 1): Promise<void> {
    this.humanPlayer = aiPlayer === 0 ? 1 : 0;
    const ai = aiPlayer === null ? [] : [aiPlayer];
    this.view = await this.api.createGame(state, ai as (0 | 1)[]);
    const history = this.view.history;
    this.lastMove = history.length ? history[history.length - 1]!.move : null;
    this.hint = null;
    this.hintReason = undefined;
    this.banner = null;
    this.selectedToken = null;
    this.render();
  }

  async refresh(): Promise<void> {
    if (!this.view) return;
    this.view = await this.api.getGame(this.view.id);
    this.render();
  }

  private callbacks(): BoardCallbacks {
    return {
      onMove: (move) => void this.enqueue(() => this.submit(move)),
      onSelectToken: (index) => {
        this.selectedToken = this.selectedToken === index ? null : index;
        this.render();
      },
      onHint: () => void this.enqueue(() => this.requestHint()),
    };
  }

  private async submit(move: MoveRequest): Promise<void> {
    const view = this.view;
    if (!view || view.terminal) return;
    // Client-side guard: never post a move the server did not advertise.
    if (!view.legal_moves.some((m) => sameMove(m, move))) {
      this.banner = "that move is not available";
      this.render();
      return;
    }
    try {
      this.posted.push(move);
      const result = await this.api.postMove(view.id, move);
      this.view = result.session;
      const applied = result.moves;
      this.lastMove = applied.length ? applied[applied.length - 1]!.move : move;
      this.hint = null;
      this.hintReason = undefined;
      this.banner = null;
      this.selectedToken = null;
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        // Stale view; the server is the source of truth.
        this.banner = `illegal move: ${error.message}`;
        await this.refresh();
        return;
      }
      this.banner = error instanceof Error ? error.message : "request failed";
    }
    this.render();
  }

  private async requestHint(): Promise<void> {
    const view = this.view;
    if (!view || view.terminal) return;
    try {
      const response = await this.api.hint(view.id);
      this.hint = response.move;
      this.hintReason = response.move === null ? response.reason : undefined;
    } catch (error) {
      this.banner = error instanceof Error ? error.message : "hint failed";
    }
    this.render();
  }

  render(): void {
    if (!this.view) return;
    renderSession(this.root, this.view, this.callbacks(), {
      humanPlayer: this.humanPlayer,
      hint: this.hint,
      hintReason: this.hintReason,
      lastMove: this.lastMove,
      selectedToken: this.selectedToken,
      banner: this.banner,
    });
  }
}
