"""Game sessions and the HTTP/JSON play service.

Sessions live in memory (optionally snapshotted to a directory as JSON)
and are mutated under a per-session lock; solver work runs on immutable
state snapshots outside the lock.  The terminal ``play`` loop and the
FastAPI app drive the same handler functions so CLI and HTTP behaviour
cannot diverge.
"""

from __future__ import annotations

import json
import os
import threading
import time
import uuid
from dataclasses import dataclass, field

from .graph import GraphFormatError
from .grundy import SolveBudget
from .matching import winning_move
from .variants import PlainState, SolveOutcome, VariantState, fast_variant_solve
from .wire import legal_moves, variant_name, variant_state_from_json, variant_state_to_json


class ServiceError(Exception):
    """Domain error with an HTTP status code."""

    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status
        self.message = message


@dataclass
class GameSession:
    id: str
    initial: VariantState
    state: VariantState
    to_move: int
    history: list[dict] = field(default_factory=list)
    ai_players: set[int] = field(default_factory=set)
    created_at: float = field(default_factory=time.time)
    version: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def terminal(self) -> bool:
        return not legal_moves(self.state)

    @property
    def winner(self) -> int | None:
        # Normal play: whoever cannot move has lost.
        return 1 - self.to_move if self.terminal else None


class SessionStore:
    """In-memory session table with optional JSON snapshots."""

    def __init__(self, snapshot_dir: str | None = None):
        self.snapshot_dir = snapshot_dir
        self._sessions: dict[str, GameSession] = {}
        self._lock = threading.Lock()
        if snapshot_dir:
            os.makedirs(snapshot_dir, exist_ok=True)

    def add(self, session: GameSession) -> None:
        with self._lock:
            self._sessions[session.id] = session
        self._snapshot(session)

    def get(self, session_id: str) -> GameSession:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            session = self._restore(session_id)
        if session is None:
            raise ServiceError(404, f"unknown session {session_id!r}")
        return session

    def _snapshot(self, session: GameSession) -> None:
        if not self.snapshot_dir:
            return
        payload = {
            "id": session.id,
            "initial": variant_state_to_json(session.initial),
            "history": session.history,
            "ai_players": sorted(session.ai_players),
            "created_at": session.created_at,
        }
        path = os.path.join(self.snapshot_dir, f"{session.id}.json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh)

    def _restore(self, session_id: str) -> GameSession | None:
        if not self.snapshot_dir:
            return None
        path = os.path.join(self.snapshot_dir, f"{session_id}.json")
        if not os.path.exists(path):
            return None
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
        session = GameSession(
            id=payload["id"],
            initial=variant_state_from_json(payload["initial"]),
            state=variant_state_from_json(payload["initial"]),
            to_move=0,
            ai_players=set(payload.get("ai_players", [])),
            created_at=payload.get("created_at", time.time()),
        )
        for entry in payload.get("history", []):
            state = _apply_request(session.state, entry["move"])
            session.state = state
            session.history.append(entry)
            session.to_move = 1 - session.to_move
        with self._lock:
            self._sessions[session.id] = session
        return session


def _apply_request(state: VariantState, request: dict) -> VariantState:
    for encoded, nxt in legal_moves(state):
        if encoded == request:
            return nxt
    raise ServiceError(409, f"illegal move {request!r}")


def session_view(session: GameSession) -> dict:
    return {
        "id": session.id,
        "variant": variant_name(session.state),
        "state": variant_state_to_json(session.state),
        "to_move": session.to_move,
        "terminal": session.terminal,
        "winner": session.winner,
        "legal_moves": [m for m, _ in legal_moves(session.state)],
        "history": list(session.history),
        "ai_players": sorted(session.ai_players),
        "created_at": session.created_at,
    }


def create_session(store: SessionStore, payload: dict) -> GameSession:
    if not isinstance(payload, dict):
        raise ServiceError(400, "request body must be a JSON object")
    ai_players = payload.get("ai_players", [])
    if not isinstance(ai_players, list) or any(p not in (0, 1) for p in ai_players):
        raise ServiceError(422, "ai_players must be a list drawn from [0, 1]")
    try:
        state = variant_state_from_json(payload.get("variant_state"))
    except GraphFormatError as e:
        raise ServiceError(400, f"malformed variant state: {e}") from None
    except ValueError as e:
        raise ServiceError(422, f"invariant violation: {e}") from None
    session = GameSession(
        id=uuid.uuid4().hex,
        initial=state,
        state=state,
        to_move=0,
        ai_players=set(ai_players),
    )
    store.add(session)
    return session


def choose_ai_move(state: VariantState, budget: SolveBudget | None = None) -> tuple[dict, str]:
    """A move request plus an advice-quality tag for the current state.

    Prefers a move to a value-0 child (certainly winning); on a lost
    position any move is as good as any other; when the fast solver cannot
    classify the children the first legal move ships with a heuristic flag.
    """
    moves = legal_moves(state)
    if not moves:
        raise ServiceError(409, "no legal moves")
    hinted, reason = hint_move(state, budget)
    if hinted is not None:
        return hinted, "exact"
    if reason == "no winning move":
        return moves[0][0], "exact"
    return moves[0][0], "heuristic"


def hint_move(state: VariantState, budget: SolveBudget | None = None) -> tuple[dict | None, str]:
    """A move to a value-0 child if one exists and is computable.

    Returns (move, reason); move is None when the position is lost
    ("no winning move") or unclassifiable under budget ("needs_nimber").
    """
    moves = legal_moves(state)
    if not moves:
        return None, "terminal"
    if isinstance(state, PlainState):
        target = winning_move(state.position, state.mask)
        if target is None:
            return None, "no winning move"
        for encoded, _ in moves:
            if encoded.get("to") == target:
                return encoded, "winning move"
        return None, "no winning move"
    unknown = False
    for encoded, child in moves:
        outcome: SolveOutcome = fast_variant_solve(child, budget)
        if outcome.winnable is False:
            return encoded, "winning move"
        if outcome.winnable is None:
            unknown = True
    return (None, "needs_nimber") if unknown else (None, "no winning move")


def apply_move(store: SessionStore, session_id: str, request: dict,
               budget: SolveBudget | None = None) -> dict:
    """Apply one move; AI replies (when configured) are played in turn."""
    session = store.get(session_id)
    with session.lock:
        state = _apply_request(session.state, request)
        entry = {"player": session.to_move, "move": request, "by": "human"}
        session.state = state
        session.to_move = 1 - session.to_move
        session.history.append(entry)
        session.version += 1
    store._snapshot(session)
    result = advance_ai(store, session_id, budget)
    result["moves"] = [entry] + result["moves"]
    return result


def advance_ai(store: SessionStore, session_id: str,
               budget: SolveBudget | None = None) -> dict:
    """Play AI moves while it is an AI player's turn."""
    session = store.get(session_id)
    applied: list[dict] = []
    while True:
        with session.lock:
            version = session.version
            snapshot = session.state
            next_player = session.to_move
        if next_player not in session.ai_players or not legal_moves(snapshot):
            break
        # Solver work happens on the immutable snapshot, outside the lock.
        move, quality = choose_ai_move(snapshot, budget)
        with session.lock:
            if session.version != version:
                break  # concurrent mutation; the client refetches
            state = _apply_request(session.state, move)
            entry = {"player": session.to_move, "move": move, "by": "ai",
                     "advice_quality": quality}
            session.state = state
            session.to_move = 1 - session.to_move
            session.history.append(entry)
            session.version += 1
            applied.append(entry)
        store._snapshot(session)
    return {"session": session_view(session), "moves": applied}


def hint(store: SessionStore, session_id: str, budget: SolveBudget | None = None) -> dict:
    session = store.get(session_id)
    move, reason = hint_move(session.state, budget)
    return {"move": move, "reason": reason}


def create_app(store: SessionStore | None = None):
    """FastAPI application exposing the session API (and optional UI)."""
    from .webapp import build_app

    return build_app(store)
