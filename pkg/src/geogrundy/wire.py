"""JSON envelopes for variant states and move requests.

The variant envelope is the shared wire format of the CLI and the HTTP
service: ``{"variant": "plain|sum|pass|multitoken|swapuno", ...}``.
Board payloads inside envelopes reuse the canonical graph JSON fields.
"""

from __future__ import annotations

from typing import Any

from .graph import Graph, GraphFormatError, Position, VertexMask
from .variants import (
    Card,
    MultiTokenState,
    PassState,
    PlainState,
    SumState,
    SwapUnoState,
    VariantState,
)

VARIANTS = ("plain", "sum", "pass", "multitoken", "swapuno")


def position_payload(position: Position, mask: VertexMask | None = None) -> dict:
    payload: dict[str, Any] = {
        "vertices": position.graph.vertex_count,
        "edges": [list(e) for e in position.graph.edges()],
        "token": position.token,
    }
    if mask is not None:
        payload["removed"] = mask.removed_vertices()
    return payload


def _position_from(payload, *, what: str) -> tuple[Position, VertexMask]:
    if not isinstance(payload, dict):
        raise GraphFormatError(f"{what} must be an object")
    for key in ("vertices", "edges", "token"):
        if key not in payload:
            raise GraphFormatError(f"{what} is missing {key!r}")
    g = Graph.from_edges(payload["vertices"], payload["edges"])
    token = payload["token"]
    if not isinstance(token, int) or not 0 <= token < g.vertex_count:
        # Well-formed payload, out-of-range value: an invariant violation.
        raise ValueError(f"{what} token {token!r} out of range")
    mask = _mask_from(payload.get("removed", []), g.vertex_count, what)
    return Position(g, token), mask


def _mask_from(removed, n: int, what: str) -> VertexMask:
    if not isinstance(removed, list):
        raise GraphFormatError(f"{what} 'removed' must be a list")
    for v in removed:
        if not isinstance(v, int) or not 0 <= v < n:
            raise ValueError(f"{what} removed vertex {v!r} out of range")
    return VertexMask.of(removed)


def _card_from(payload) -> Card:
    if not isinstance(payload, dict) or "color" not in payload or "rank" not in payload:
        raise GraphFormatError("a card must be {'color': int, 'rank': int}")
    color, rank = payload["color"], payload["rank"]
    if not isinstance(color, int) or not isinstance(rank, int):
        raise GraphFormatError("card color and rank must be integers")
    return (color, rank)


def card_payload(card: Card) -> dict:
    return {"color": card[0], "rank": card[1]}


def variant_state_from_json(payload) -> VariantState:
    """Decode a variant envelope; raises GraphFormatError on bad shapes."""
    if not isinstance(payload, dict):
        raise GraphFormatError("envelope must be an object")
    kind = payload.get("variant")
    if kind == "plain":
        pos, mask = _position_from(payload.get("position"), what="position")
        return PlainState(pos, mask)
    if kind == "sum":
        comps = payload.get("components")
        if not isinstance(comps, list):
            raise GraphFormatError("sum envelope needs a 'components' list")
        parts = []
        for i, comp in enumerate(comps):
            pos, mask = _position_from(comp, what=f"component {i}")
            parts.append(PlainState(pos, mask))
        return SumState(tuple(parts))
    if kind == "pass":
        pos, mask = _position_from(payload.get("position"), what="position")
        passes = payload.get("passes")
        if not isinstance(passes, int) or passes < 0:
            raise GraphFormatError("pass envelope needs a non-negative 'passes'")
        return PassState(pos, passes, mask)
    if kind == "multitoken":
        board = payload.get("graph")
        if not isinstance(board, dict) or "vertices" not in board or "edges" not in board:
            raise GraphFormatError("multitoken envelope needs a 'graph' object")
        g = Graph.from_edges(board["vertices"], board["edges"])
        tokens = payload.get("tokens")
        if not isinstance(tokens, list) or not tokens:
            raise GraphFormatError("multitoken envelope needs a non-empty 'tokens' list")
        for t in tokens:
            if not isinstance(t, int) or not 0 <= t < g.vertex_count:
                raise ValueError(f"token {t!r} out of range")
        mask = _mask_from(payload.get("removed", []), g.vertex_count, "multitoken")
        return MultiTokenState(g, tuple(tokens), mask)
    if kind == "swapuno":
        hands = payload.get("hands")
        if not isinstance(hands, list) or len(hands) != 2:
            raise GraphFormatError("swapuno envelope needs exactly two hands")
        h0 = tuple(_card_from(c) for c in hands[0])
        h1 = tuple(_card_from(c) for c in hands[1])
        top = payload.get("top")
        swap_used = payload.get("swap_used", False)
        if not isinstance(swap_used, bool):
            raise GraphFormatError("'swap_used' must be a boolean")
        return SwapUnoState((h0, h1), None if top is None else _card_from(top), swap_used)
    raise GraphFormatError(f"unknown variant {kind!r}; expected one of {VARIANTS}")


def variant_state_to_json(state: VariantState) -> dict:
    """Encode a variant state as its envelope."""
    if isinstance(state, PlainState):
        return {"variant": "plain", "position": position_payload(state.position, state.mask)}
    if isinstance(state, SumState):
        return {
            "variant": "sum",
            "components": [position_payload(c.position, c.mask) for c in state.components],
        }
    if isinstance(state, PassState):
        return {
            "variant": "pass",
            "position": position_payload(state.position, state.mask),
            "passes": state.passes_remaining,
        }
    if isinstance(state, MultiTokenState):
        return {
            "variant": "multitoken",
            "graph": {
                "vertices": state.graph.vertex_count,
                "edges": [list(e) for e in state.graph.edges()],
            },
            "tokens": list(state.tokens),
            "removed": state.mask.removed_vertices(),
        }
    if isinstance(state, SwapUnoState):
        return {
            "variant": "swapuno",
            "hands": [[card_payload(c) for c in hand] for hand in state.hands],
            "top": None if state.top is None else card_payload(state.top),
            "swap_used": state.swap_used,
        }
    raise TypeError(f"not a variant state: {state!r}")


def legal_moves(state: VariantState) -> list[tuple[dict, VariantState]]:
    """Move-request encodings paired with their successor states, in the
    same deterministic order as ``options``."""
    from . import variants

    if isinstance(state, PlainState):
        return [
            ({"type": "traverse", "to": o.position.token}, o)
            for o in variants.options(state)
        ]
    if isinstance(state, SumState):
        out = []
        for i, comp in enumerate(state.components):
            for moved in variants._plain_moves(comp):
                nxt = SumState(state.components[:i] + (moved,) + state.components[i + 1:])
                out.append(({"type": "component_move", "component_index": i,
                             "to": moved.position.token}, nxt))
        return out
    if isinstance(state, PassState):
        out = []
        for o in variants.options(state):
            if o.passes_remaining < state.passes_remaining:
                out.append(({"type": "pass"}, o))
            else:
                out.append(({"type": "traverse", "to": o.position.token}, o))
        return out
    if isinstance(state, MultiTokenState):
        out = []
        for i, t in enumerate(state.tokens):
            for u in state.graph.adjacency[t]:
                if state.mask.bits >> u & 1 or u in state.tokens:
                    continue
                tokens = state.tokens[:i] + (u,) + state.tokens[i + 1:]
                nxt = MultiTokenState(state.graph, tokens, state.mask.remove(t))
                out.append(({"type": "multi_traverse", "token_index": i, "to": u}, nxt))
        return out
    if isinstance(state, SwapUnoState):
        out = []
        for o in variants.options(state):
            if o.swap_used != state.swap_used:
                out.append(({"type": "swap"}, o))
            else:
                out.append(({"type": "uno_play", "card": card_payload(o.top)}, o))
        return out
    raise TypeError(f"not a variant state: {state!r}")


def variant_name(state: VariantState) -> str:
    if isinstance(state, PlainState):
        return "plain"
    if isinstance(state, SumState):
        return "sum"
    if isinstance(state, PassState):
        return "pass"
    if isinstance(state, MultiTokenState):
        return "multitoken"
    if isinstance(state, SwapUnoState):
        return "swapuno"
    raise TypeError(f"not a variant state: {state!r}")
