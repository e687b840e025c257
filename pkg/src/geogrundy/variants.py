"""Rulesets layered on the core game, behind one option-enumerator interface.

States are immutable tagged values; ``options`` enumerates legal successor
states (a state is terminal iff the list is empty), ``variant_grundy`` is
the exact memoized evaluator over that interface, and ``fast_variant_solve``
routes each variant to the cheapest sound method: matching winnability for
the plain game, pass-parity and sum laws where they apply, the degree-three
algorithm per component, and budgeted exact search as the fallback.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .graph import Graph, Position, VertexMask, mask_bits
from .grundy import BudgetExceeded, SolveBudget, exact_grundy, grundy_degree3, mex
from .matching import is_winnable

Card = tuple[int, int]


@dataclass(frozen=True)
class PlainState:
    position: Position
    mask: VertexMask = VertexMask(0)

    def __post_init__(self):
        if self.mask.is_removed(self.position.token):
            raise ValueError("token vertex is marked removed")


@dataclass(frozen=True)
class SumState:
    components: tuple[PlainState, ...]


@dataclass(frozen=True)
class PassState:
    position: Position
    passes_remaining: int
    mask: VertexMask = VertexMask(0)

    def __post_init__(self):
        if self.passes_remaining < 0:
            raise ValueError("passes_remaining must be non-negative")
        if self.mask.is_removed(self.position.token):
            raise ValueError("token vertex is marked removed")


@dataclass(frozen=True)
class MultiTokenState:
    graph: Graph
    tokens: tuple[int, ...]
    mask: VertexMask = VertexMask(0)

    def __post_init__(self):
        if len(set(self.tokens)) != len(self.tokens):
            raise ValueError("tokens must sit on pairwise distinct vertices")
        for t in self.tokens:
            if self.mask.is_removed(t):
                raise ValueError(f"token vertex {t} is marked removed")


@dataclass(frozen=True)
class SwapUnoState:
    """Hands from the mover's perspective; hands[0] belongs to the mover.

    A swap exchanges hands and consumes the turn, which leaves the pair
    unchanged from the new mover's perspective; only one swap is ever
    available to either player.
    """

    hands: tuple[tuple[Card, ...], tuple[Card, ...]]
    top: Card | None = None
    swap_used: bool = False


VariantState = PlainState | SumState | PassState | MultiTokenState | SwapUnoState


def _plain_moves(state: PlainState) -> list[PlainState]:
    g, t = state.position.graph, state.position.token
    bits = state.mask.bits
    nxt = VertexMask(bits | 1 << t)
    return [
        PlainState(Position(g, u), nxt)
        for u in g.adjacency[t]
        if not bits >> u & 1
    ]


def _playable(card: Card, top: Card | None) -> bool:
    return top is None or card[0] == top[0] or card[1] == top[1]


def options(state: VariantState) -> list[VariantState]:
    """Complete, duplicate-free successor list; terminal iff empty."""
    if isinstance(state, PlainState):
        return list(_plain_moves(state))
    if isinstance(state, SumState):
        out: list[VariantState] = []
        for i, comp in enumerate(state.components):
            for moved in _plain_moves(comp):
                out.append(SumState(state.components[:i] + (moved,) + state.components[i + 1:]))
        return out
    if isinstance(state, PassState):
        out = [
            PassState(m.position, state.passes_remaining, m.mask)
            for m in _plain_moves(PlainState(state.position, state.mask))
        ]
        if state.passes_remaining > 0:
            out.append(PassState(state.position, state.passes_remaining - 1, state.mask))
        return out
    if isinstance(state, MultiTokenState):
        g = state.graph
        bits = state.mask.bits
        occupied = set(state.tokens)
        out = []
        for i, t in enumerate(state.tokens):
            for u in g.adjacency[t]:
                if bits >> u & 1 or u in occupied:
                    continue
                tokens = state.tokens[:i] + (u,) + state.tokens[i + 1:]
                out.append(MultiTokenState(g, tokens, VertexMask(bits | 1 << t)))
        return out
    if isinstance(state, SwapUnoState):
        mover, other = state.hands
        out = []
        seen = set()
        for i, card in enumerate(mover):
            if card in seen or not _playable(card, state.top):
                continue
            seen.add(card)
            remaining = mover[:i] + mover[i + 1:]
            out.append(SwapUnoState((other, remaining), card, state.swap_used))
        if not state.swap_used:
            out.append(SwapUnoState(state.hands, state.top, True))
        return out
    raise TypeError(f"not a variant state: {state!r}")


def _canonical(state: VariantState):
    if isinstance(state, PlainState):
        return ("p", state.mask.bits, state.position.token)
    if isinstance(state, SumState):
        return ("s",) + tuple((c.mask.bits, c.position.token) for c in state.components)
    if isinstance(state, PassState):
        return ("k", state.mask.bits, state.position.token, state.passes_remaining)
    if isinstance(state, MultiTokenState):
        return ("m", state.mask.bits, tuple(sorted(state.tokens)))
    if isinstance(state, SwapUnoState):
        return ("u", tuple(sorted(state.hands[0])), tuple(sorted(state.hands[1])),
                state.top, state.swap_used)
    raise TypeError(f"not a variant state: {state!r}")


def variant_grundy(state: VariantState, budget: SolveBudget | None = None) -> int:
    """Exact memoized Grundy value of any variant state."""
    budget = budget or SolveBudget()
    memo: dict[object, int] = {}
    deadline = time.monotonic() + budget.max_millis / 1000.0
    counter = [0]

    def rec(s: VariantState) -> int:
        key = _canonical(s)
        cached = memo.get(key)
        if cached is not None:
            return cached
        counter[0] += 1
        if counter[0] > budget.max_states:
            raise BudgetExceeded(counter[0], "max_states")
        if not counter[0] & 0x3FF and time.monotonic() > deadline:
            raise BudgetExceeded(counter[0], "max_millis")
        value = mex(rec(o) for o in options(s))
        memo[key] = value
        return value

    return rec(state)


@dataclass(frozen=True)
class SolveOutcome:
    """What the fast path could determine; winnable=None means needs_nimber."""

    winnable: bool | None
    value: int | None
    method: str


def _live_max_degree(graph: Graph, bits: int) -> int:
    best = 0
    for v in range(graph.vertex_count):
        if bits >> v & 1:
            continue
        d = (graph.neighbor_bits[v] & ~bits).bit_count()
        if d > best:
            best = d
    return best


def _component_value(comp: PlainState, budget: SolveBudget) -> tuple[int, str] | None:
    if _live_max_degree(comp.position.graph, comp.mask.bits) <= 3:
        return grundy_degree3(comp.position, comp.mask), "degree3"
    try:
        return exact_grundy(comp.position, comp.mask, budget), "exact"
    except BudgetExceeded:
        return None


NEEDS_NIMBER = "needs_nimber"

_FAST_BUDGET = SolveBudget(max_states=500_000, max_millis=30_000)


def fast_variant_solve(state: VariantState, budget: SolveBudget | None = None) -> SolveOutcome:
    """Fastest sound answer for a variant state.

    Plain boards use the matching oracle (plus the degree-three value when
    the board qualifies); even pass budgets reduce to plain winnability;
    odd pass budgets, sums and Swap Uno need component nimbers, obtained
    per component by the degree-three algorithm or budgeted exact search.
    An unobtainable nimber yields the ``needs_nimber`` outcome rather than
    a guess.
    """
    budget = budget or _FAST_BUDGET
    if isinstance(state, PlainState):
        if _live_max_degree(state.position.graph, state.mask.bits) <= 3:
            v = grundy_degree3(state.position, state.mask)
            return SolveOutcome(v != 0, v, "matching+degree3")
        return SolveOutcome(is_winnable(state.position, state.mask), None, "matching")
    if isinstance(state, PassState):
        plain = PlainState(state.position, state.mask)
        parity = state.passes_remaining % 2
        if parity == 0:
            inner = fast_variant_solve(plain, budget)
            return SolveOutcome(inner.winnable, inner.value, inner.method)
        got = _component_value(plain, budget)
        if got is None:
            return SolveOutcome(None, None, NEEDS_NIMBER)
        v, how = got
        return SolveOutcome((v ^ 1) != 0, v ^ 1, f"{how}+pass-parity")
    if isinstance(state, SumState):
        total = 0
        methods = set()
        for comp in state.components:
            got = _component_value(comp, budget)
            if got is None:
                return SolveOutcome(None, None, NEEDS_NIMBER)
            v, how = got
            total ^= v
            methods.add(how)
        tag = "+".join(sorted(methods)) if methods else "empty"
        return SolveOutcome(total != 0, total, f"{tag}+xor")
    if isinstance(state, MultiTokenState):
        split = _split_multitoken(state)
        if split is not None:
            inner = fast_variant_solve(split, budget)
            return SolveOutcome(inner.winnable, inner.value, f"split+{inner.method}")
        try:
            v = variant_grundy(state, budget)
        except BudgetExceeded:
            return SolveOutcome(None, None, NEEDS_NIMBER)
        return SolveOutcome(v != 0, v, "exact")
    if isinstance(state, SwapUnoState):
        inner = fast_variant_solve(swap_uno_to_ug(state), budget)
        return SolveOutcome(inner.winnable, inner.value, f"uno+{inner.method}")
    raise TypeError(f"not a variant state: {state!r}")


def _split_multitoken(state: MultiTokenState) -> SumState | None:
    """Sum decomposition when each live component holds at most one token."""
    g = state.graph
    bits = state.mask.bits
    comp = [-1] * g.vertex_count
    label = 0
    for root in range(g.vertex_count):
        if bits >> root & 1 or comp[root] >= 0:
            continue
        stack = [root]
        comp[root] = label
        while stack:
            v = stack.pop()
            for u in g.adjacency[v]:
                if bits >> u & 1 or comp[u] >= 0:
                    continue
                comp[u] = label
                stack.append(u)
        label += 1
    seen = set()
    for t in state.tokens:
        if comp[t] in seen:
            return None
        seen.add(comp[t])
    return SumState(tuple(
        PlainState(Position(g, t), state.mask) for t in state.tokens
    ))


def swap_uno_to_ug(state: SwapUnoState) -> VariantState:
    """The bipartite geography image of a Swap Uno state.

    Cards become vertices on their hand's side with an edge when one can be
    played on the other; a fresh opening vertex adjacent to the mover's
    playable cards carries the token.  While the swap is unused the image
    is the disjunctive sum with a fresh single-edge board (the * the swap
    is worth); after a swap it is the plain board alone.
    """
    mover, other = state.hands
    n = 1 + len(mover) + len(other)
    edges = []
    for i, card in enumerate(mover):
        if _playable(card, state.top):
            edges.append((0, 1 + i))
    for i, mine in enumerate(mover):
        for j, theirs in enumerate(other):
            if mine[0] == theirs[0] or mine[1] == theirs[1]:
                edges.append((1 + i, 1 + len(mover) + j))
    board = PlainState(Position(Graph.from_edges(n, edges), 0))
    if state.swap_used:
        return board
    star = PlainState(Position(Graph.from_edges(2, [(0, 1)]), 0))
    return SumState((board, star))
