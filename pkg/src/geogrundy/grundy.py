"""Nimber algebra and the Grundy-value solvers.

Three routes to a Grundy value, from slow-and-universal to fast-and-narrow:

* ``exact_grundy``: memoized game-tree search over (removed-set, token)
  states, correct on any board but exponential in the worst case.
* ``grundy_bab``: the same exact value, but every node with at most two
  live options is resolved by winnability calls instead of expansion
  ("following the winning way"), so only genuinely branchy nodes branch.
* ``grundy_degree3``: the polynomial algorithm for boards of maximum
  degree three; O(n) winnability-oracle calls total.

``abstract_degree2_reduction`` generalizes the degree-≤2 step to any
impartial ruleset presented as option/winnability callbacks.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .graph import Position, VertexMask, mask_bits
from .matching import _blossom_mates, _matching_size


def mex(values: Iterable[int]) -> int:
    """Smallest non-negative integer absent from the set."""
    present = set(values)
    m = 0
    while m in present:
        m += 1
    return m


def nim_sum(a: int, b: int) -> int:
    """Grundy value of a disjunctive sum: bitwise xor of the parts."""
    return a ^ b


@dataclass(frozen=True)
class SolveBudget:
    """Bounds for the exponential solvers; exceeding either raises."""

    max_states: int = 50_000_000
    max_millis: int = 600_000

    def __post_init__(self):
        if self.max_states <= 0 or self.max_millis <= 0:
            raise ValueError("budget bounds must be positive")


class BudgetExceeded(RuntimeError):
    """Search hit its state or time budget before finishing.

    Never carries a partial answer; callers fall back or enlarge the budget.
    """

    def __init__(self, states_visited: int, reason: str):
        super().__init__(f"solve budget exceeded after {states_visited} states ({reason})")
        self.states_visited = states_visited
        self.reason = reason


class DegreeViolation(ValueError):
    """A vertex exceeds the degree bound required by the algorithm."""


class CallbackContractViolation(RuntimeError):
    """The winnability callback claimed Fuzzy but no Zero option exists."""


@dataclass
class SolveStats:
    """Optional instrumentation for the winnability-guided solvers."""

    winnability_calls: int = 0
    states: int = 0


def _mex_of_seen_bits(seen: int) -> int:
    m = 0
    while seen >> m & 1:
        m += 1
    return m


class GrundySolver:
    """Exact memoized Grundy evaluation over one graph.

    The memo key is the exact (removed-bitset, token) pair; sharing one
    solver across several start tokens or masks of the same graph reuses
    overlapping subgames.  Single-threaded use only.
    """

    def __init__(self, graph, budget: SolveBudget | None = None):
        self.adj = graph.neighbor_bits
        self.budget = budget or SolveBudget()
        self.memo: dict[int, int] = {}
        self.states = 0
        self._n = graph.vertex_count
        self._deadline = time.monotonic() + self.budget.max_millis / 1000.0

    def value(self, token: int, mask: VertexMask | int | None = None) -> int:
        removed = mask_bits(mask)
        if removed >> token & 1:
            raise ValueError("token vertex is marked removed")
        return self._rec(removed, token)

    def _rec(self, removed: int, token: int) -> int:
        key = removed * self._n + token
        memo = self.memo
        cached = memo.get(key)
        if cached is not None:
            return cached
        self.states += 1
        if self.states > self.budget.max_states:
            raise BudgetExceeded(self.states, "max_states")
        if not self.states & 0x3FF and time.monotonic() > self._deadline:
            raise BudgetExceeded(self.states, "max_millis")
        opts = self.adj[token] & ~removed
        if not opts:
            memo[key] = 0
            return 0
        child_removed = removed | 1 << token
        seen = 0
        while opts:
            low = opts & -opts
            seen |= 1 << self._rec(child_removed, low.bit_length() - 1)
            opts ^= low
        val = _mex_of_seen_bits(seen)
        memo[key] = val
        return val


def exact_grundy(
    position: Position,
    mask: VertexMask | None = None,
    budget: SolveBudget | None = None,
) -> int:
    """Exact Grundy value by memoized depth-first search."""
    return GrundySolver(position.graph, budget).value(position.token, mask)


class _WinnabilityOracle:
    """Matching-based winnability over one graph, with call counting."""

    def __init__(self, graph, stats: SolveStats | None):
        self.graph = graph
        self.adjacency = graph.adjacency
        self.all_bits = (1 << graph.vertex_count) - 1
        self.stats = stats

    def __call__(self, removed: int, token: int) -> bool:
        if self.stats is not None:
            self.stats.winnability_calls += 1
        alive = self.all_bits & ~removed
        mate = _blossom_mates(self.adjacency, alive)
        if mate[token] < 0:
            return False
        full = sum(1 for m in mate if m >= 0) // 2
        return full > _matching_size(self.adjacency, alive & ~(1 << token))


def _live_degrees_ok(graph, removed: int, limit: int) -> bool:
    adj = graph.neighbor_bits
    for v in range(graph.vertex_count):
        if removed >> v & 1:
            continue
        if (adj[v] & ~removed).bit_count() > limit:
            return False
    return True


def grundy_degree3(
    position: Position,
    mask: VertexMask | None = None,
    stats: SolveStats | None = None,
) -> int:
    """Polynomial Grundy value on boards of maximum live degree three.

    Degree-1 token: winnability decides 0 versus *.  Degree-2 token: test
    both children; [Fuzzy, Fuzzy] is 0, [Zero, Zero] is *, and a mixed pair
    recurses only into the Fuzzy child c, returning *(3 - c).  Degree-3
    token: mex over the three degree-≤2 child solves.  Total winnability
    calls are O(n).
    """
    g, t = position.graph, position.token
    removed = mask_bits(mask)
    if removed >> t & 1:
        raise ValueError("token vertex is marked removed")
    if not _live_degrees_ok(g, removed, 3):
        raise DegreeViolation("a live vertex has degree above three")
    winnable = _WinnabilityOracle(g, stats)
    adj = g.neighbor_bits

    def live_options(rem: int, v: int) -> list[int]:
        bits = adj[v] & ~rem
        out = []
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return out

    def solve_fuzzy(rem: int, v: int) -> int:
        # v is known Fuzzy with at most two live options; value is * or *2.
        opts = live_options(rem, v)
        nxt = rem | 1 << v
        if len(opts) == 1:
            # The only child must be Zero, else v would be Zero.
            return 1
        v1, v2 = opts
        if winnable(nxt, v1):
            child = solve_fuzzy(nxt, v1)
            assert child in (1, 2), "fuzzy degree-≤2 child out of {*, *2}"
            return 3 - child
        if not winnable(nxt, v2):
            return 1
        child = solve_fuzzy(nxt, v2)
        assert child in (1, 2), "fuzzy degree-≤2 child out of {*, *2}"
        return 3 - child

    def solve_low_degree(rem: int, v: int) -> int:
        # Entry point for a token with at most two live options.
        opts = live_options(rem, v)
        if not opts:
            return 0
        if len(opts) == 1:
            return 1 if winnable(rem, v) else 0
        v1, v2 = opts
        nxt = rem | 1 << v
        w1 = winnable(nxt, v1)
        w2 = winnable(nxt, v2)
        if w1 and w2:
            return 0
        if not w1 and not w2:
            return 1
        child = solve_fuzzy(nxt, v1 if w1 else v2)
        assert child in (1, 2), "fuzzy degree-≤2 child out of {*, *2}"
        return 3 - child

    opts = live_options(removed, t)
    if len(opts) <= 2:
        return solve_low_degree(removed, t)
    nxt = removed | 1 << t
    return mex(solve_low_degree(nxt, u) for u in opts)


def grundy_bab(
    position: Position,
    mask: VertexMask | None = None,
    budget: SolveBudget | None = None,
    delta: int = 2,
    stats: SolveStats | None = None,
) -> int:
    """Exact Grundy value on any board via winnability-pruned search.

    Nodes with at most ``delta`` (default two) live options are resolved by
    the following-the-winning-way case table, expanding at most the one
    Fuzzy child; branchier nodes expand fully.  The result always equals
    ``exact_grundy``; only the running time depends on the board.
    """
    g, t = position.graph, position.token
    removed = mask_bits(mask)
    if removed >> t & 1:
        raise ValueError("token vertex is marked removed")
    if delta < 1:
        raise ValueError("delta must be at least 1")
    budget = budget or SolveBudget()
    winnable = _WinnabilityOracle(g, stats)
    adj = g.neighbor_bits
    deadline = time.monotonic() + budget.max_millis / 1000.0
    counter = [0]

    def tick() -> None:
        counter[0] += 1
        if counter[0] > budget.max_states:
            raise BudgetExceeded(counter[0], "max_states")
        if not counter[0] & 0x3FF and time.monotonic() > deadline:
            raise BudgetExceeded(counter[0], "max_millis")

    def live_options(rem: int, v: int) -> list[int]:
        bits = adj[v] & ~rem
        out = []
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return out

    def solve(rem: int, v: int, known_fuzzy: bool) -> int:
        tick()
        opts = live_options(rem, v)
        if not opts:
            return 0
        nxt = rem | 1 << v
        if len(opts) <= min(delta, 2):
            if not known_fuzzy and not winnable(rem, v):
                return 0
            if len(opts) == 1:
                # Fuzzy with a single option: that option must be Zero.
                return 1
            v1, v2 = opts
            if winnable(nxt, v1):
                # v1 Fuzzy forces v2 Zero at a Fuzzy two-option node.
                return mex((0, solve(nxt, v1, True)))
            return mex((0, solve(nxt, v2, False)))
        vals = {solve(nxt, u, False) for u in opts}
        return mex(vals)

    if stats is not None:
        result = solve(removed, t, False)
        stats.states = counter[0]
        return result
    return solve(removed, t, False)


def abstract_degree2_reduction(
    root,
    options: Callable[[object], list],
    winnable: Callable[[object], bool],
) -> int:
    """Grundy value of any degree-2 impartial game from winnability alone.

    The game is given by callbacks: ``options`` enumerates the feasible
    moves of a state (at most two everywhere) and ``winnable`` decides the
    outcome class.  Uses O(height) winnability calls.
    """

    def solve(state, known_fuzzy: bool) -> int:
        opts = options(state)
        if len(opts) > 2:
            raise DegreeViolation(f"state has {len(opts)} options; degree-2 game required")
        if not opts:
            if known_fuzzy:
                raise CallbackContractViolation("oracle claimed Fuzzy on a terminal state")
            return 0
        if not known_fuzzy and not winnable(state):
            return 0
        flags = [winnable(o) for o in opts]
        if all(flags):
            raise CallbackContractViolation("oracle claimed Fuzzy but every option is Fuzzy")
        fuzzy = [o for o, w in zip(opts, flags) if w]
        if not fuzzy:
            return 1
        child = solve(fuzzy[0], True)
        if child not in (1, 2):
            raise CallbackContractViolation(f"fuzzy degree-2 child solved to *{child}")
        return 3 - child

    return solve(root, False)
