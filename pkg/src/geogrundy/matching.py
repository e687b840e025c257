"""General-graph maximum matching and the matching-based winnability oracle.

``is_winnable`` decides Undirected Geography in polynomial time: with a
live edge present, the mover wins iff the token sits in every maximum
matching, which holds iff deleting the token shrinks the maximum matching.
``winning_move`` extracts the token's partner in a maximum matching; moving
there is always a winning move.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import Graph, Position, VertexMask, mask_bits


@dataclass(frozen=True)
class Matching:
    """Per-vertex partner table; ``-1`` marks unmatched vertices."""

    mate: tuple[int, ...]

    @property
    def size(self) -> int:
        return sum(1 for m in self.mate if m >= 0) // 2

    def partner(self, v: int) -> int | None:
        m = self.mate[v]
        return None if m < 0 else m

    def pairs(self) -> list[tuple[int, int]]:
        return [(u, m) for u, m in enumerate(self.mate) if m > u]

    def is_valid_for(self, graph: Graph, mask: VertexMask | None = None) -> bool:
        """Independent certificate check: matched pairs are live edges, mutual."""
        bits = mask_bits(mask)
        for u, m in enumerate(self.mate):
            if m < 0:
                continue
            if bits >> u & 1 or bits >> m & 1:
                return False
            if self.mate[m] != u or u == m:
                return False
            if m not in graph.adjacency[u]:
                return False
        return True


def _live_bits(graph: Graph, mask: VertexMask | int | None) -> int:
    return ((1 << graph.vertex_count) - 1) & ~mask_bits(mask)


def _blossom_mates(adjacency, alive: int) -> list[int]:
    """Edmonds' blossom algorithm restricted to the ``alive`` vertex set."""
    n = len(adjacency)
    mate = [-1] * n

    # Greedy seed matching; augmentation phases below only fix what is left.
    for v in range(n):
        if alive >> v & 1 and mate[v] < 0:
            for u in adjacency[v]:
                if alive >> u & 1 and mate[u] < 0:
                    mate[v] = u
                    mate[u] = v
                    break

    p = [-1] * n
    base = list(range(n))

    def lca(a: int, b: int) -> int:
        used = set()
        x = a
        while True:
            x = base[x]
            used.add(x)
            if mate[x] < 0:
                break
            x = p[mate[x]]
        y = b
        while True:
            y = base[y]
            if y in used:
                return y
            y = p[mate[y]]

    def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = True
            blossom[base[mate[v]]] = True
            p[v] = child
            child = mate[v]
            v = p[mate[v]]

    def find_augmenting(root: int) -> int:
        for i in range(n):
            p[i] = -1
            base[i] = i
        used = [False] * n
        used[root] = True
        q = deque([root])
        while q:
            v = q.popleft()
            for to in adjacency[v]:
                if not alive >> to & 1:
                    continue
                if base[v] == base[to] or mate[v] == to:
                    continue
                if to == root or (mate[to] >= 0 and p[mate[to]] >= 0):
                    curbase = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, curbase, to, blossom)
                    mark_path(to, curbase, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = curbase
                            if not used[i]:
                                used[i] = True
                                q.append(i)
                elif p[to] < 0:
                    p[to] = v
                    if mate[to] < 0:
                        return to
                    used[mate[to]] = True
                    q.append(mate[to])
        return -1

    for root in range(n):
        if alive >> root & 1 and mate[root] < 0:
            v = find_augmenting(root)
            while v >= 0:
                pv = p[v]
                ppv = mate[pv]
                mate[v] = pv
                mate[pv] = v
                v = ppv

    return mate


def maximum_matching(graph: Graph, mask: VertexMask | None = None) -> Matching:
    """Maximum-cardinality matching on the live subgraph."""
    return Matching(tuple(_blossom_mates(graph.adjacency, _live_bits(graph, mask))))


def _matching_size(adjacency, alive: int) -> int:
    return sum(1 for m in _blossom_mates(adjacency, alive) if m >= 0) // 2


def is_winnable(position: Position, mask: VertexMask | None = None) -> bool:
    """True iff the mover at the token wins, via the matching characterization.

    A terminal token (no live edge from it, or no live edge at all) is a loss.
    """
    g, t = position.graph, position.token
    alive = _live_bits(g, mask)
    if not alive >> t & 1:
        raise ValueError("token vertex is marked removed")
    mate = _blossom_mates(g.adjacency, alive)
    if mate[t] < 0:
        # Some maximum matching misses the token, so not every one contains it.
        return False
    full = sum(1 for m in mate if m >= 0) // 2
    without = _matching_size(g.adjacency, alive & ~(1 << t))
    return full > without


def winning_move(position: Position, mask: VertexMask | None = None) -> int | None:
    """The token's matching partner when winnable, else ``None``.

    Any maximum matching contains the token on winnable positions, and
    moving to its partner leaves the opponent a losing position.
    """
    g, t = position.graph, position.token
    alive = _live_bits(g, mask)
    if not alive >> t & 1:
        raise ValueError("token vertex is marked removed")
    mate = _blossom_mates(g.adjacency, alive)
    if mate[t] < 0:
        return None
    full = sum(1 for m in mate if m >= 0) // 2
    if full <= _matching_size(g.adjacency, alive & ~(1 << t)):
        return None
    return mate[t]
