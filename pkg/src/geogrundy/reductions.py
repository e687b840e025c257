"""Hardness-instance transformations between the geography rulesets.

``gg_to_ug`` compiles a directed board into an undirected one whose value
is * exactly on directed P-positions (each arc becomes a ten-edge gadget
enforcing one-way traversal; every original vertex gains a pendant
singleton).  ``add_prelude`` collapses the output range to {*, *2}.
``shift_nimber_chain`` and ``build_separation_instance`` lift a {*k-1, *k}
ambiguity to higher nimber pairs using the quadratic constructor's boards
as pendant value sources.  ``label_for_uno`` equips reduction outputs with
the (color, rank) card structure of Uncooperative Uno.
"""

from __future__ import annotations

from dataclasses import dataclass

from .build import GraphBuilder
from .constructor import build_nimber_position
from .graph import DirectedPosition, Graph, Position, mask_bits
from .variants import SwapUnoState


class InvalidRange(ValueError):
    """Chain or separation indices outside the construction's domain."""


class NotBipartite(ValueError):
    """The board has an odd cycle, so no Uno labeling can exist."""


class LabelingConflict(ValueError):
    """No valid Uno labeling exists; the board is outside the reduction image."""


@dataclass(frozen=True)
class ArcGadget:
    """Vertex ids of one directed-edge gadget; x and y are original vertices."""

    x: int
    a: int
    a0: int
    b: int
    c: int
    c0: int
    f: int
    d: int
    d0: int
    y: int

    def internal(self) -> tuple[int, ...]:
        return (self.a, self.a0, self.b, self.c, self.c0, self.f, self.d, self.d0)

    def edges(self) -> list[tuple[int, int]]:
        return [
            (self.x, self.a), (self.a, self.a0), (self.a, self.b),
            (self.b, self.c), (self.c, self.c0), (self.b, self.f),
            (self.c, self.d), (self.d, self.d0), (self.f, self.d),
            (self.d, self.y),
        ]


@dataclass(frozen=True)
class GadgetMap:
    """How gg_to_ug laid out its output: singleton ids and per-arc gadgets."""

    original_count: int
    singletons: dict[int, int]
    gadgets: dict[tuple[int, int], ArcGadget]


def gg_to_ug(position: DirectedPosition) -> tuple[Position, GadgetMap]:
    """Directed-to-undirected reduction: * iff the directed position is P.

    Every original vertex keeps its id and gains a pendant singleton; each
    arc (x, y) is replaced by the one-way gadget.  The output is bipartite
    when the input's underlying graph is, and planar when the input is.
    """
    n = position.graph.vertex_count
    b = GraphBuilder()
    for _ in range(n):
        b.add_vertex()
    singletons: dict[int, int] = {}
    for v in range(n):
        s = b.add_vertex("Singleton")
        singletons[v] = s
        b.add_edge(v, s)
    gadgets: dict[tuple[int, int], ArcGadget] = {}
    for x, y in position.graph.arcs():
        g = ArcGadget(
            x=x,
            a=b.add_vertex(), a0=b.add_vertex(),
            b=b.add_vertex(), c=b.add_vertex(), c0=b.add_vertex(),
            f=b.add_vertex(), d=b.add_vertex(), d0=b.add_vertex(),
            y=y,
        )
        for u, v in g.edges():
            b.add_edge(u, v)
        gadgets[(x, y)] = g
    return b.position(position.token), GadgetMap(n, singletons, gadgets)


def add_prelude(position: Position) -> Position:
    """Prefix the four-vertex prelude chain; the new token is its start.

    On gg_to_ug outputs this maps value * to * and everything else to *2.
    """
    b = GraphBuilder()
    ids = b.copy_position(position)
    start = b.add_vertex("start")
    start0 = b.add_vertex("start0")
    start2 = b.add_vertex("start2")
    start20 = b.add_vertex("start20")
    b.add_edge(start, start0)
    b.add_edge(start, start2)
    b.add_edge(start2, start20)
    b.add_edge(start2, ids[position.token])
    return b.position(start)


def _attach_value_gadgets(b: GraphBuilder, anchor: int, values) -> None:
    for val in values:
        sub = build_nimber_position(val)
        ids = b.copy_position(sub.position)
        b.add_edge(anchor, ids[sub.position.token])


def shift_nimber_chain(position: Position, from_k: int, to_k: int) -> Position:
    """Append chain vertices lifting a {*(from_k-1), *from_k} promise.

    Each new vertex v_i carries pendant boards of values 0..*(i-2) plus an
    edge to v_{i-1}; the output is *to_k iff the input was *from_k and
    *(to_k - 1) otherwise.
    """
    if from_k < 2 or to_k < from_k:
        raise InvalidRange(f"need to_k >= from_k >= 2, got from_k={from_k}, to_k={to_k}")
    if to_k == from_k:
        return position
    b = GraphBuilder()
    ids = b.copy_position(position)
    prev = ids[position.token]
    for i in range(from_k + 1, to_k + 1):
        v = b.add_vertex(f"chain{i}")
        b.add_edge(v, prev)
        _attach_value_gadgets(b, v, range(0, i - 1))
        prev = v
    return b.position(prev)


def build_separation_instance(position: Position, k: int, target_p: int) -> Position:
    """One hub vertex mapping a {*(k-1), *k} promise to {*k, *target_p}.

    The hub moves to pendant boards of every value 0..k-1 and k+1..target_p-1
    plus the old token; its value is *target_p iff the input was *k.
    """
    if k < 2 or target_p <= k:
        raise InvalidRange(f"need target_p > k >= 2, got k={k}, target_p={target_p}")
    b = GraphBuilder()
    ids = b.copy_position(position)
    hub = b.add_vertex("separation")
    b.add_edge(hub, ids[position.token])
    _attach_value_gadgets(b, hub, list(range(0, k)) + list(range(k + 1, target_p)))
    return b.position(hub)


def gg_winnable(position: DirectedPosition, mask=None) -> bool:
    """Plain memoized game-tree search for Generalized Geography (test oracle).

    No matching shortcut exists for directed boards; exponential in general,
    fine at desk scale.
    """
    out = position.graph.out_adjacency
    n = position.graph.vertex_count
    memo: dict[int, bool] = {}

    def rec(removed: int, token: int) -> bool:
        key = removed * n + token
        cached = memo.get(key)
        if cached is not None:
            return cached
        nxt = removed | 1 << token
        result = any(not rec(nxt, u) for u in out[token] if not removed >> u & 1)
        memo[key] = result
        return result

    removed0 = mask_bits(mask)
    if removed0 >> position.token & 1:
        raise ValueError("token vertex is marked removed")
    return rec(removed0, position.token)


@dataclass(frozen=True)
class UnoLabeling:
    """Card labels over the Uno-modified board H.

    ``position`` is the reduction output with the two gadget subdivisions
    applied; ``pairs[v]`` is vertex v's (color, rank) and ``side[v]`` its
    hand.  Cross-hand vertices are adjacent iff they share a coordinate.
    """

    position: Position
    pairs: tuple[tuple[int, int], ...]
    side: tuple[int, ...]

    def check_invariant(self) -> bool:
        adj = self.position.graph.neighbor_bits
        n = self.position.graph.vertex_count
        for u in range(n):
            for w in range(u + 1, n):
                if self.side[u] == self.side[w]:
                    continue
                shares = self.pairs[u][0] == self.pairs[w][0] or self.pairs[u][1] == self.pairs[w][1]
                if shares != bool(adj[u] >> w & 1):
                    return False
        return True


def _two_color(graph: Graph) -> list[int]:
    color = [-1] * graph.vertex_count
    for root in range(graph.vertex_count):
        if color[root] >= 0:
            continue
        color[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for u in graph.adjacency[v]:
                if color[u] < 0:
                    color[u] = color[v] ^ 1
                    stack.append(u)
                elif color[u] == color[v]:
                    raise NotBipartite(f"odd cycle through edge ({v}, {u})")
    return color


def _charge_arcs(arcs: list[tuple[int, int]], n: int) -> dict[int, int] | None:
    """Assign each arc a paying endpoint, at most one charge per vertex.

    Feasible iff every component of the arc multigraph has no more arcs
    than vertices (trees and unicyclic components); returns arc-index ->
    paying vertex, or None when infeasible.
    """
    incident: list[list[int]] = [[] for _ in range(n)]
    for idx, (x, y) in enumerate(arcs):
        incident[x].append(idx)
        incident[y].append(idx)
    deg = [len(edges) for edges in incident]
    alive_arc = [True] * len(arcs)
    charged: dict[int, int] = {}
    peel = [v for v in range(n) if deg[v] == 1]
    while peel:
        v = peel.pop()
        if deg[v] != 1:
            continue
        idx = next(i for i in incident[v] if alive_arc[i])
        alive_arc[idx] = False
        charged[idx] = v
        x, y = arcs[idx]
        for w in (x, y):
            deg[w] -= 1
            if deg[w] == 1:
                peel.append(w)
    # What remains is a union of cycles if and only if charging is feasible.
    for v in range(n):
        if deg[v] not in (0, 2):
            return None
    seen = [False] * len(arcs)
    for idx0 in range(len(arcs)):
        if not alive_arc[idx0] or seen[idx0]:
            continue
        # Walk the cycle, charging each arc to the vertex it leads into.
        idx, enter = idx0, arcs[idx0][0]
        while True:
            seen[idx] = True
            x, y = arcs[idx]
            nxt_vertex = y if enter == x else x
            charged[idx] = nxt_vertex
            nxt_idx = next(
                i for i in incident[nxt_vertex] if alive_arc[i] and not seen[i]
            ) if any(alive_arc[i] and not seen[i] for i in incident[nxt_vertex]) else None
            if nxt_idx is None:
                break
            idx, enter = nxt_idx, nxt_vertex
    return charged


class _SlotUnion:
    """Union-find over (vertex, channel) label slots."""

    def __init__(self, n: int):
        self.parent = list(range(2 * n))

    def find(self, slot: int) -> int:
        root = slot
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[slot] != root:
            self.parent[slot], slot = root, self.parent[slot]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def label_for_uno(position: Position, gmap: GadgetMap) -> UnoLabeling:
    """Card labels for the Uno image of a reduction output.

    Subdivides each gadget's b-f and f-d edges (the modification that makes
    the labeling possible), covers every edge of the result by a star of
    vertices sharing one coordinate, and assigns coordinates channel-wise.
    Raises ``NotBipartite`` on odd cycles and ``LabelingConflict`` when no
    valid labeling exists (the arc multigraph is too dense) or the position
    does not look like a reduction output.
    """
    _check_reduction_shape(position, gmap)
    arcs = sorted(gmap.gadgets)

    # Build H: subdivide b-f and f-d once each, per gadget.
    b = GraphBuilder()
    old = position.graph
    for _ in range(old.vertex_count):
        b.add_vertex()
    skip = set()
    for arc in arcs:
        g = gmap.gadgets[arc]
        skip.add((min(g.b, g.f), max(g.b, g.f)))
        skip.add((min(g.f, g.d), max(g.f, g.d)))
    for u, v in old.edges():
        if (u, v) not in skip:
            b.add_edge(u, v)
    subdivisions: dict[tuple[int, int], tuple[int, int]] = {}
    for arc in arcs:
        g = gmap.gadgets[arc]
        bf = b.add_vertex("bf")
        fd = b.add_vertex("fd")
        b.add_edge(g.b, bf)
        b.add_edge(bf, g.f)
        b.add_edge(g.f, fd)
        b.add_edge(fd, g.d)
        subdivisions[arc] = (bf, fd)
    h = b.position(position.token)
    side = _two_color(h.graph)

    charged = _charge_arcs(arcs, gmap.original_count)
    if charged is None:
        raise LabelingConflict(
            "an arc component has more arcs than vertices; no Uno labeling exists"
        )

    n = h.graph.vertex_count
    slots = _SlotUnion(n)

    def slot(v: int, channel: int) -> int:
        return 2 * v + channel

    def star(center: int, channel: int, leaves) -> None:
        for leaf in leaves:
            slots.union(slot(center, channel), slot(leaf, channel))

    # Every original vertex anchors its singleton (plus uncharged arc ends).
    for v in range(gmap.original_count):
        star(v, side[v], [gmap.singletons[v]])
    for idx, arc in enumerate(arcs):
        g = gmap.gadgets[arc]
        bf, fd = subdivisions[arc]
        cx = side[g.x]
        if charged[idx] == g.y:
            star(g.x, cx, [g.a])
            star(g.a, cx ^ 1, [g.a0, g.b])
            star(g.b, cx, [g.c, bf])
            star(g.c, cx ^ 1, [g.c0, g.d])
            star(g.d, cx, [fd, g.d0, g.y])
            star(g.f, cx ^ 1, [bf, fd])
        else:
            star(g.y, side[g.y], [g.d])
            star(g.d, cx, [g.c, fd, g.d0])
            star(g.c, cx ^ 1, [g.b, g.c0])
            star(g.b, cx, [g.a, bf])
            star(g.a, cx ^ 1, [g.x, g.a0])
            star(g.f, cx ^ 1, [bf, fd])

    class_ids: dict[int, int] = {}
    pairs = []
    for v in range(n):
        coords = []
        for channel in (0, 1):
            root = slots.find(slot(v, channel))
            if root not in class_ids:
                class_ids[root] = len(class_ids)
            coords.append(class_ids[root])
        pairs.append((coords[0], coords[1]))
    labeling = UnoLabeling(h, tuple(pairs), tuple(side))
    if not labeling.check_invariant():
        raise LabelingConflict("labeling verification failed; board outside the reduction image")
    return labeling


def _check_reduction_shape(position: Position, gmap: GadgetMap) -> None:
    expected = gmap.original_count + len(gmap.singletons) + 8 * len(gmap.gadgets)
    if position.graph.vertex_count != expected:
        raise LabelingConflict(
            f"vertex count {position.graph.vertex_count} does not match the "
            f"reduction shape ({expected})"
        )
    edges = set(position.graph.edges())
    want: set[tuple[int, int]] = set()
    for v, s in gmap.singletons.items():
        want.add((min(v, s), max(v, s)))
    for g in gmap.gadgets.values():
        for u, v in g.edges():
            want.add((min(u, v), max(u, v)))
    if edges != want:
        raise LabelingConflict("edge set does not match the reduction shape")


def uno_from_labeling(labeling: UnoLabeling) -> SwapUnoState:
    """Two Uno hands whose playability graph reproduces the labeled board."""
    hands: tuple[list, list] = ([], [])
    for v in range(labeling.position.graph.vertex_count):
        hands[labeling.side[v]].append(labeling.pairs[v])
    return SwapUnoState(hands=(tuple(hands[0]), tuple(hands[1])), top=None, swap_used=False)
