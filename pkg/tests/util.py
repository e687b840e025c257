"""Shared generators for random and exhaustive board suites."""

from __future__ import annotations

import itertools
import random

from geogrundy.graph import DirectedGraph, DirectedPosition, Graph, Position


def graph_from_edge_bits(n: int, bits: int) -> Graph:
    pairs = list(itertools.combinations(range(n), 2))
    return Graph.from_edges(n, [pairs[i] for i in range(len(pairs)) if bits >> i & 1])


def all_graphs(n: int):
    """Every labeled simple graph on n vertices."""
    m = n * (n - 1) // 2
    for bits in range(1 << m):
        yield graph_from_edge_bits(n, bits)


def is_connected(graph: Graph) -> bool:
    n = graph.vertex_count
    if n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in graph.adjacency[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == n


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_max_degree_graph(rng: random.Random, n: int, dmax: int, tries: int | None = None) -> Graph:
    """Random graph where every degree stays at most dmax."""
    deg = [0] * n
    chosen: set[tuple[int, int]] = set()
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    budget = tries if tries is not None else len(pairs)
    for u, v in pairs[:budget]:
        if deg[u] < dmax and deg[v] < dmax and rng.random() < 0.7:
            chosen.add((u, v))
            deg[u] += 1
            deg[v] += 1
    return Graph.from_edges(n, sorted(chosen))


def random_position(rng: random.Random, graph: Graph) -> Position:
    return Position(graph, rng.randrange(graph.vertex_count))


def all_digraph_positions(max_vertices: int, max_arcs: int):
    """Every labeled directed position with the given size bounds."""
    for n in range(1, max_vertices + 1):
        arc_space = [(t, h) for t in range(n) for h in range(n) if t != h]
        for k in range(0, max_arcs + 1):
            for arcs in itertools.combinations(arc_space, k):
                dg = DirectedGraph.from_arcs(n, arcs)
                for s in range(n):
                    yield DirectedPosition(dg, s)
