"""Incremental construction of labeled boards, shared by the generators."""

from __future__ import annotations

from .graph import Graph, Position


class GraphBuilder:
    """Accumulates vertices (with optional role labels) and edges."""

    def __init__(self):
        self.labels: dict[int, str] = {}
        self._edges: list[tuple[int, int]] = []
        self._count = 0

    def add_vertex(self, label: str | None = None) -> int:
        v = self._count
        self._count += 1
        if label is not None:
            self.labels[v] = label
        return v

    def add_edge(self, u: int, v: int) -> None:
        self._edges.append((u, v) if u < v else (v, u))

    def copy_position(self, position: Position, labels: dict[int, str] | None = None) -> list[int]:
        """Disjoint-union an existing board; returns new ids indexed by old."""
        offset = self._count
        g = position.graph
        ids = [self.add_vertex((labels or {}).get(v)) for v in range(g.vertex_count)]
        for u, v in g.edges():
            self.add_edge(offset + u, offset + v)
        return ids

    @property
    def vertex_count(self) -> int:
        return self._count

    def graph(self) -> Graph:
        return Graph.from_edges(self._count, self._edges)

    def position(self, token: int) -> Position:
        return Position(self.graph(), token)
