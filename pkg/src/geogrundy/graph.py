"""Board graphs, positions, removal masks, and the canonical wire format.

Vertices are dense integers ``0..n-1``.  Undirected boards are simple
(no self-loops, no parallel edges) and symmetric; directed boards keep a
sorted out-neighbour list per vertex.  Residual boards (the graph after
some vertices were burned by play) are always a ``(Position, VertexMask)``
pair; solvers never copy graphs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

MAX_VERTICES = 1 << 20


class GraphFormatError(ValueError):
    """A graph payload failed to parse or violates a structural invariant."""

    def __init__(self, message: str, line: int | None = None, offset: int | None = None):
        self.line = line
        self.offset = offset
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", offset {offset}" if offset is not None else "") + ")"
        super().__init__(message + where)


def _check_vertex_count(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise GraphFormatError(f"vertex count must be a non-negative integer, got {n!r}")
    if n > MAX_VERTICES:
        raise GraphFormatError(f"vertex count {n} exceeds the {MAX_VERTICES} limit")


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph with sorted adjacency lists."""

    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_edges(vertex_count: int, edges) -> Graph:
        _check_vertex_count(vertex_count)
        adj: list[list[int]] = [[] for _ in range(vertex_count)]
        seen: set[tuple[int, int]] = set()
        for e in edges:
            try:
                u, v = e
            except (TypeError, ValueError):
                raise GraphFormatError(f"edge {e!r} is not a pair") from None
            for w in (u, v):
                if not isinstance(w, int) or isinstance(w, bool) or not 0 <= w < vertex_count:
                    raise GraphFormatError(f"vertex {w!r} out of range [0, {vertex_count})")
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphFormatError(f"duplicate edge {key}")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        return Graph(vertex_count, tuple(tuple(sorted(nb)) for nb in adj))

    @cached_property
    def neighbor_bits(self) -> tuple[int, ...]:
        """Per-vertex neighbour set as a bitmask; the solvers' working form."""
        out = []
        for nb in self.adjacency:
            bits = 0
            for u in nb:
                bits |= 1 << u
            out.append(bits)
        return tuple(out)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def max_degree(self) -> int:
        return max((len(nb) for nb in self.adjacency), default=0)

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, lexicographically sorted."""
        return [(u, v) for u in range(self.vertex_count) for v in self.adjacency[u] if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(nb) for nb in self.adjacency) // 2

    def validate(self) -> None:
        """O(E) re-check of simplicity and symmetry; used by debug assertions."""
        for u, nb in enumerate(self.adjacency):
            assert list(nb) == sorted(set(nb)), f"adjacency of {u} not sorted/unique"
            for v in nb:
                assert 0 <= v < self.vertex_count, f"neighbour {v} out of range"
                assert v != u, f"self-loop at {u}"
                assert u in self.adjacency[v], f"edge {u}-{v} not symmetric"


@dataclass(frozen=True)
class Position:
    """An undirected board plus the token vertex."""

    graph: Graph
    token: int

    def __post_init__(self):
        if not 0 <= self.token < self.graph.vertex_count:
            raise GraphFormatError(f"token {self.token} out of range [0, {self.graph.vertex_count})")


@dataclass(frozen=True)
class DirectedGraph:
    """Directed board for Generalized Geography inputs."""

    vertex_count: int
    out_adjacency: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_arcs(vertex_count: int, arcs) -> DirectedGraph:
        _check_vertex_count(vertex_count)
        out: list[list[int]] = [[] for _ in range(vertex_count)]
        seen: set[tuple[int, int]] = set()
        for a in arcs:
            try:
                tail, head = a
            except (TypeError, ValueError):
                raise GraphFormatError(f"arc {a!r} is not a pair") from None
            for w in (tail, head):
                if not isinstance(w, int) or isinstance(w, bool) or not 0 <= w < vertex_count:
                    raise GraphFormatError(f"vertex {w!r} out of range [0, {vertex_count})")
            if tail == head:
                raise GraphFormatError(f"self-loop at vertex {tail}")
            if (tail, head) in seen:
                raise GraphFormatError(f"duplicate arc ({tail}, {head})")
            seen.add((tail, head))
            out[tail].append(head)
        return DirectedGraph(vertex_count, tuple(tuple(sorted(nb)) for nb in out))

    def arcs(self) -> list[tuple[int, int]]:
        """All arcs as (tail, head), lexicographically sorted."""
        return [(t, h) for t in range(self.vertex_count) for h in self.out_adjacency[t]]

    @property
    def arc_count(self) -> int:
        return sum(len(nb) for nb in self.out_adjacency)


@dataclass(frozen=True)
class DirectedPosition:
    graph: DirectedGraph
    token: int

    def __post_init__(self):
        if not 0 <= self.token < self.graph.vertex_count:
            raise GraphFormatError(f"token {self.token} out of range [0, {self.graph.vertex_count})")


@dataclass(frozen=True)
class VertexMask:
    """Set of removed (burned) vertices, as a bitmask.

    A live position's token is never removed; operations taking a mask
    treat a ``None`` mask as empty.
    """

    bits: int = 0

    @staticmethod
    def of(vertices) -> VertexMask:
        bits = 0
        for v in vertices:
            bits |= 1 << v
        return VertexMask(bits)

    def is_removed(self, v: int) -> bool:
        return bool(self.bits >> v & 1)

    def remove(self, v: int) -> VertexMask:
        return VertexMask(self.bits | 1 << v)

    def removed_vertices(self) -> list[int]:
        out, bits, v = [], self.bits, 0
        while bits:
            if bits & 1:
                out.append(v)
            bits >>= 1
            v += 1
        return out

    def __bool__(self) -> bool:
        return self.bits != 0


EMPTY_MASK = VertexMask(0)


def mask_bits(mask: VertexMask | int | None) -> int:
    if mask is None:
        return 0
    if isinstance(mask, VertexMask):
        return mask.bits
    return mask


def neighbors_alive(position: Position, mask: VertexMask | None = None) -> list[int]:
    """Live neighbours of the token, ascending; empty means terminal."""
    bits = mask_bits(mask)
    if bits >> position.token & 1:
        raise ValueError("token vertex is marked removed")
    return [u for u in position.graph.adjacency[position.token] if not bits >> u & 1]


def _parse_json(data: str) -> Position | DirectedPosition:
    try:
        payload = json.loads(data)
    except json.JSONDecodeError as e:
        raise GraphFormatError(f"malformed JSON: {e.msg}", line=e.lineno, offset=e.colno) from None
    if not isinstance(payload, dict):
        raise GraphFormatError("top-level JSON value must be an object")
    if "edges" in payload and "arcs" in payload:
        raise GraphFormatError("payload mixes 'edges' and 'arcs'")
    if "edges" not in payload and "arcs" not in payload:
        raise GraphFormatError("payload has neither 'edges' nor 'arcs'")
    for key in ("vertices", "token"):
        if key not in payload:
            raise GraphFormatError(f"missing key {key!r}")
    n = payload["vertices"]
    token = payload["token"]
    if "edges" in payload:
        g = Graph.from_edges(n, payload["edges"])
        return Position(g, _checked_token(token, n))
    dg = DirectedGraph.from_arcs(n, payload["arcs"])
    return DirectedPosition(dg, _checked_token(token, n))


def _checked_token(token, n: int) -> int:
    if not isinstance(token, int) or isinstance(token, bool) or not 0 <= token < n:
        raise GraphFormatError(f"token {token!r} out of range [0, {n})")
    return token


def _parse_edgelist(data: str) -> Position | DirectedPosition:
    lines = data.split("\n")
    if not lines or not lines[0].strip():
        raise GraphFormatError("empty edge-list input", line=1)
    head = lines[0].split()
    if len(head) != 3 or head[0] not in ("ug", "gg"):
        raise GraphFormatError("header must be 'ug <n> <token>' or 'gg <n> <token>'", line=1)
    try:
        n, token = int(head[1]), int(head[2])
    except ValueError:
        raise GraphFormatError("header counts must be integers", line=1) from None
    pairs: list[tuple[int, int]] = []
    for i, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        parts = raw.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected 'u v', got {raw.strip()!r}", line=i)
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphFormatError(f"non-integer vertex in {raw.strip()!r}", line=i) from None
    if head[0] == "ug":
        return Position(Graph.from_edges(n, pairs), _checked_token(token, n))
    return DirectedPosition(DirectedGraph.from_arcs(n, pairs), _checked_token(token, n))


def parse_graph(data: bytes | str, fmt: str = "json") -> Position | DirectedPosition:
    """Parse a board in the JSON or edge-list wire format.

    JSON undirected: ``{"vertices": n, "edges": [[u, v], ...], "token": t}``
    with ``u < v``; directed replaces ``"edges"`` with ``"arcs"`` holding
    ``[tail, head]`` pairs.  Edge-list starts with ``ug <n> <token>`` or
    ``gg <n> <token>`` followed by one ``u v`` pair per line.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise GraphFormatError(f"input is not UTF-8: {e.reason}", offset=e.start) from None
    if fmt == "json":
        return _parse_json(data)
    if fmt == "edgelist":
        return _parse_edgelist(data)
    raise ValueError(f"unknown format {fmt!r}")


def serialize_graph(position: Position | DirectedPosition) -> bytes:
    """Canonical JSON encoding; parse(serialize(p)) reproduces p bit-exactly."""
    if isinstance(position, Position):
        payload = {
            "vertices": position.graph.vertex_count,
            "edges": position.graph.edges(),
            "token": position.token,
        }
    else:
        payload = {
            "vertices": position.graph.vertex_count,
            "arcs": position.graph.arcs(),
            "token": position.token,
        }
    return json.dumps(payload, separators=(",", ":")).encode("utf-8") + b"\n"
