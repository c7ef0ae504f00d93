"""Finite simple graphs (undirected, directed or mixed) with 1-indexed vertices.

Adjacency is kept as integer bitmasks: bit ``v`` of ``out_mask[u]`` is set when
``u -> v`` is traversable. Undirected edges set both directions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple


class GraphError(ValueError):
    """Raised for malformed graph input."""


class ParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class Edge(NamedTuple):
    u: int
    v: int
    directed: bool = False


def bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...]
    out_mask: tuple[int, ...] = field(repr=False, compare=False)
    in_mask: tuple[int, ...] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge | tuple]) -> "Graph":
        if n < 1:
            raise GraphError("graph needs at least one vertex")
        out = [0] * (n + 1)
        inn = [0] * (n + 1)
        seen_u: set[frozenset[int]] = set()
        seen_d: set[tuple[int, int]] = set()
        normalized = []
        for e in edges:
            e = Edge(*e)
            u, v = e.u, e.v
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphError(f"edge ({u}, {v}) out of range 1..{n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if e.directed:
                # an arc duplicates an undirected edge over the same pair as well
                if (u, v) in seen_d or frozenset((u, v)) in seen_u:
                    raise GraphError(f"duplicate edge ({u}, {v})")
                seen_d.add((u, v))
                out[u] |= 1 << v
                inn[v] |= 1 << u
            else:
                key = frozenset((u, v))
                if key in seen_u or (u, v) in seen_d or (v, u) in seen_d:
                    raise GraphError(f"duplicate edge {{{u}, {v}}}")
                seen_u.add(key)
                out[u] |= 1 << v
                out[v] |= 1 << u
                inn[u] |= 1 << v
                inn[v] |= 1 << u
            normalized.append(e)
        return cls(n, tuple(normalized), tuple(out), tuple(inn))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def e(self) -> int:
        return len(self.edges)

    @property
    def kind(self) -> str:
        """'U', 'D' or 'M' as used in the edge-list header."""
        directed = {e.directed for e in self.edges}
        if directed == {True}:
            return "D"
        if directed == {True, False}:
            return "M"
        return "U"

    @property
    def is_undirected(self) -> bool:
        return not any(e.directed for e in self.edges)

    def neighbors(self, v: int, direction: str = "out") -> frozenset[int]:
        """N+(v) for ``direction='out'``, N-(v) for ``'in'``."""
        if not 1 <= v <= self.n:
            raise GraphError(f"vertex {v} out of range 1..{self.n}")
        if direction == "out":
            return frozenset(bits(self.out_mask[v]))
        if direction == "in":
            return frozenset(bits(self.in_mask[v]))
        raise ValueError(f"direction must be 'in' or 'out', got {direction!r}")

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_mask[u] >> v & 1)

    def degree(self, v: int) -> int:
        """Number of edges incident with ``v``."""
        return sum(1 for e in self.edges if v in (e.u, e.v))

    @property
    def max_degree(self) -> int:
        if self.is_undirected:
            return max(self.out_mask[v].bit_count() for v in self.vertices)
        return max(
            max(self.out_mask[v].bit_count(), self.in_mask[v].bit_count())
            for v in self.vertices
        )

    def edge_set(self) -> frozenset:
        """Hashable canonical view of the edges (for equality checks)."""
        return frozenset(
            (e.u, e.v, True) if e.directed else (min(e.u, e.v), max(e.u, e.v), False)
            for e in self.edges
        )

    def same_as(self, other: "Graph") -> bool:
        return self.n == other.n and self.edge_set() == other.edge_set()


def is_connected(g: Graph) -> bool:
    """Weak connectivity: every vertex reachable from 1 ignoring directions."""
    seen = 1 << 1
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.out_mask[v] | g.in_mask[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen.bit_count() == g.n


# ---------------------------------------------------------------- edge list


def parse_edge_list(text: str) -> Graph:
    """Parse ``"<K> <n> <m>"`` followed by ``m`` edge lines; ``#`` starts a comment."""
    header = None
    header_line = 0
    edges: list[Edge] = []
    edge_lines: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 3 or parts[0] not in ("U", "D", "M"):
                raise ParseError(f"malformed header {line!r}", lineno)
            try:
                n, m = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(f"malformed header {line!r}", lineno) from None
            if n < 1 or m < 0:
                raise ParseError(f"bad sizes in header {line!r}", lineno)
            header = (parts[0], n, m)
            header_line = lineno
            continue
        kind, n, _ = header
        want = 3 if kind == "M" else 2
        if len(parts) != want:
            raise ParseError(f"expected {want} fields, got {len(parts)}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer vertex in {line!r}", lineno) from None
        if kind == "M":
            if parts[2] not in ("U", "D"):
                raise ParseError(f"edge kind must be U or D, got {parts[2]!r}", lineno)
            directed = parts[2] == "D"
        else:
            directed = kind == "D"
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"vertex out of range 1..{n}", lineno)
        edges.append(Edge(u, v, directed))
        edge_lines.append(lineno)
    if header is None:
        raise ParseError("missing header", 1)
    kind, n, m = header
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges, found {len(edges)}", header_line)
    # validate incrementally so errors point at the offending line
    for i, lineno in enumerate(edge_lines):
        try:
            Graph.from_edges(n, edges[: i + 1])
        except GraphError as exc:
            raise ParseError(str(exc), lineno) from None
    return Graph.from_edges(n, edges)


def serialize_edge_list(g: Graph) -> str:
    kind = g.kind
    lines = [f"{kind} {g.n} {g.e}"]
    for e in g.edges:
        if kind == "M":
            lines.append(f"{e.u} {e.v} {'D' if e.directed else 'U'}")
        else:
            lines.append(f"{e.u} {e.v}")
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------- graph6


def _pairs(n: int) -> list[tuple[int, int]]:
    # graph6 bit order: column-major upper triangle, (i, j) with i < j
    return [(i, j) for j in range(1, n) for i in range(j)]


def encode_graph6(g: Graph) -> str:
    if not g.is_undirected:
        raise GraphError("graph6 encodes undirected graphs only")
    n = g.n
    if n <= 62:
        out = [chr(n + 63)]
    elif n <= 258047:
        out = ["~"] + [chr(((n >> s) & 63) + 63) for s in (12, 6, 0)]
    else:
        raise GraphError("graph too large for graph6 encoder")
    bitstr = [
        1 if g.has_arc(i + 1, j + 1) else 0 for i, j in _pairs(n)
    ]
    bitstr += [0] * (-len(bitstr) % 6)
    for k in range(0, len(bitstr), 6):
        val = 0
        for b in bitstr[k : k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise ParseError("empty graph6 string")
    if any(not 63 <= ord(c) <= 126 for c in s):
        raise ParseError(f"invalid graph6 character in {s!r}")
    data = [ord(c) - 63 for c in s]
    if data[0] == 63:
        if len(data) < 4 or data[1] == 63:
            raise ParseError("unsupported or truncated graph6 size field")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        n = data[0]
        body = data[1:]
    if n < 1:
        raise ParseError("graph6 graph has no vertices")
    pairs = _pairs(n)
    need = -(-len(pairs) // 6)
    if len(body) != need:
        raise ParseError(f"graph6 payload has {len(body)} bytes, expected {need}")
    edges = []
    for idx, (i, j) in enumerate(pairs):
        byte, off = divmod(idx, 6)
        if body[byte] >> (5 - off) & 1:
            edges.append(Edge(i + 1, j + 1))
    return Graph.from_edges(n, edges)


# -------------------------------------------------------------- enumeration

MAX_ENUM_N = 7


def labeled_pairs(n: int) -> list[tuple[int, int]]:
    """Vertex pairs in lexicographic order; bit p of an edge mask selects pair p."""
    return list(combinations(range(1, n + 1), 2))


def graph_from_mask(n: int, mask: int, pairs: list[tuple[int, int]] | None = None) -> Graph:
    pairs = pairs if pairs is not None else labeled_pairs(n)
    return Graph.from_edges(n, [Edge(*pairs[p]) for p in bits(mask)])


def enumerate_connected_labeled(n: int, *, allow_large: bool = False) -> Iterator[Graph]:
    """Every connected labeled simple graph on ``n`` vertices, by ascending edge mask."""
    if n < 1:
        raise GraphError("n must be positive")
    if n > MAX_ENUM_N and not allow_large:
        raise GraphError(f"n={n} exceeds the enumeration guard ({MAX_ENUM_N}); pass allow_large")
    pairs = labeled_pairs(n)
    full = 1 << len(pairs)
    # cheap adjacency-mask connectivity test avoids building rejected graphs
    for mask in range(full):
        if mask.bit_count() < n - 1:
            continue
        adj = [0] * (n + 1)
        for p in bits(mask):
            a, b = pairs[p]
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        seen = frontier = 1 << 1
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        if seen.bit_count() == n:
            yield graph_from_mask(n, mask, pairs)
