"""Layered path hologram built from an original graph.

Vertex ``(u, k)`` is original vertex ``u`` replicated on segment level ``k``.
Level 0 and level ``L = n`` hold only the start vertex (the initial vertex
``S`` and the final vertex ``D``); every other vertex appears on levels
``1 .. L-1``. Arcs only ever join level ``k`` to level ``k + 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .graph import Graph, GraphError, bits, is_connected

HVertex = tuple[int, int]


@dataclass(frozen=True)
class Hologram:
    L: int
    s: int
    # parents[k][u]: bitmask of v with arc (v, k-1) -> (u, k); children mirrors it
    parents: tuple[tuple[int, ...], ...]
    children: tuple[tuple[int, ...], ...]

    @property
    def S(self) -> HVertex:
        return (self.s, 0)

    @property
    def D(self) -> HVertex:
        return (self.s, self.L)

    @property
    def n(self) -> int:
        return self.L

    def level(self, k: int) -> list[int]:
        """Original vertices materialized on level ``k``, ascending."""
        if k == 0 or k == self.L:
            return [self.s]
        return [u for u in range(1, self.L + 1) if u != self.s]

    def vertices(self) -> Iterator[HVertex]:
        for k in range(self.L + 1):
            for u in self.level(k):
                yield (u, k)

    def __contains__(self, hv: HVertex) -> bool:
        u, k = hv
        if not (0 <= k <= self.L and 1 <= u <= self.L):
            return False
        return (u == self.s) == (k in (0, self.L))

    def parent_mask(self, hv: HVertex) -> int:
        u, k = hv
        if k == 0:
            return 0
        return self.parents[k][u]

    def child_mask(self, hv: HVertex) -> int:
        u, k = hv
        if k == self.L:
            return 0
        return self.children[k][u]

    def edges(self) -> Iterator[tuple[HVertex, HVertex]]:
        """Arcs ordered by source level, source id, target id."""
        for k in range(self.L):
            for u in self.level(k):
                for w in bits(self.children[k][u]):
                    yield (u, k), (w, k + 1)

    @property
    def num_vertices(self) -> int:
        return sum(len(self.level(k)) for k in range(self.L + 1))

    @property
    def num_edges(self) -> int:
        return sum(self.children[k][u].bit_count() for k in range(self.L) for u in self.level(k))


def build_hologram(g: Graph, start: int = 1, *, allow_disconnected: bool = False) -> Hologram:
    n = g.n
    if not 1 <= start <= n:
        raise GraphError(f"start vertex {start} out of range 1..{n}")
    if not allow_disconnected and not is_connected(g):
        raise GraphError("graph is not connected")
    L = n
    par = [[0] * (n + 1) for _ in range(L + 1)]
    chi = [[0] * (n + 1) for _ in range(L + 1)]

    def arc(u: int, k: int, v: int) -> None:
        chi[k][u] |= 1 << v
        par[k + 1][v] |= 1 << u

    s = start
    if L >= 2:
        for w in bits(g.out_mask[s]):
            arc(s, 0, w)
        for w in bits(g.in_mask[s]):
            arc(w, L - 1, s)
    for a in range(1, n + 1):
        if a == s:
            continue
        for b in bits(g.out_mask[a] & ~(1 << s)):
            for k in range(1, L - 1):
                arc(a, k, b)
    return Hologram(
        L=L,
        s=s,
        parents=tuple(tuple(row) for row in par),
        children=tuple(tuple(row) for row in chi),
    )


def parents(h: Hologram, v: HVertex) -> frozenset[HVertex]:
    u, k = v
    return frozenset((w, k - 1) for w in bits(h.parent_mask(v)))


def children(h: Hologram, v: HVertex) -> frozenset[HVertex]:
    u, k = v
    return frozenset((w, k + 1) for w in bits(h.child_mask(v)))


def hologram_to_dot(h: Hologram) -> str:
    """Graphviz DOT text, one ``rank=same`` group per level."""
    out = ["digraph hologram {", "  rankdir=LR;", "  node [shape=circle];"]
    for k in range(h.L + 1):
        names = " ".join(f'"{u},{k}";' for u in h.level(k))
        out.append(f"  {{ rank=same; {names} }}")
    for k in range(h.L + 1):
        for u in h.level(k):
            label = f"<{u},{k}>"
            extra = ""
            if (u, k) == h.S:
                extra = ", shape=doublecircle, xlabel=S"
            elif (u, k) == h.D:
                extra = ", shape=doublecircle, xlabel=D"
            out.append(f'  "{u},{k}" [label="{label}"{extra}];')
    for (u, k), (w, j) in h.edges():
        out.append(f'  "{u},{k}" -> "{w},{j}";')
    out.append("}")
    return "\n".join(out) + "\n"
