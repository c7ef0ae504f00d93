"""Brute-force ground truth, independent of the path-set machinery.

Everything here is exhaustive search: backtracking over the original graph
for cycles, and depth-first enumeration over the hologram for basic paths.
"""
from __future__ import annotations

from typing import Iterator

from .graph import Graph, bits
from .hologram import HVertex, Hologram
from .pathset import PathSet

ORACLE_MAX_N = 6


def iter_hamiltonian_cycles(g: Graph, start: int = 1) -> Iterator[tuple[int, ...]]:
    """Every directed Hamiltonian circuit from ``start``, lexicographic order.

    A circuit and its reverse are distinct. Graphs with fewer than three
    vertices have none.
    """
    n = g.n
    if n < 3:
        return
    full = (1 << (n + 1)) - 2
    out = g.out_mask
    back = g.in_mask[start]
    path = [start]

    def rec(v: int, seen: int) -> Iterator[tuple[int, ...]]:
        if seen == full:
            if back >> v & 1:
                yield tuple(path) + (start,)
            return
        rest = full & ~seen
        # prune: some unvisited vertex can no longer be entered or left
        enter_from = rest | 1 << v
        leave_to = rest | 1 << start
        for w in bits(rest):
            if not g.in_mask[w] & enter_from or not out[w] & leave_to:
                return
        for w in bits(out[v] & rest):
            path.append(w)
            yield from rec(w, seen | 1 << w)
            path.pop()

    yield from rec(start, 1 << start)


def oracle_hamiltonian_cycle(g: Graph, start: int = 1) -> tuple[int, ...] | None:
    return next(iter_hamiltonian_cycles(g, start), None)


def oracle_count_cycles(g: Graph, start: int = 1) -> int:
    return sum(1 for _ in iter_hamiltonian_cycles(g, start))


def oracle_hamiltonian_path(g: Graph) -> tuple[int, ...] | None:
    n = g.n
    full = (1 << (n + 1)) - 2
    path: list[int] = []

    def rec(v: int, seen: int) -> bool:
        if seen == full:
            return True
        for w in bits(g.out_mask[v] & ~seen):
            path.append(w)
            if rec(w, seen | 1 << w):
                return True
            path.pop()
        return False

    for s in g.vertices:
        path[:] = [s]
        if rec(s, 1 << s):
            return tuple(path)
    return None


# ---------------------------------------------------------------- hologram


def hologram_has_basic_path(h: Hologram) -> bool:
    """Is there an ``S -> D`` path in ``h`` whose original vertices are
    distinct (apart from the start vertex closing the path at ``D``)?"""
    L, s = h.L, h.s

    def rec(u: int, k: int, seen: int) -> bool:
        if k == L - 1:
            return bool(h.children[k][u] >> s & 1)
        for w in bits(h.children[k][u] & ~seen):
            if rec(w, k + 1, seen | 1 << w):
                return True
        return False

    if L < 2:
        return False
    seen0 = 1 << s
    return any(rec(w, 1, seen0 | 1 << w) for w in bits(h.children[0][s]))


def oracle_basic_path_sets(h: Hologram, target: HVertex, *, max_n: int = ORACLE_MAX_N) -> PathSet:
    """Per-level unions over all longest basic paths that end at ``target``.

    A path may start at ``S`` or at any vertex of levels ``1 .. k-1``; it is
    basic if no original vertex repeats, except that ``D`` may close onto the
    start vertex. Falls back to ``{{u}}`` when nothing reaches ``target``.
    """
    if h.n > max_n:
        raise ValueError(f"hologram of order {h.n} exceeds the oracle guard ({max_n})")
    if target not in h:
        raise ValueError(f"<{target[0]},{target[1]}> is not a hologram vertex")
    u, k = target
    best_len = 1
    best: list[int] = [1 << u]
    walk = [u]  # walk[j] sits on level k - j

    def rec(v: int, lvl: int, seen: int) -> None:
        nonlocal best_len, best
        depth = len(walk)
        if depth > best_len:
            best_len = depth
            best = [1 << x for x in reversed(walk)]
        elif depth == best_len:
            for j, x in enumerate(reversed(walk)):
                best[j] |= 1 << x
        for w in bits(h.parent_mask((v, lvl)) & ~seen):
            walk.append(w)
            rec(w, lvl - 1, seen | 1 << w)
            walk.pop()

    # D may close onto S, so the start vertex is not marked as used there
    rec(u, k, 0 if target == h.D else 1 << u)
    return PathSet(k - best_len + 1, tuple(best))
