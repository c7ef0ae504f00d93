"""Level-by-level path-set propagation over the hologram, backward cycle
extraction, and independent verification of whatever gets extracted."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .cm import CmTrace, _Null, cm
from .graph import Graph, GraphError, bits, is_connected
from .hologram import HVertex, Hologram, build_hologram
from .pathset import INVALID, init_pathset, join, lpm, prefix_intersect, render

HAMILTONIAN = "hamiltonian"
NON_HAMILTONIAN = "non_hamiltonian"
TIE_BREAKS = ("asc", "desc")


@dataclass
class SolveStats:
    cm_calls: int = 0
    max_singleton_iterations: int = 0
    total_singleton_iterations: int = 0
    max_sweep_passes: int = 0
    runtime: float = 0.0

    def note(self, tr) -> None:
        self.cm_calls += 1
        it = tr.singleton_loop_iterations
        self.total_singleton_iterations += it
        if it > self.max_singleton_iterations:
            self.max_singleton_iterations = it
        if tr.sweep_passes > self.max_sweep_passes:
            self.max_sweep_passes = tr.sweep_passes


@dataclass(frozen=True)
class CmEvent:
    """One CM call: its result and the child's path set right after merging it."""

    parent: HVertex
    child: HVertex
    result: object
    merged: object
    trace: CmTrace


@dataclass
class SolveOutcome:
    verdict: str
    cycle: tuple[int, ...] | None
    table: dict = field(repr=False)
    stats: SolveStats = field(default_factory=SolveStats)
    start: int = 1
    trace: list[str] = field(default_factory=list, repr=False)

    @property
    def is_hamiltonian(self) -> bool:
        return self.verdict == HAMILTONIAN

    def final_pathset(self, n: int):
        return self.table.get((self.start, n), INVALID)

    def render_table(self) -> list[str]:
        """Every table entry as ``PS[<u,k>] = ...``, level-major, ascending ids."""
        keys = sorted(self.table, key=lambda t: (t[1], t[0]))
        return [f"PS[<{u},{k}>] = {render(self.table[(u, k)])}" for u, k in keys]


@dataclass
class PathOutcome:
    traceable: bool
    path: tuple[int, ...] | None
    start: int | None
    stats: SolveStats = field(default_factory=SolveStats)


# ------------------------------------------------------------------ verify


def verify_cycle(g: Graph, seq: Sequence[int]) -> bool:
    n = g.n
    if len(seq) != n + 1 or seq[0] != seq[-1]:
        return False
    if sorted(seq[:-1]) != list(range(1, n + 1)):
        return False
    return all(g.has_arc(a, b) for a, b in zip(seq, seq[1:]))


def verify_path(g: Graph, seq: Sequence[int]) -> bool:
    n = g.n
    if len(seq) != n or sorted(seq) != list(range(1, n + 1)):
        return False
    return all(g.has_arc(a, b) for a, b in zip(seq, seq[1:]))


# -------------------------------------------------------------------- core


def phg_bp(
    h: Hologram,
    g: Graph,
    *,
    tie_break: str = "asc",
    trace: bool = False,
    on_cm: Callable[[CmEvent], None] | None = None,
    fhc_steps: list | None = None,
) -> SolveOutcome:
    """Fill the path-set table of ``h`` and try to pull a cycle out of ``PS[D]``.

    ``on_cm`` sees every CM call (and every join onto ``D``) as a
    :class:`CmEvent`; with it unset the hot path records nothing but
    iteration counts. ``fhc_steps`` is handed to :func:`fhc`.
    """
    t0 = time.perf_counter()
    L, s = h.L, h.s
    stats = SolveStats()
    lines: list[str] = []
    table: dict = {h.S: init_pathset(s, 0)}
    if trace:
        lines.append(f"PS[<{s},0>] = {render(table[h.S])}")

    for i in range(1, L):
        for u in h.level(i):
            ps = init_pathset(u, i)
            for v in bits(h.parents[i][u]):
                tr = CmTrace() if on_cm is not None else _Null()
                pstemp = cm(table[(v, i - 1)], u, i, g, table, tr)
                stats.note(tr)
                if trace:
                    lines.append(f"  PStemp[<{u},{i}>] = CM(PS[<{v},{i - 1}>], <{u},{i}>) = {render(pstemp)}")
                ps = lpm(ps, pstemp)
                if on_cm is not None:
                    on_cm(CmEvent((v, i - 1), (u, i), pstemp, ps, tr))
            table[(u, i)] = ps
            if trace:
                lines.append(f"PS[<{u},{i}>] = {render(ps)}")

    ps = init_pathset(s, L)
    for v in bits(h.parent_mask(h.D)):
        pstemp = join(table[(v, L - 1)], s)
        if trace:
            lines.append(f"  PStemp[<{s},{L}>] = PS[<{v},{L - 1}>] + {{{s}}} = {render(pstemp)}")
        ps = lpm(ps, pstemp)
        if on_cm is not None:
            on_cm(CmEvent((v, L - 1), h.D, pstemp, ps, CmTrace()))
    table[h.D] = ps
    if trace:
        lines.append(f"PS[<{s},{L}>] = {render(ps)}")

    cycle = None
    if len(ps) == L + 1:
        seq = fhc(table, h.D, h, g, tie_break=tie_break, steps=fhc_steps)
        if trace:
            lines.append(f"backward search: {'-'.join(map(str, seq)) if seq else 'no cycle'}")
        if seq and verify_cycle(g, seq):
            cycle = tuple(seq)
    elif trace:
        lines.append(f"length(PS[<{s},{L}>]) = {len(ps)} != {L + 1}")
    stats.runtime = time.perf_counter() - t0
    return SolveOutcome(
        verdict=HAMILTONIAN if cycle else NON_HAMILTONIAN,
        cycle=cycle,
        table=table,
        stats=stats,
        start=s,
        trace=lines,
    )


def fhc(
    table: dict,
    target: HVertex,
    h: Hologram,
    g: Graph,
    *,
    tie_break: str = "asc",
    steps: list | None = None,
) -> list[int]:
    """Backward search from ``target`` to ``S``.

    Returns the vertex sequence in level order (``S`` first), or ``[]`` when
    some level has no legal parent. If ``steps`` is a list, each accepted
    ``(vertex, level, constraint)`` is appended to it.
    """
    if tie_break not in TIE_BREAKS:
        raise ValueError(f"tie_break must be one of {TIE_BREAKS}, got {tie_break!r}")
    u, k = target
    pstemp = table.get(target, INVALID)
    if not pstemp.valid or pstemp.base != 0:
        return []
    chosen = [u]
    used = 1 << u
    for i in range(k - 1, 0, -1):
        cands = list(bits(pstemp.at(i) & h.parent_mask((u, i + 1)) & ~used))
        if tie_break == "desc":
            cands.reverse()
        pick = None
        for v in cands:
            psv = table.get((v, i), INVALID)
            if not psv.valid or psv.base != 0:
                continue
            inter, empty = prefix_intersect(pstemp, psv, i)
            if not empty:
                pick = v
                break
        if pick is None:
            return []
        pstemp = inter
        if steps is not None:
            steps.append((pick, i, pstemp))
        chosen.append(pick)
        used |= 1 << pick
        u = pick
    if not h.parent_mask((u, 1)) >> h.s & 1:
        return []
    chosen.append(h.s)
    chosen.reverse()
    return chosen


# -------------------------------------------------------------- front ends


def solve_cycle(g: Graph, start: int = 1, *, tie_break: str = "asc", trace: bool = False) -> SolveOutcome:
    if not is_connected(g):
        raise GraphError("graph is not connected")
    if g.n < 3:
        return SolveOutcome(NON_HAMILTONIAN, None, {}, SolveStats(), start)
    h = build_hologram(g, start)
    return phg_bp(h, g, tie_break=tie_break, trace=trace)


def solve_path(g: Graph, *, tie_break: str = "asc") -> PathOutcome:
    """Try every start vertex in turn; first verified Hamiltonian path wins."""
    if not is_connected(g):
        raise GraphError("graph is not connected")
    n = g.n
    if n == 1:
        return PathOutcome(True, (1,), 1)
    total = SolveStats()
    t0 = time.perf_counter()
    for s in g.vertices:
        h = build_hologram(g, s)
        out = phg_bp(h, g, tie_break=tie_break)
        total.cm_calls += out.stats.cm_calls
        total.total_singleton_iterations += out.stats.total_singleton_iterations
        total.max_singleton_iterations = max(total.max_singleton_iterations, out.stats.max_singleton_iterations)
        total.max_sweep_passes = max(total.max_sweep_passes, out.stats.max_sweep_passes)
        for w in h.level(n - 1):
            ps = out.table[(w, n - 1)]
            if not ps.valid or ps.base != 0:
                continue
            seq = fhc(out.table, (w, n - 1), h, g, tie_break=tie_break)
            if seq and verify_path(g, seq):
                total.runtime = time.perf_counter() - t0
                return PathOutcome(True, tuple(seq), s, total)
    total.runtime = time.perf_counter() - t0
    return PathOutcome(False, None, None, total)
