"""Consistency maintenance for joining a vertex onto a parent's path set.

When ``u`` joins ``PS[(v, k-1)]``, every earlier occurrence of ``u`` is
deleted, and each deletion cascades through the left and right action fields.
A neighbour is kept ("replenished") if another survivor on the deleted
vertex's level still reaches it. After that, the singleton sweep removes the
duplicates of every single-element segment set until nothing changes. The
working copy only ever shrinks.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .graph import Graph, bits
from .pathset import INVALID, ContractViolation, PathSet, join, prefix_blocked

PathSetTable = dict  # (u, k) -> PathSet


@dataclass
class CmTrace:
    deletions: list[tuple[int, int]] = field(default_factory=list)
    replenished: list[tuple[int, int]] = field(default_factory=list)
    deleted_fragments: list[list[tuple[int, int]]] = field(default_factory=list)
    singleton_loop_iterations: int = 0
    sweep_passes: int = 0
    events: list[str] = field(default_factory=list)
    # working copy once every earlier occurrence of the joining vertex is gone
    after_duplicates: PathSet | None = None

    def log(self) -> str:
        return "\n".join(self.events) + ("\n" if self.events else "")


class _NullList:
    def append(self, *_):
        pass


_DROP = _NullList()


class _Null:
    """Stand-in trace that drops everything (hot path)."""

    deletions = replenished = deleted_fragments = events = _DROP
    singleton_loop_iterations = 0
    sweep_passes = 0


# ------------------------------------------------------------ DR primitives


def _lafdr(levels: list[int], base: int, w: int, j: int, g: Graph, tr, burst) -> None:
    i = j
    if i <= base:
        return
    in_mask = g.in_mask
    below = levels[i - 1 - base]
    s1 = in_mask[w] & below
    s2 = 0
    for y in bits(levels[i - base]):
        s2 |= in_mask[y] & below
    while i > base:
        drop = s1 & ~s2
        for q in bits(s1 & s2):
            tr.replenished.append((q, i - 1))
            tr.events.append(f"  replenish {q}@{i - 1} (left)")
        if not drop:
            return
        i -= 1
        levels[i - base] &= ~drop
        for q in bits(drop):
            tr.deletions.append((q, i))
            burst.append((q, i))
            tr.events.append(f"  delete {q}@{i} (left cascade)")
        if i == base:
            return
        below = levels[i - 1 - base]
        s1 = 0
        for q in bits(drop):
            s1 |= in_mask[q] & below
        s2 = 0
        for y in bits(levels[i - base]):
            s2 |= in_mask[y] & below


def _rafdr(levels: list[int], base: int, w: int, j: int, g: Graph, tr, burst) -> None:
    top = base + len(levels) - 1
    i = j
    if i >= top:
        return
    out_mask = g.out_mask
    above = levels[i + 1 - base]
    s1 = out_mask[w] & above
    s2 = 0
    for y in bits(levels[i - base]):
        s2 |= out_mask[y] & above
    while i < top:
        drop = s1 & ~s2
        for q in bits(s1 & s2):
            tr.replenished.append((q, i + 1))
            tr.events.append(f"  replenish {q}@{i + 1} (right)")
        if not drop:
            return
        i += 1
        levels[i - base] &= ~drop
        for q in bits(drop):
            tr.deletions.append((q, i))
            burst.append((q, i))
            tr.events.append(f"  delete {q}@{i} (right cascade)")
        if i == top:
            return
        above = levels[i + 1 - base]
        s1 = 0
        for q in bits(drop):
            s1 |= out_mask[q] & above
        s2 = 0
        for y in bits(levels[i - base]):
            s2 |= out_mask[y] & above


def lafdr(pstemp: PathSet, w: int, j: int, g: Graph) -> PathSet:
    """Left deleting-replenishing after ``w`` was removed from level ``j``."""
    levels = list(pstemp.sets)
    _lafdr(levels, pstemp.base, w, j, g, _Null(), [])
    return PathSet(pstemp.base, tuple(levels))


def rafdr(pstemp: PathSet, w: int, j: int, g: Graph) -> PathSet:
    """Right deleting-replenishing after ``w`` was removed from level ``j``."""
    levels = list(pstemp.sets)
    _rafdr(levels, pstemp.base, w, j, g, _Null(), [])
    return PathSet(pstemp.base, tuple(levels))


# -------------------------------------------------------------------- CHECK


def _lookup(table: Mapping, key):
    try:
        return table[key]
    except KeyError:
        raise ContractViolation(f"path set table has no entry for <{key[0]},{key[1]}>") from None


def check(pstemp: PathSet, table: Mapping, k: int) -> bool:
    """True when every member of the highest multi-element level below ``k-1``
    has a path set that is inconsistent with ``pstemp``.

    ``pstemp`` ends at level ``k-1``.
    """
    for i in range(k - 2, pstemp.base - 1, -1):
        m = pstemp.at(i)
        if m.bit_count() > 1:
            for w in bits(m):
                if not prefix_blocked(pstemp, _lookup(table, (w, i)), i):
                    return False
            return True
    return False


# ----------------------------------------------------------------------- CM


def _delete_burst(levels, base, z, i, g, tr, reason: str) -> list[tuple[int, int]]:
    levels[i - base] &= ~(1 << z)
    burst = [(z, i)]
    tr.deletions.append((z, i))
    tr.events.append(f"delete {z}@{i} ({reason})")
    if levels[i - base]:
        _lafdr(levels, base, z, i, g, tr, burst)
        _rafdr(levels, base, z, i, g, tr, burst)
    tr.deleted_fragments.append(sorted(burst, key=lambda t: (t[1], t[0])))
    return burst


def cm(ps_parent, u: int, k: int, g: Graph, table: Mapping, trace: CmTrace | None = None, *, final: bool = False):
    """Join ``u`` on level ``k`` onto ``ps_parent`` (which ends on ``k-1``).

    Returns ``INVALID`` as soon as a segment level empties or ``check`` fires.
    ``final=True`` is the join onto the final vertex, which is unconditional.
    """
    tr = trace if trace is not None else _Null()
    if not ps_parent.valid:
        return INVALID
    if final:
        return join(ps_parent, u)
    base = ps_parent.base
    end = ps_parent.end
    if end != k - 1:
        raise ContractViolation(f"parent path set ends on level {end}, expected {k - 1}")
    if ps_parent.sets[-1] >> u & 1:
        raise ContractViolation(f"vertex {u} is the parent's own end vertex")
    levels = list(ps_parent.sets)

    def snapshot() -> PathSet:
        return PathSet(base, tuple(levels))

    def broken() -> bool:
        if not all(levels):
            tr.events.append("empty segment set -> {{}}")
            return True
        if check(snapshot(), table, k):
            tr.events.append("CHECK: no legal path -> {{}}")
            return True
        return False

    keep = isinstance(tr, CmTrace)
    conflict = False
    for i in range(end - 1, base - 1, -1):
        if levels[i - base] >> u & 1:
            conflict = True
            _delete_burst(levels, base, u, i, g, tr, "duplicate of joining vertex")
            if broken():
                if keep:
                    tr.after_duplicates = snapshot()
                return INVALID
    if keep:
        tr.after_duplicates = snapshot()

    if conflict:
        passes = deleting = 0
        while True:
            passes += 1
            tr.events.append(f"sweep pass {passes}")
            deleted = False
            for j in range(end - 1, base - 1, -1):
                m = levels[j - base]
                if m.bit_count() != 1:
                    continue
                z = m.bit_length() - 1
                for i in range(end - 1, base - 1, -1):
                    if i != j and levels[i - base] >> z & 1:
                        deleted = True
                        _delete_burst(levels, base, z, i, g, tr, f"duplicate of singleton {{{z}}}@{j}")
                        if broken():
                            tr.sweep_passes = passes
                            tr.singleton_loop_iterations = deleting + 1
                            return INVALID
                if deleted:
                    break
            if not deleted:
                break
            deleting += 1
        tr.sweep_passes = passes
        tr.singleton_loop_iterations = max(1, deleting)
        if broken():
            return INVALID
    return join(snapshot(), u)
