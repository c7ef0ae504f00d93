"""Path sets: one segment set per absolute level ``base .. end``.

Segment sets are bitmasks over original vertex ids (bit ``v`` = vertex ``v``),
so iteration is always in ascending id order. ``INVALID`` stands for the
``{{}}`` result: no basic path survives.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .graph import Graph, bits, mask_of


class ContractViolation(Exception):
    """An operation was called outside its precondition."""


@dataclass(frozen=True, slots=True)
class PathSet:
    base: int
    sets: tuple[int, ...]

    valid = True

    @property
    def end(self) -> int:
        return self.base + len(self.sets) - 1

    @property
    def end_vertex(self) -> int:
        tail = self.sets[-1]
        if tail.bit_count() != 1:
            raise ContractViolation(f"tail segment of {render(self)} is not a singleton")
        return tail.bit_length() - 1

    def __len__(self) -> int:
        return len(self.sets)

    def at(self, level: int) -> int:
        """Segment mask at an absolute level; 0 outside ``base .. end``."""
        idx = level - self.base
        if 0 <= idx < len(self.sets):
            return self.sets[idx]
        return 0

    def members(self, level: int) -> list[int]:
        return list(bits(self.at(level)))

    def spans_from_zero(self) -> bool:
        return self.base == 0

    def has_empty(self) -> bool:
        return any(m == 0 for m in self.sets)

    def __str__(self) -> str:
        return render(self)


class _Invalid:
    valid = False
    base = None
    sets = ()

    def __len__(self) -> int:
        return 0

    def __repr__(self) -> str:
        return "INVALID"

    def __str__(self) -> str:
        return "{{}}"

    def __reduce__(self):
        return "INVALID"


INVALID = _Invalid()


def init_pathset(u: int, k: int) -> PathSet:
    return PathSet(k, (1 << u,))


def join(ps, u: int):
    """Append the singleton ``{u}`` one level above the end of ``ps``."""
    if not ps.valid:
        return INVALID
    return PathSet(ps.base, ps.sets + (1 << u,))


def length(ps) -> int:
    return len(ps)


def lpm(ps, pstemp):
    """Longest-path merge: keep the longer one; union level-wise on a tie."""
    if not pstemp.valid:
        return ps
    if not ps.valid:
        return pstemp
    if pstemp.end != ps.end or pstemp.sets[-1] != ps.sets[-1]:
        raise ContractViolation(
            f"lpm of path sets ending differently: {render(ps)}@{ps.end} vs {render(pstemp)}@{pstemp.end}"
        )
    if len(pstemp) < len(ps):
        return ps
    if len(pstemp) > len(ps):
        return pstemp
    assert ps.base == pstemp.base
    return PathSet(ps.base, tuple(a | b for a, b in zip(ps.sets, pstemp.sets)))


def left_action_field(ps: PathSet, v: int, i: int, g: Graph) -> frozenset[int]:
    """In-neighbours of ``v`` inside the segment set one level below ``i``."""
    if i <= ps.base:
        return frozenset()
    return frozenset(bits(g.in_mask[v] & ps.at(i - 1)))


def right_action_field(ps: PathSet, v: int, i: int, g: Graph) -> frozenset[int]:
    if i >= ps.end:
        return frozenset()
    return frozenset(bits(g.out_mask[v] & ps.at(i + 1)))


def prefix_intersect(pstemp: PathSet, ps_v: PathSet, i: int) -> tuple[PathSet, bool]:
    """Intersect levels ``pstemp.base .. i`` of both path sets.

    Levels ``ps_v`` does not cover intersect to the empty set. Returns the
    truncated intersection and whether any of its levels is empty.
    """
    lo = pstemp.base
    out = tuple(pstemp.at(j) & ps_v.at(j) for j in range(lo, i + 1))
    return PathSet(lo, out), any(m == 0 for m in out)


def prefix_blocked(pstemp: PathSet, ps_v: PathSet, i: int) -> bool:
    """Short-circuiting form of ``prefix_intersect(...)[1]``."""
    for j in range(i, pstemp.base - 1, -1):
        if not pstemp.at(j) & ps_v.at(j):
            return True
    return False


# ------------------------------------------------------------------ render


def render_mask(m: int) -> str:
    return "{" + ",".join(str(v) for v in bits(m)) + "}"


def render(ps) -> str:
    if not ps.valid:
        return "{{}}"
    return "{" + ",".join(render_mask(m) for m in ps.sets) + "}"


_SET_RE = re.compile(r"\{([^{}]*)\}")


def parse_pathset(text: str, end: int):
    """Inverse of :func:`render` given the absolute end level."""
    body = text.replace(" ", "")
    if body in ("{{}}", "{}"):
        return INVALID
    if not (body.startswith("{") and body.endswith("}")):
        raise ValueError(f"not a path set: {text!r}")
    levels = []
    for group in _SET_RE.findall(body[1:-1]):
        levels.append(mask_of(int(x) for x in group.split(",") if x))
    if not levels:
        raise ValueError(f"not a path set: {text!r}")
    return PathSet(end - len(levels) + 1, tuple(levels))


def from_levels(base: int, levels: Iterable[Iterable[int]]) -> PathSet:
    return PathSet(base, tuple(mask_of(level) for level in levels))
