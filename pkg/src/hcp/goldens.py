"""Worked-example graphs and their pinned transcripts.

Each transcript line is ``label = value``. Replaying an example renders the
same labels from a live run, and the first line whose value differs is
reported as the divergence.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .cm import CmTrace, cm
from .graph import Graph
from .hologram import build_hologram
from .pathset import from_levels, init_pathset, lpm, render
from .solver import CmEvent, fhc, phg_bp, solve_path

G1 = Graph.from_edges(4, [(1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
G2 = Graph.from_edges(4, [(1, 4), (2, 4), (3, 4), (2, 3)])
K5 = Graph.from_edges(5, list(combinations(range(1, 6), 2)))
EX5E = Graph.from_edges(5, [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4)])
# only the neighbourhood of 3, 5, 6, 7, 8 matters to the two CM calls;
# vertices 1, 2, 4 just keep the graph connected
EX3 = Graph.from_edges(
    8, [(3, 7), (6, 7), (7, 8), (5, 6), (5, 8), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]
)

EXAMPLE_GRAPHS = {"ex1": G1, "ex2": G2, "ex3-cm": EX3, "ex4": K5, "ex5e": EX5E}

EX1_PINS = """
PS[<1,0>] = {{1}}
PS[<2,1>] = {{2}}
CM(PS[<1,0>], <3,1>) = {{1},{3}}
PS[<3,1>] = {{1},{3}}
PS[<4,1>] = {{1},{4}}
CM(PS[<3,1>], <2,2>) = {{1},{3},{2}}
PS[<2,2>] after <3,1> = {{1},{3},{2}}
CM(PS[<4,1>], <2,2>) = {{1},{4},{2}}
PS[<2,2>] = {{1},{3,4},{2}}
CM(PS[<2,1>], <3,2>) = {{2},{3}}
PS[<3,2>] after <2,1> = {{2},{3}}
CM(PS[<4,1>], <3,2>) = {{1},{4},{3}}
PS[<3,2>] = {{1},{4},{3}}
PS[<4,2>] = {{1},{3},{4}}
CM(PS[<3,2>], <2,3>) = {{1},{4},{3},{2}}
CM(PS[<4,2>], <2,3>) = {{1},{3},{4},{2}}
PS[<2,3>] = {{1},{3,4},{3,4},{2}}
CM(PS[<2,2>], <3,3>) without duplicates = {{1},{4},{2}}
CM(PS[<2,2>], <3,3>) singleton loop = 1
CM(PS[<2,2>], <3,3>) = {{1},{4},{2},{3}}
CM(PS[<4,2>], <3,3>) without duplicates = {{1},{},{4}}
CM(PS[<4,2>], <3,3>) singleton loop = 0
CM(PS[<4,2>], <3,3>) = {{}}
PS[<3,3>] = {{1},{4},{2},{3}}
PS[<4,3>] = {{1},{3},{2},{4}}
CM(PS[<3,3>], <1,4>) = {{1},{4},{2},{3},{1}}
CM(PS[<4,3>], <1,4>) = {{1},{3},{2},{4},{1}}
PS[<1,4>] = {{1},{3,4},{2},{3,4},{1}}
FHC PStemp after <3,3> = {{1},{4},{2},{3}}
FHC PStemp after <2,2> = {{1},{4},{2}}
FHC PStemp after <4,1> = {{1},{4}}
cycle = 1-4-2-3-1
"""

EX2_PINS = """
PS[<2,3>] = {{1},{4},{3},{2}}
PS[<3,3>] = {{1},{4},{2},{3}}
PS[<4,3>] = {{4}}
PS[<1,4>] = {{4},{1}}
verdict = non_hamiltonian
FHC(<2,3>) = 1-4-3-2
FHC(<3,3>) = 1-4-2-3
path = 1-4-3-2
"""

EX3_INPUTS = {
    5: ((3, 6, 8), (7,), (6, 8), (5,)),
    7: ((6, 8), (5,), (6, 8), (7,)),
}

EX3_PINS = """
CM(PS[<5,4>], <6,5>) without duplicates = {{3,8},{7},{8},{5}}
CM(PS[<5,4>], <6,5>) deletions = 6@3 6@1 8@1
CM(PS[<5,4>], <6,5>) singleton loop = 1
CM(PS[<5,4>], <6,5>) = {{3},{7},{8},{5},{6}}
PS[<6,5>] after <5,4> = {{3},{7},{8},{5},{6}}
CM(PS[<7,4>], <6,5>) without duplicates = {{8},{5},{8},{7}}
CM(PS[<7,4>], <6,5>) deletions = 6@3 6@1 8@1
CM(PS[<7,4>], <6,5>) singleton loop = 1
CM(PS[<7,4>], <6,5>) = {{}}
PS[<6,5>] = {{3},{7},{8},{5},{6}}
"""

EX4_PINS = """
PS[<1,0>] = {{1}}
CM(PS[<1,0>], <2,1>) = {{1},{2}}
CM(PS[<1,0>], <2,1>) singleton loop = 0
PS[<2,1>] = {{1},{2}}
PS[<3,1>] = {{1},{3}}
PS[<4,1>] = {{1},{4}}
PS[<5,1>] = {{1},{5}}
CM(PS[<3,1>], <2,2>) = {{1},{3},{2}}
CM(PS[<3,1>], <2,2>) singleton loop = 0
PS[<2,2>] after <3,1> = {{1},{3},{2}}
PS[<2,2>] after <4,1> = {{1},{3,4},{2}}
CM(PS[<4,1>], <2,2>) singleton loop = 0
PS[<2,2>] = {{1},{3,4,5},{2}}
CM(PS[<5,1>], <2,2>) singleton loop = 0
PS[<3,2>] = {{1},{2,4,5},{3}}
PS[<4,2>] = {{1},{2,3,5},{4}}
PS[<5,2>] = {{1},{2,3,4},{5}}
CM(PS[<3,2>], <2,3>) without duplicates = {{1},{4,5},{3}}
CM(PS[<3,2>], <2,3>) singleton loop = 1
CM(PS[<3,2>], <2,3>) = {{1},{4,5},{3},{2}}
PS[<2,3>] after <3,2> = {{1},{4,5},{3},{2}}
PS[<2,3>] after <4,2> = {{1},{3,4,5},{3,4},{2}}
CM(PS[<4,2>], <2,3>) singleton loop = 1
PS[<2,3>] = {{1},{3,4,5},{3,4,5},{2}}
CM(PS[<5,2>], <2,3>) singleton loop = 1
PS[<3,3>] = {{1},{2,4,5},{2,4,5},{3}}
PS[<4,3>] = {{1},{2,3,5},{2,3,5},{4}}
PS[<5,3>] = {{1},{2,3,4},{2,3,4},{5}}
CM(PS[<3,3>], <2,4>) without duplicates = {{1},{4,5},{4,5},{3}}
CM(PS[<3,3>], <2,4>) singleton loop = 1
CM(PS[<3,3>], <2,4>) = {{1},{4,5},{4,5},{3},{2}}
PS[<2,4>] after <3,3> = {{1},{4,5},{4,5},{3},{2}}
PS[<2,4>] after <4,3> = {{1},{3,4,5},{3,4,5},{3,4},{2}}
CM(PS[<4,3>], <2,4>) singleton loop = 1
PS[<2,4>] = {{1},{3,4,5},{3,4,5},{3,4,5},{2}}
CM(PS[<5,3>], <2,4>) singleton loop = 1
PS[<3,4>] = {{1},{2,4,5},{2,4,5},{2,4,5},{3}}
PS[<4,4>] = {{1},{2,3,5},{2,3,5},{2,3,5},{4}}
PS[<5,4>] = {{1},{2,3,4},{2,3,4},{2,3,4},{5}}
PS[<1,5>] = {{1},{2,3,4,5},{2,3,4,5},{2,3,4,5},{2,3,4,5},{1}}
FHC PStemp after <2,4> = {{1},{3,4,5},{3,4,5},{3,4,5},{2}}
FHC PStemp after <3,3> = {{1},{4,5},{4,5},{3}}
FHC PStemp after <4,2> = {{1},{5},{4}}
FHC PStemp after <5,1> = {{1},{5}}
cycle = 1-5-4-3-2-1
"""

EX5E_PINS = """
PS[<1,0>] = {{1}}
PS[<2,1>] = {{1},{2}}
PS[<3,1>] = {{1},{3}}
PS[<4,1>] = {{1},{4}}
PS[<5,1>] = {{1},{5}}
PS[<2,2>] = {{1},{3,4,5},{2}}
PS[<3,2>] = {{1},{2,4},{3}}
PS[<4,2>] = {{1},{2,3},{4}}
PS[<5,2>] = {{1},{2},{5}}
PS[<2,3>] = {{1},{3,4},{3,4},{2}}
PS[<3,3>] = {{1},{2,4,5},{2,4},{3}}
PS[<4,3>] = {{1},{2,3,5},{2,3},{4}}
PS[<5,3>] = {{1},{3,4},{2},{5}}
PS[<2,4>] = {{2}}
PS[<3,4>] = {{1},{5},{2},{4},{3}}
PS[<4,4>] = {{1},{5},{2},{3},{4}}
PS[<5,4>] = {{1},{3,4},{3,4},{2},{5}}
PS[<1,5>] = {{1},{3,4,5},{2,3,4},{2,3,4},{3,4,5},{1}}
"""

TRANSCRIPTS = {"ex1": EX1_PINS, "ex2": EX2_PINS, "ex3-cm": EX3_PINS, "ex4": EX4_PINS, "ex5e": EX5E_PINS}
EXAMPLE_IDS = tuple(TRANSCRIPTS)


@dataclass
class GoldenResult:
    example_id: str
    passed: bool
    checked: int
    divergence: str | None = None
    lines: list[str] = field(default_factory=list)


def pinned(example_id: str) -> list[tuple[str, str]]:
    out = []
    for line in TRANSCRIPTS[example_id].strip().splitlines():
        label, _, value = line.partition(" = ")
        out.append((label, value))
    return out


def _hv(v) -> str:
    return f"<{v[0]},{v[1]}>"


def _dash(seq) -> str:
    return "-".join(map(str, seq)) if seq else "none"


def _record_cm(found: dict, ev: CmEvent) -> None:
    call = f"CM(PS[{_hv(ev.parent)}], {_hv(ev.child)})"
    found[call] = render(ev.result)
    found[f"{call} singleton loop"] = str(ev.trace.singleton_loop_iterations)
    found[f"{call} deletions"] = " ".join(f"{z}@{i}" for z, i in ev.trace.deletions)
    if ev.trace.after_duplicates is not None:
        found[f"{call} without duplicates"] = render(ev.trace.after_duplicates)
    found[f"PS[{_hv(ev.child)}] after {_hv(ev.parent)}"] = render(ev.merged)


def _run_pipeline(g: Graph, tie_break: str, *, path_mode: bool = False) -> dict[str, str]:
    found: dict[str, str] = {}
    h = build_hologram(g, 1)
    steps: list = []
    out = phg_bp(h, g, tie_break=tie_break, on_cm=lambda ev: _record_cm(found, ev), fhc_steps=steps)
    for (u, k), ps in out.table.items():
        found[f"PS[<{u},{k}>]"] = render(ps)
    for v, i, ps in steps:
        found[f"FHC PStemp after <{v},{i}>"] = render(ps)
    found["cycle"] = _dash(out.cycle)
    found["verdict"] = out.verdict
    if path_mode:
        for w in (2, 3):
            found[f"FHC(<{w},3>)"] = _dash(fhc(out.table, (w, 3), h, g, tie_break=tie_break))
        found["path"] = _dash(solve_path(g, tie_break=tie_break).path)
    return found


def ex3_table() -> dict:
    """Level-1 path sets of the fixture graph, the only entries the two CM calls read."""
    return {
        (w, 1): from_levels(0, [[1], [w]]) if EX3.has_arc(1, w) else init_pathset(w, 1)
        for w in range(2, 9)
    }


def _run_ex3() -> dict[str, str]:
    found: dict[str, str] = {}
    table = ex3_table()
    merged = init_pathset(6, 5)
    for v, levels in EX3_INPUTS.items():
        tr = CmTrace()
        res = cm(from_levels(1, levels), 6, 5, EX3, table, tr)
        merged = lpm(merged, res)
        _record_cm(found, CmEvent((v, 4), (6, 5), res, merged, tr))
    found["PS[<6,5>]"] = render(merged)
    return found


def golden_trace(example_id: str, *, tie_break: str = "asc") -> GoldenResult:
    """Replay a worked example and compare it against its pinned transcript."""
    if example_id not in TRANSCRIPTS:
        raise KeyError(f"unknown example {example_id!r}; choose from {', '.join(EXAMPLE_IDS)}")
    if example_id == "ex3-cm":
        found = _run_ex3()
    else:
        found = _run_pipeline(EXAMPLE_GRAPHS[example_id], tie_break, path_mode=example_id == "ex2")
    lines = []
    divergence = None
    for label, want in pinned(example_id):
        got = found.get(label, "<missing>")
        ok = got == want
        lines.append(f"{'ok ' if ok else 'BAD'} {label} = {got}" + ("" if ok else f"  (expected {want})"))
        if not ok and divergence is None:
            divergence = f"{label}: expected {want}, got {got}"
    return GoldenResult(example_id, divergence is None, len(lines), divergence, lines)
