"""Acceptance criteria, one test each, each printing a single PASS/FAIL line."""
import io
import json
import random
import time
from itertools import combinations

import networkx as nx
import pytest

from hcp.cm import CmTrace, cm
from hcp.goldens import EX3, EX3_INPUTS, EX5E, G1, G2, K5, ex3_table, golden_trace, pinned
from hcp.graph import bits, enumerate_connected_labeled, parse_graph6
from hcp.harness import scaling_probe, write_sweep
from hcp.hologram import build_hologram
from hcp.oracle import hologram_has_basic_path, iter_hamiltonian_cycles, oracle_count_cycles, oracle_hamiltonian_cycle
from hcp.pathset import INVALID, from_levels, init_pathset, lpm, prefix_intersect, render
from hcp.solver import phg_bp, solve_cycle, solve_path, verify_cycle, verify_path
from strategies import connected_graphs
from test_cm import assert_cm_invariants, random_cm_case

SWEEP_COUNTS = {3: 4, 4: 38, 5: 728, 6: 26704}


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
        assert ok, detail

    return emit


def _singleton_iterations(g):
    seen = []
    phg_bp(build_hologram(g, 1), g, on_cm=lambda ev: seen.append(ev.trace.singleton_loop_iterations))
    return seen


def _bad_lines(res, allow=()):
    return [ln for ln in res.lines if ln.startswith("BAD") and not ln[4:].startswith(allow)]


def test_criterion_1_example_g1(report):
    t0 = time.perf_counter()
    out = solve_cycle(G1, 1)
    runtime = time.perf_counter() - t0
    asc = golden_trace("ex1")
    path_sets = sum(1 for label, _ in pinned("ex1") if label.startswith("PS["))
    cycles = {}
    ok = asc.passed and runtime < 1.0
    ok &= render(out.table[(1, 4)]) == "{{1},{3,4},{2},{3,4},{1}}"
    for tb in ("asc", "desc"):
        cyc = solve_cycle(G1, 1, tie_break=tb).cycle
        cycles[tb] = "-".join(map(str, cyc)) if cyc else None
        ok &= cyc is not None and verify_cycle(G1, cyc) and cycles[tb] in {"1-4-2-3-1", "1-3-2-4-1"}
    # path sets do not depend on the tie-break; only the extraction lines may differ
    ok &= not _bad_lines(golden_trace("ex1", tie_break="desc"), allow=("FHC", "cycle"))
    report(1, ok, f"{asc.checked} pinned lines ({path_sets} path sets) match, cycles {cycles}, runtime {runtime:.4f}s")


def test_criterion_2_example_g2(report):
    out = solve_cycle(G2, 1)
    path = solve_path(G2).path
    gold = golden_trace("ex2")
    dashed = "-".join(map(str, path)) if path else None
    ok = gold.passed and out.verdict == "non_hamiltonian"
    ok &= render(out.table[(1, 4)]) == "{{4},{1}}"
    ok &= path is not None and verify_path(G2, path) and dashed in {"1-4-3-2", "1-4-2-3"}
    report(2, ok, f"PS[<1,4>] = {render(out.table[(1, 4)])}, verdict {out.verdict}, path {dashed}")


def test_criterion_3_example_cm_calls(report):
    table = ex3_table()
    tr5, tr7 = CmTrace(), CmTrace()
    a = cm(from_levels(1, EX3_INPUTS[5]), 6, 5, EX3, table, tr5)
    b = cm(from_levels(1, EX3_INPUTS[7]), 6, 5, EX3, table, tr7)
    levels5 = [i for z, i in tr5.deletions if z == 6]
    levels7 = [i for z, i in tr7.deletions if z == 6]
    ok = render(a) == "{{3},{7},{8},{5},{6}}" and b is INVALID
    ok &= levels5 == [3, 1] and levels7 == [3, 1]
    ok &= tr5.singleton_loop_iterations == 1 and tr7.singleton_loop_iterations == 1
    ok &= golden_trace("ex3-cm").passed
    report(
        3,
        ok,
        f"results {render(a)} and {render(b)}, duplicate deletions at levels {levels5}, "
        f"singleton passes {tr5.singleton_loop_iterations}/{tr7.singleton_loop_iterations}",
    )


def test_criterion_4_example_k5(report):
    out = solve_cycle(K5, 1)
    iters = _singleton_iterations(K5)
    count = oracle_count_cycles(K5, 1)
    gold = golden_trace("ex4")
    ok = gold.passed
    ok &= render(out.table[(1, 5)]) == "{{1},{2,3,4,5},{2,3,4,5},{2,3,4,5},{2,3,4,5},{1}}"
    ok &= render(out.table[(2, 2)]) == "{{1},{3,4,5},{2}}"
    ok &= max(iters) <= 1 and count == 24 == 4 * 3 * 2 * 1
    ok &= out.cycle is not None and verify_cycle(K5, out.cycle)
    report(4, ok, f"{gold.checked} pinned lines match, max singleton iterations {max(iters)} over {len(iters)} calls, {count} cycles")


def test_criterion_5_example_five_vertex(report):
    out = solve_cycle(EX5E, 1)
    cycles = set(iter_hamiltonian_cycles(EX5E, 1))
    listed = {(1, 3, 4, 2, 5, 1), (1, 4, 3, 2, 5, 1), (1, 5, 2, 3, 4, 1), (1, 5, 2, 4, 3, 1)}
    gold = golden_trace("ex5e")
    ok = gold.passed and render(out.table[(2, 4)]) == "{{2}}"
    ok &= render(out.table[(1, 5)]) == "{{1},{3,4,5},{2,3,4},{2,3,4},{3,4,5},{1}}"
    ok &= cycles == listed and oracle_count_cycles(EX5E, 1) == 4
    report(5, ok, f"{gold.checked} pinned lines match, oracle cycles {len(cycles)}")


# ------------------------------------------------------------- full sweep


def _run_sweep():
    buf = io.StringIO()
    t0 = time.perf_counter()
    summary = write_sweep(buf, 3, 6)
    return buf.getvalue(), summary, time.perf_counter() - t0


@pytest.fixture(scope="module")
def sweep_run():
    text, summary, wall = _run_sweep()
    records = [json.loads(ln) for ln in text.splitlines()[:-1]]
    return text, summary, records, wall


def _brute_connected_count(n: int) -> int:
    pairs = list(combinations(range(1, n + 1), 2))
    total = 0
    for mask in range(1 << len(pairs)):
        g = nx.Graph()
        g.add_nodes_from(range(1, n + 1))
        g.add_edges_from(p for j, p in enumerate(pairs) if mask >> j & 1)
        total += nx.is_connected(g)
    return total


def test_criterion_6_soundness_sweep(report, sweep_run):
    _, summary, records, wall = sweep_run
    per_n = {r["n"]: r["graph_count"] for r in summary["per_n"]}
    brute = {n: _brute_connected_count(n) for n in SWEEP_COUNTS}
    positives = [r for r in records if r["decider_verdict"] == "hamiltonian"]
    unverified = [r["graph"] for r in positives if not verify_cycle(parse_graph6(r["graph"]), r["certificate"] or [])]
    ok = per_n == SWEEP_COUNTS == brute and len(records) == sum(SWEEP_COUNTS.values())
    ok &= summary["invalid_cycle"] == 0 and not unverified
    ok &= wall < 30 * 60
    report(
        6,
        ok,
        f"counts {per_n} (brute force {brute}), {len(positives)} decider cycles all verified, "
        f"invalid_cycle {summary['invalid_cycle']}, {wall:.1f}s",
    )


def test_criterion_7_agreement_report(report, sweep_run):
    text, summary, records, _ = sweep_run
    again, _, _ = _run_sweep()
    disagreements = [r for r in records if not r["agreement"]]
    bad_certs = [
        r["graph"]
        for r in disagreements
        if not (r["certificate"] and verify_cycle(parse_graph6(r["graph"]), r["certificate"]))
    ]
    ok = text == again and not bad_certs
    ok &= summary["agree_yes"] + summary["agree_no"] + summary["false_negative"] == summary["graph_count"]
    ok &= summary["false_negative"] == len(disagreements)
    report(
        7,
        ok,
        f"agree_yes {summary['agree_yes']}, agree_no {summary['agree_no']}, "
        f"false_negative {summary['false_negative']} (length gate {summary['false_negative_length_gate']}), "
        f"{len(disagreements) - len(bad_certs)}/{len(disagreements)} certificates verified, report reproducible {text == again}",
    )


# ------------------------------------------------------------- properties


def _property_failures() -> dict[str, int]:
    fails = dict.fromkeys(("sizes", "basic_path", "cm", "lpm", "prefix"), 0)
    for n in SWEEP_COUNTS:
        for g in enumerate_connected_labeled(n):
            h = build_hologram(g, 1)
            deg = g.degree(1)
            if (h.num_vertices, h.num_edges) != ((n - 1) ** 2 + 2, 2 * deg + 2 * (n - 2) * (g.e - deg)):
                fails["sizes"] += 1
            if hologram_has_basic_path(h) != (oracle_hamiltonian_cycle(g, 1) is not None):
                fails["basic_path"] += 1
    rng = random.Random(20240611)
    fuzz_graphs = [g for n in (4, 5, 6) for g in enumerate_connected_labeled(n)]
    for _ in range(400):
        g = rng.choice(fuzz_graphs)
        parent, u, k, table = random_cm_case(rng, g)
        try:
            assert_cm_invariants(parent, u, k, g, table)
        except AssertionError:
            fails["cm"] += 1
        # merge laws on the candidates a real table vertex receives from its parents
        h = build_hologram(g, 1)
        real = phg_bp(h, g).table
        w = rng.choice(h.level(k))
        cands = [cm(real[(v, k - 1)], w, k, g, real) for v in bits(h.parents[k][w])]
        merged = init_pathset(w, k)
        for c in cands:
            merged = lpm(merged, c)
        if merged != real[(w, k)] or any(lpm(c, c) != c for c in cands):
            fails["lpm"] += 1
        elif len(merged) != max([1] + [len(c) for c in cands]):
            fails["lpm"] += 1
        if any(c is not INVALID and prefix_intersect(c, c, c.end) != (c, False) for c in cands):
            fails["prefix"] += 1
    return fails


def test_criterion_8_property_suites(report):
    fails = _property_failures()
    report(8, not any(fails.values()), f"failures per property {fails} over n=3..6 plus 400 seeded CM cases")


def test_criterion_8_randomized_laws():
    # the hypothesis-driven versions live in the per-module suites; this is one more route
    from hypothesis import given, settings

    @settings(max_examples=50, deadline=None)
    @given(connected_graphs(min_n=3, max_n=6))
    def check(g):
        h = build_hologram(g, 1)
        table = phg_bp(h, g).table
        for ps in table.values():
            assert lpm(ps, ps) == ps
            if ps is not INVALID:
                assert prefix_intersect(ps, ps, ps.end) == (ps, False)

    check()


def test_criterion_9_scaling_probe(report):
    t0 = time.perf_counter()
    res = scaling_probe([5, 10, 15, 20])
    wall = time.perf_counter() - t0
    iters = max(r.max_singleton_iterations for r in res.rows)
    ok = res.slope <= 8 and iters <= 1 and wall < 300 and all(r.hamiltonian for r in res.rows)
    report(9, ok, f"log-log slope {res.slope:.3f}, max singleton iterations {iters}, {wall:.1f}s")
