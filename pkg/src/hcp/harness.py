"""Exhaustive small-graph sweep, scaling probe, and path-set semantics audit."""
from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field
from itertools import combinations
from multiprocessing import Pool
from typing import Iterable, Iterator

from .graph import Graph, GraphError, encode_graph6, enumerate_connected_labeled, parse_graph6
from .hologram import build_hologram
from .oracle import oracle_basic_path_sets, oracle_hamiltonian_cycle
from .solver import HAMILTONIAN, NON_HAMILTONIAN, phg_bp, solve_cycle, verify_cycle

SWEEP_MAX_N = 6


@dataclass
class GraphVerdictRecord:
    graph: str
    oracle_verdict: str
    decider_verdict: str
    agreement: bool
    certificate: list[int] | None
    cm_singleton_iterations: int
    runtime: float | None

    def to_json(self) -> str:
        return json.dumps(asdict(self), separators=(",", ":"))


@dataclass
class SweepReport:
    n: int
    graph_count: int = 0
    agree_yes: int = 0
    agree_no: int = 0
    false_negative: int = 0
    invalid_cycle: int = 0
    # oracle-Hamiltonian graphs whose final path set was already too short
    false_negative_length_gate: int = 0
    max_singleton_iterations: int = 0
    wall_time: float | None = None

    def add(self, rec: GraphVerdictRecord, *, gate_failed: bool, invalid: bool) -> None:
        self.graph_count += 1
        if invalid:
            self.invalid_cycle += 1
        if rec.oracle_verdict == HAMILTONIAN:
            if rec.decider_verdict == HAMILTONIAN:
                self.agree_yes += 1
            else:
                self.false_negative += 1
                self.false_negative_length_gate += gate_failed
        else:
            self.agree_no += 1
        self.max_singleton_iterations = max(self.max_singleton_iterations, rec.cm_singleton_iterations)


class OracleDisagreement(RuntimeError):
    """The decider produced a verified cycle that the oracle says cannot exist."""


def classify(g: Graph, *, timing: bool = False) -> tuple[GraphVerdictRecord, bool, bool]:
    """Solve ``g`` from vertex 1 and compare against the oracle.

    Returns the record, whether the final path set failed the length gate,
    and whether the decider emitted a cycle that does not verify.
    """
    t0 = time.perf_counter()
    out = solve_cycle(g, 1)
    runtime = time.perf_counter() - t0
    truth = oracle_hamiltonian_cycle(g, 1)
    oracle_verdict = HAMILTONIAN if truth else NON_HAMILTONIAN
    invalid = out.cycle is not None and not verify_cycle(g, out.cycle)
    if out.is_hamiltonian and truth is None:
        raise OracleDisagreement(f"decider cycle {out.cycle} on {encode_graph6(g)} but oracle found none")
    if out.is_hamiltonian:
        cert = list(out.cycle)
    elif truth is not None:
        cert = list(truth)
    else:
        cert = None
    gate_failed = g.n >= 3 and len(out.final_pathset(g.n)) != g.n + 1
    rec = GraphVerdictRecord(
        graph=encode_graph6(g),
        oracle_verdict=oracle_verdict,
        decider_verdict=out.verdict,
        agreement=oracle_verdict == out.verdict,
        certificate=cert,
        cm_singleton_iterations=out.stats.max_singleton_iterations,
        runtime=round(runtime, 6) if timing else None,
    )
    return rec, gate_failed, invalid


def _work(args: tuple[str, bool]):
    g6, timing = args
    return classify(parse_graph6(g6), timing=timing)


def parse_range(text: str) -> tuple[int, int]:
    """``"3..6"`` or ``"5"`` to an inclusive pair."""
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise ValueError(f"bad range {text!r}; expected A..B") from None
    if a < 1 or b < a:
        raise ValueError(f"bad range {text!r}")
    return a, b


def sweep(
    n_from: int,
    n_to: int,
    *,
    jobs: int = 1,
    timing: bool = False,
    allow_large: bool = False,
) -> Iterator[GraphVerdictRecord | SweepReport]:
    """Yield one record per connected labeled graph, then one report per order.

    Records come out in enumeration order whatever ``jobs`` is. With
    ``timing`` off, runtimes are omitted so that reports are reproducible
    byte for byte.
    """
    if n_to > SWEEP_MAX_N and not allow_large:
        raise GraphError(f"sweeps beyond n={SWEEP_MAX_N} need allow_large")
    pool = Pool(jobs) if jobs > 1 else None
    try:
        for n in range(n_from, n_to + 1):
            t0 = time.perf_counter()
            report = SweepReport(n)
            codes = [(encode_graph6(g), timing) for g in enumerate_connected_labeled(n, allow_large=allow_large)]
            results: Iterable = pool.imap(_work, codes, chunksize=64) if pool else map(_work, codes)
            for rec, gate_failed, invalid in results:
                report.add(rec, gate_failed=gate_failed, invalid=invalid)
                yield rec
            report.wall_time = round(time.perf_counter() - t0, 3) if timing else None
            yield report
    finally:
        if pool is not None:
            pool.close()
            pool.join()


def summarize(reports: list[SweepReport]) -> dict:
    keys = ("graph_count", "agree_yes", "agree_no", "false_negative", "invalid_cycle", "false_negative_length_gate")
    total = {k: sum(getattr(r, k) for r in reports) for k in keys}
    total["max_singleton_iterations"] = max((r.max_singleton_iterations for r in reports), default=0)
    return {"summary": True, **total, "per_n": [asdict(r) for r in reports]}


def write_sweep(lines_out, n_from: int, n_to: int, *, jobs: int = 1, timing: bool = False) -> dict:
    """Stream JSON lines (records, then the summary object) to ``lines_out``."""
    reports = []
    for item in sweep(n_from, n_to, jobs=jobs, timing=timing):
        if isinstance(item, SweepReport):
            reports.append(item)
        else:
            lines_out.write(item.to_json() + "\n")
    summary = summarize(reports)
    lines_out.write(json.dumps(summary, separators=(",", ":")) + "\n")
    return summary


# ------------------------------------------------------------------- probe


@dataclass
class ProbeRow:
    n: int
    runtime: float
    max_singleton_iterations: int
    cm_calls: int
    hamiltonian: bool


@dataclass
class ProbeResult:
    rows: list[ProbeRow]
    slope: float | None = None

    def table(self) -> str:
        out = ["n  runtime_s  max_singleton_iter  cm_calls  verdict"]
        for r in self.rows:
            out.append(
                f"{r.n:<3}{r.runtime:<11.4f}{r.max_singleton_iterations:<20}{r.cm_calls:<10}"
                f"{'hamiltonian' if r.hamiltonian else 'non_hamiltonian'}"
            )
        if self.slope is not None:
            out.append(f"log-log slope: {self.slope:.3f}")
        return "\n".join(out)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, list(combinations(range(1, n + 1), 2)))


def loglog_slope(xs: list[float], ys: list[float]) -> float:
    lx = [math.log(x) for x in xs]
    ly = [math.log(y) for y in ys]
    mx = sum(lx) / len(lx)
    my = sum(ly) / len(ly)
    num = sum((a - mx) * (b - my) for a, b in zip(lx, ly))
    den = sum((a - mx) ** 2 for a in lx)
    return num / den


def scaling_probe(n_list: Iterable[int]) -> ProbeResult:
    rows = []
    for n in n_list:
        if n < 3:
            raise ValueError("probe sizes must be at least 3")
        g = complete_graph(n)
        t0 = time.perf_counter()
        out = solve_cycle(g, 1)
        rows.append(
            ProbeRow(n, time.perf_counter() - t0, out.stats.max_singleton_iterations, out.stats.cm_calls, out.is_hamiltonian)
        )
    slope = None
    if len(rows) >= 2:
        slope = loglog_slope([r.n for r in rows], [max(r.runtime, 1e-9) for r in rows])
    return ProbeResult(rows, slope)


# ------------------------------------------------------------------- audit


@dataclass
class AuditReport:
    graphs: int = 0
    vertices: int = 0
    matches: int = 0
    mismatches: int = 0
    first_mismatches: list[dict] = field(default_factory=list)


def path_set_audit(n_from: int, n_to: int, *, keep: int = 5) -> AuditReport:
    """Compare every table entry against the exhaustive longest-basic-path sets.

    Mismatches are counted, not raised: they describe how the propagated
    tables relate to the declarative definition.
    """
    from .pathset import render

    rep = AuditReport()
    for n in range(max(n_from, 3), n_to + 1):
        for g in enumerate_connected_labeled(n):
            h = build_hologram(g, 1)
            table = phg_bp(h, g).table
            rep.graphs += 1
            for hv in h.vertices():
                rep.vertices += 1
                want = oracle_basic_path_sets(h, hv)
                got = table[hv]
                if want == got:
                    rep.matches += 1
                else:
                    rep.mismatches += 1
                    if len(rep.first_mismatches) < keep:
                        rep.first_mismatches.append(
                            {"graph": encode_graph6(g), "vertex": list(hv), "table": render(got), "oracle": render(want)}
                        )
    return rep
