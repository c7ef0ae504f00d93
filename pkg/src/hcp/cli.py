"""Command-line front end: ``hcp solve|oracle|sweep|golden|hologram|probe|audit``."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from . import goldens
from .graph import Graph, GraphError, ParseError, parse_edge_list, parse_graph6
from .harness import OracleDisagreement, parse_range, path_set_audit, scaling_probe, write_sweep
from .hologram import build_hologram, hologram_to_dot
from .oracle import oracle_count_cycles, oracle_hamiltonian_cycle
from .solver import solve_cycle, solve_path, verify_cycle

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_FAIL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def read_graph(path: str) -> Graph:
    """Edge-list text, or a single graph6 line."""
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    body = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if body and body[0].split()[0] in ("U", "D", "M"):
        return parse_edge_list(text)
    if len(body) == 1 and " " not in body[0]:
        return parse_graph6(body[0])
    return parse_edge_list(text)


def _dash(seq) -> str:
    return "-".join(map(str, seq))


def cmd_solve(args) -> int:
    g = read_graph(args.file)
    if args.mode == "path":
        out = solve_path(g, tie_break=args.tie_break)
        if out.traceable:
            print(f"traceable {_dash(out.path)}")
        else:
            print("non_traceable")
        return EXIT_OK
    res = solve_cycle(g, args.start, tie_break=args.tie_break, trace=args.trace)
    if args.trace:
        print("\n".join(res.trace))
    if res.cycle is not None and not verify_cycle(g, res.cycle):
        print(f"unverified cycle {_dash(res.cycle)}", file=sys.stderr)
        return EXIT_FAIL
    print(res.verdict if res.cycle is None else f"{res.verdict} {_dash(res.cycle)}")
    if args.stats:
        print(json.dumps(asdict(res.stats), separators=(",", ":")))
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = read_graph(args.file)
    if args.count:
        print(oracle_count_cycles(g, args.start))
        return EXIT_OK
    cyc = oracle_hamiltonian_cycle(g, args.start)
    print("non_hamiltonian" if cyc is None else f"hamiltonian {_dash(cyc)}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    lo, hi = parse_range(args.n)
    try:
        if args.out == "-":
            summary = write_sweep(sys.stdout, lo, hi, jobs=args.jobs, timing=args.timing)
        else:
            with open(args.out, "w", encoding="utf-8") as fh:
                summary = write_sweep(fh, lo, hi, jobs=args.jobs, timing=args.timing)
    except OracleDisagreement as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAIL
    short = {k: v for k, v in summary.items() if k != "per_n"}
    print(json.dumps(short, separators=(",", ":")), file=sys.stderr)
    return EXIT_FAIL if summary["invalid_cycle"] else EXIT_OK


def cmd_golden(args) -> int:
    ids = goldens.EXAMPLE_IDS if args.example_id == "all" else (args.example_id,)
    failed = False
    for ex in ids:
        res = goldens.golden_trace(ex, tie_break=args.tie_break)
        if args.verbose:
            print("\n".join(res.lines))
        if res.passed:
            print(f"{ex}: pass ({res.checked} pinned values)")
        else:
            failed = True
            print(f"{ex}: FAIL at {res.divergence}")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_hologram(args) -> int:
    g = read_graph(args.file)
    h = build_hologram(g, args.start)
    dot = hologram_to_dot(h)
    if args.dot == "-":
        sys.stdout.write(dot)
    else:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(dot)
        print(f"|V_H|={h.num_vertices} |E_H|={h.num_edges}")
    return EXIT_OK


def cmd_probe(args) -> int:
    sizes = [int(x) for x in args.complete.split(",") if x.strip()]
    res = scaling_probe(sizes)
    print(res.table())
    return EXIT_OK


def cmd_audit(args) -> int:
    lo, hi = parse_range(args.n)
    rep = path_set_audit(lo, hi)
    print(json.dumps(asdict(rep), separators=(",", ":")))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hcp", description="Path-hologram Hamiltonian cycle decider and test harness.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="decide one graph")
    s.add_argument("file", help="edge-list or graph6 file, '-' for stdin")
    s.add_argument("--start", type=int, default=1)
    s.add_argument("--mode", choices=("cycle", "path"), default="cycle")
    s.add_argument("--trace", action="store_true", help="print every path set as it is computed")
    s.add_argument("--tie-break", choices=("asc", "desc"), default="asc")
    s.add_argument("--stats", action="store_true", help="print CM iteration counts and runtime")
    s.set_defaults(func=cmd_solve)

    o = sub.add_parser("oracle", help="brute-force ground truth")
    o.add_argument("file")
    o.add_argument("--start", type=int, default=1)
    o.add_argument("--count", action="store_true", help="count directed circuits from the start vertex")
    o.set_defaults(func=cmd_oracle)

    w = sub.add_parser("sweep", help="compare decider and oracle on every connected labeled graph")
    w.add_argument("--n", required=True, help="order range A..B")
    w.add_argument("--jobs", type=int, default=1)
    w.add_argument("--out", required=True, help="JSON-lines report path, '-' for stdout")
    w.add_argument("--timing", action="store_true", help="include runtimes (makes the report non-reproducible)")
    w.set_defaults(func=cmd_sweep)

    gd = sub.add_parser("golden", help="replay a worked example against its pinned transcript")
    gd.add_argument("example_id", choices=goldens.EXAMPLE_IDS + ("all",))
    gd.add_argument("--tie-break", choices=("asc", "desc"), default="asc")
    gd.add_argument("-v", "--verbose", action="store_true")
    gd.set_defaults(func=cmd_golden)

    hg = sub.add_parser("hologram", help="export the hologram as DOT")
    hg.add_argument("file")
    hg.add_argument("--start", type=int, default=1)
    hg.add_argument("--dot", required=True, help="output path, '-' for stdout")
    hg.set_defaults(func=cmd_hologram)

    pr = sub.add_parser("probe", help="time the decider on complete graphs")
    pr.add_argument("--complete", required=True, help="comma-separated orders, e.g. 5,10,15")
    pr.set_defaults(func=cmd_probe)

    au = sub.add_parser("audit", help="compare path-set tables with exhaustive longest basic paths")
    au.add_argument("--n", required=True)
    au.set_defaults(func=cmd_audit)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
