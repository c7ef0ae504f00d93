"""Path-hologram Hamiltonian cycle decider with brute-force oracles and a sweep harness."""
from .graph import Edge, Graph, GraphError, ParseError, encode_graph6, is_connected, parse_edge_list, parse_graph6
from .hologram import Hologram, build_hologram, hologram_to_dot
from .pathset import INVALID, PathSet, join, lpm, render
from .cm import cm
from .solver import SolveOutcome, fhc, phg_bp, solve_cycle, solve_path, verify_cycle, verify_path
from .oracle import oracle_count_cycles, oracle_hamiltonian_cycle

__all__ = [
    "Edge", "Graph", "GraphError", "ParseError", "encode_graph6", "is_connected",
    "parse_edge_list", "parse_graph6", "Hologram", "build_hologram", "hologram_to_dot",
    "INVALID", "PathSet", "join", "lpm", "render", "cm", "SolveOutcome", "fhc", "phg_bp",
    "solve_cycle", "solve_path", "verify_cycle", "verify_path", "oracle_count_cycles",
    "oracle_hamiltonian_cycle",
]
