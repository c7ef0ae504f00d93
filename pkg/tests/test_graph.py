from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings

from hcp.graph import (
    Edge,
    Graph,
    GraphError,
    ParseError,
    encode_graph6,
    enumerate_connected_labeled,
    graph_from_mask,
    is_connected,
    labeled_pairs,
    parse_edge_list,
    parse_graph6,
    serialize_edge_list,
)

from strategies import connected_digraphs, connected_graphs


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(1, g.n + 1))
    h.add_edges_from((e.u, e.v) for e in g.edges)
    return h


def test_parse_edge_list_g1(g1):
    g = parse_edge_list("U 4 5\n1 3\n1 4\n2 3\n2 4\n3 4")
    assert g.same_as(g1)
    assert g.e == 5 and g.kind == "U"


def test_parse_single_vertex():
    g = parse_edge_list("U 1 0")
    assert g.n == 1 and g.e == 0


def test_duplicate_edge_names_line():
    with pytest.raises(ParseError) as exc:
        parse_edge_list("U 3 3\n1 2\n1 2\n2 3")
    assert exc.value.line == 3


@pytest.mark.parametrize(
    "text, line",
    [
        ("X 3 1\n1 2", 1),
        ("U 3 1\n1 4", 2),
        ("U 3 1\n2 2", 2),
        ("U 3 2\n1 2", 1),
        ("M 3 1\n1 2 Q", 2),
        ("D 3 1\n1 b", 2),
        ("", 1),
    ],
)
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as exc:
        parse_edge_list(text)
    assert exc.value.line == line


def test_comments_and_mixed_edges():
    g = parse_edge_list("# a mixed graph\nM 3 2\n1 2 U\n# arc\n2 3 D\n")
    assert g.kind == "M"
    assert g.has_arc(2, 1) and g.has_arc(2, 3) and not g.has_arc(3, 2)


def test_directed_duplicate_rules():
    Graph.from_edges(2, [Edge(1, 2, True), Edge(2, 1, True)])
    with pytest.raises(GraphError):
        Graph.from_edges(2, [Edge(1, 2, True), Edge(1, 2, True)])
    with pytest.raises(GraphError):
        Graph.from_edges(2, [Edge(1, 2), Edge(2, 1, True)])


@given(connected_graphs(max_n=7))
def test_edge_list_roundtrip(g):
    assert parse_edge_list(serialize_edge_list(g)).same_as(g)


@given(connected_digraphs())
def test_edge_list_roundtrip_directed(g):
    assert parse_edge_list(serialize_edge_list(g)).same_as(g)


def test_graph6_known_codes():
    k3 = parse_graph6("Bw")
    assert k3.n == 3 and k3.edge_set() == parse_edge_list("U 3 3\n1 2\n1 3\n2 3").edge_set()
    one = parse_graph6("@")
    assert one.n == 1 and one.e == 0


def test_graph6_roundtrip_g1(g1):
    assert parse_graph6(encode_graph6(g1)).same_as(g1)


@settings(max_examples=150)
@given(connected_graphs(max_n=9))
def test_graph6_matches_networkx(g):
    ref = nx.to_graph6_bytes(to_nx(g), nodes=range(1, g.n + 1), header=False).decode().strip()
    assert encode_graph6(g) == ref
    assert parse_graph6(ref).same_as(g)


def test_graph6_long_form():
    g = Graph.from_edges(70, [(i, i + 1) for i in range(1, 70)])
    code = encode_graph6(g)
    assert code.startswith("~")
    assert parse_graph6(code).same_as(g)


@pytest.mark.parametrize("bad", ["", "B", "Bww", "B\x7f", "B w"])
def test_graph6_rejects(bad):
    with pytest.raises(ParseError):
        parse_graph6(bad)


def test_graph6_rejects_directed():
    with pytest.raises(GraphError):
        encode_graph6(Graph.from_edges(2, [Edge(1, 2, True)]))


def test_is_connected_cases(g1):
    assert is_connected(g1)
    assert not is_connected(Graph.from_edges(2, []))
    assert is_connected(Graph.from_edges(1, []))
    # weak connectivity ignores arc direction
    assert is_connected(Graph.from_edges(3, [Edge(2, 1, True), Edge(3, 2, True)]))


def test_neighbors(g1):
    assert g1.neighbors(1, "out") == {3, 4}
    assert g1.neighbors(3, "in") == {1, 2, 4}
    sink = Graph.from_edges(2, [Edge(1, 2, True)])
    assert sink.neighbors(2, "out") == frozenset()
    assert sink.neighbors(2, "in") == {1}
    with pytest.raises(GraphError):
        g1.neighbors(9)


@given(connected_graphs(max_n=7))
def test_undirected_in_equals_out(g):
    for v in g.vertices:
        assert g.neighbors(v, "in") == g.neighbors(v, "out")


def test_max_degree(g1, k5):
    assert g1.max_degree == 3
    assert k5.max_degree == 4
    d = Graph.from_edges(3, [Edge(1, 2, True), Edge(1, 3, True)])
    assert d.max_degree == 2


def _brute_connected(n):
    pairs = list(combinations(range(1, n + 1), 2))
    out = []
    for mask in range(1 << len(pairs)):
        h = nx.Graph()
        h.add_nodes_from(range(1, n + 1))
        h.add_edges_from(p for i, p in enumerate(pairs) if mask >> i & 1)
        if nx.is_connected(h):
            out.append(frozenset(h.edges()))
    return out


@pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 4), (4, 38), (5, 728)])
def test_enumeration_matches_independent_filter(n, count):
    got = [frozenset((e.u, e.v) for e in g.edges) for g in enumerate_connected_labeled(n)]
    assert len(got) == count == len(set(got))
    assert got == _brute_connected(n)
    assert all(len(edges) >= n - 1 for edges in got)


def test_enumeration_guard():
    with pytest.raises(GraphError):
        next(enumerate_connected_labeled(8))
    with pytest.raises(GraphError):
        next(enumerate_connected_labeled(0))


def test_graph_from_mask_order():
    pairs = labeled_pairs(3)
    assert pairs == [(1, 2), (1, 3), (2, 3)]
    assert graph_from_mask(3, 0b101).edge_set() == {(1, 2, False), (2, 3, False)}
