import json
from itertools import product

import networkx as nx
import pytest
from hypothesis import given

from conftest import graphs
from degsim.canon import certificate, iter_labelled_graphs
from degsim.graph import (
    Graph,
    GraphError,
    ParseError,
    RootedGraph,
    bipartite_subgraph,
    coalescence,
    complement,
    complete,
    complete_bipartite,
    components,
    cycle,
    degree_partition,
    delete_edges,
    disjoint_union,
    emit_edge_list,
    emit_graph6,
    empty,
    girth,
    induced_subgraph,
    invariants_report,
    is_tree,
    is_unicyclic,
    laplacian,
    named_graph,
    paley,
    parse_edge_list,
    parse_graph6,
    path,
    petersen,
    read_graph,
    rook,
    shrikhande,
    spanning_tree_count,
    star,
    walk_counts,
)
from degsim.algebra import char_poly_rational


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


# graph6 ------------------------------------------------------------------


def test_graph6_small_cases():
    k2 = parse_graph6("A_")
    assert k2.n == 2 and k2.edges() == [(0, 1)]
    assert parse_graph6("D??") == empty(5)
    assert parse_graph6(">>graph6<<A_") == k2
    assert emit_graph6(Graph(0)) == "?"


def test_graph6_roundtrip_all_graphs_up_to_5():
    for n in range(6):
        for g in iter_labelled_graphs(n):
            s = emit_graph6(g)
            assert parse_graph6(s) == g
            assert emit_graph6(parse_graph6(s)) == s


@given(graphs(max_n=12))
def test_graph6_matches_networkx_encoder(g):
    ours = emit_graph6(g)
    theirs = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
    assert ours == theirs


def test_graph6_long_header():
    g = path(70)
    s = emit_graph6(g)
    assert s[0] == "~"
    assert parse_graph6(s) == g
    assert s == nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()


@pytest.mark.parametrize(
    "text, offset",
    [
        ("", 0),
        ("A", 1),  # payload missing
        ("A_?", 2),  # trailing byte
        ("A`", 1),  # nonzero padding bit
        ("A_ ", 2),  # character outside 63..126
        ("~?", 2),  # truncated long header
        (">>graph6<<A", 11),
    ],
)
def test_graph6_errors_carry_offsets(text, offset):
    with pytest.raises(ParseError) as exc:
        parse_graph6(text)
    assert exc.value.offset == offset


# edge lists ----------------------------------------------------------------


def test_edge_list_roundtrip_and_name():
    g = petersen()
    name, h = parse_edge_list(emit_edge_list(g, "petersen"))
    assert name == "petersen" and h == g


def test_edge_list_comments_and_isolated_vertices():
    name, g = parse_edge_list("# a comment\nn 4\n0 1  # trailing\n\n")
    assert name is None and g.n == 4 and g.edges() == [(0, 1)]


@pytest.mark.parametrize("text", ["0 1\n1 x\n", "n four\n", "0 0\n", "0 1 2\n"])
def test_edge_list_errors(text):
    with pytest.raises(ParseError):
        parse_edge_list(text)


def test_edge_list_error_offset_points_at_line():
    with pytest.raises(ParseError) as exc:
        parse_edge_list("0 1\nbad line here\n")
    assert exc.value.offset == 4


def test_read_graph_autodetect():
    g = cycle(5)
    assert read_graph(emit_graph6(g) + "\n") == g
    assert read_graph(emit_edge_list(g)) == g
    assert read_graph(emit_edge_list(g, "c5")) == g


# operations ----------------------------------------------------------------


def test_degree_partition_examples():
    p = degree_partition(star(3))
    assert p.parts == ((0,), (1, 2, 3)) and p.degrees == (3, 1)
    assert degree_partition(petersen()).parts == (tuple(range(10)),)
    c5p = Graph.from_edges(6, cycle(5).edges() + [(0, 5)])
    p = degree_partition(c5p)
    assert p.degrees == (3, 2, 1) and p.sizes() == (1, 4, 1)


def test_complement_examples():
    assert complement(complete(5)) == empty(5)
    assert certificate(complement(cycle(5))) == certificate(cycle(5))


def test_complement_involution_and_partition_exhaustive():
    for n in range(7):
        for g in iter_labelled_graphs(n) if n <= 5 else _sample(n):
            assert complement(complement(g)) == g
            p = degree_partition(g)
            assert sorted(v for part in p.parts for v in part) == list(range(n))
            assert list(p.degrees) == sorted(set(p.degrees), reverse=True)


def _sample(n):
    from itertools import islice

    return islice(iter_labelled_graphs(n), 0, None, 97)


def test_induced_and_bipartite_subgraphs():
    assert induced_subgraph(complete(4), [0, 2, 3]) == complete(3)
    g = petersen()
    assert induced_subgraph(g, range(10)) == g
    assert induced_subgraph(path(4), [0, 3]) == empty(2)
    assert certificate(bipartite_subgraph(complete(4), {0, 1}, {2, 3})) == certificate(cycle(4))
    assert bipartite_subgraph(disjoint_union(complete(2), complete(2)), [0, 1], [2, 3]).num_edges() == 0
    assert bipartite_subgraph(complete(5), [0, 1], [2, 3, 4]).num_edges() == 6
    with pytest.raises(GraphError):
        bipartite_subgraph(complete(4), [0, 1], [1, 2])
    with pytest.raises(GraphError):
        induced_subgraph(complete(3), [5])


def test_coalescence():
    p3 = coalescence(RootedGraph(path(2), 1), RootedGraph(path(2), 0))
    assert p3.graph == path(3) and p3.root == 1
    a, b = RootedGraph(petersen(), 3), RootedGraph(cycle(5), 2)
    c = coalescence(a, b)
    assert c.graph.n == 14 and c.graph.num_edges() == 20
    assert c.graph.degree(3) == 3 + 2
    assert c.graph.degrees()[:3] == petersen().degrees()[:3]


def test_delete_and_add_edges():
    assert certificate(delete_edges(complete(3), [(0, 1)])) == certificate(path(3))
    assert delete_edges(complete(4), complete(4).edges()) == empty(4)
    assert delete_edges(petersen(), [(0, 1)]).num_edges() == 14
    with pytest.raises(GraphError, match=r"\(0, 2\)"):
        delete_edges(petersen(), [(0, 2)])


def test_graph_validation():
    with pytest.raises(GraphError):
        Graph(2, [0b10, 0])  # asymmetric
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 2)])


# invariants ----------------------------------------------------------------


def test_invariants_examples():
    rep = invariants_report(cycle(7))
    assert rep["girth"] == 7 and rep["spanning_trees"] == 7
    assert walk_counts(path(3), 2)[2] == 6
    tree = star(4)
    rep = invariants_report(tree)
    assert rep["girth"] == 0 and rep["spanning_trees"] == 1
    assert list(json.loads(json.dumps(rep))) == [
        "vertices",
        "edges",
        "isolated",
        "components",
        "bipartite_components",
        "girth",
        "spanning_trees",
        "walks",
    ]
    assert invariants_report(disjoint_union(cycle(3), cycle(4), empty(1)))["bipartite_components"] == 2


def test_unicyclic_predicate():
    assert is_unicyclic(cycle(5))
    assert not is_unicyclic(path(5))
    assert not is_unicyclic(disjoint_union(cycle(3), cycle(3)))
    assert is_tree(star(3))


@given(graphs(max_n=9))
def test_invariants_match_networkx(g):
    h = to_nx(g)
    rep = invariants_report(g)
    assert rep["components"] == nx.number_connected_components(h)
    assert rep["isolated"] == nx.number_of_isolates(h)
    bip = sum(1 for c in nx.connected_components(h) if nx.is_bipartite(h.subgraph(c)))
    assert rep["bipartite_components"] == bip
    gi = nx.girth(h)
    assert rep["girth"] == (0 if gi == float("inf") else gi)
    if g.n and nx.is_connected(h):
        assert rep["spanning_trees"] == round(nx.number_of_spanning_trees(h))
    else:
        assert rep["spanning_trees"] == 0


def test_spanning_trees_from_laplacian_coefficient():
    # t(G) = (-1)^(n-1) [t^1] charL / n for connected G
    for n in range(1, 7):
        for g in _sample(n) if n == 6 else iter_labelled_graphs(n):
            if len(components(g)) != 1:
                continue
            c = char_poly_rational(laplacian(g)).coeffs
            lin = c[1] if len(c) > 1 else 0
            assert spanning_tree_count(g) == (-1) ** (n - 1) * lin / n


def test_girth_equals_spanning_trees_for_unicyclic():
    from degsim.search import enumerate_unicyclic

    for n in range(3, 9):
        for g in enumerate_unicyclic(n):
            assert girth(g) == spanning_tree_count(g)


def test_walk_counts_brute_force():
    for n in range(1, 6):
        for g in _sample(n) if n == 5 else iter_labelled_graphs(n):
            counts = walk_counts(g, 4)
            for k in range(5):
                brute = sum(
                    1
                    for w in product(range(n), repeat=k + 1)
                    if all(g.has_edge(a, b) for a, b in zip(w, w[1:]))
                )
                assert counts[k] == brute


# named graphs ----------------------------------------------------------------


def test_named_graphs():
    assert named_graph("K4") == complete(4)
    assert named_graph("S3") == star(3)
    assert named_graph("petersen").num_edges() == 15
    assert nx.is_isomorphic(to_nx(petersen()), nx.petersen_graph())
    assert nx.is_isomorphic(to_nx(rook(4, 4)), nx.cartesian_product(nx.complete_graph(4), nx.complete_graph(4)))
    assert nx.is_isomorphic(to_nx(paley(13)), nx.paley_graph(13).to_undirected())
    assert shrikhande().degrees() == [6] * 16
    assert complete_bipartite(2, 3).num_edges() == 6
    with pytest.raises(GraphError):
        named_graph("Q7")
