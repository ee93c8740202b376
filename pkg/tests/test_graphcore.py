from __future__ import annotations

import networkx as nx
import pytest

from colorful_assoc.errors import InputError
from colorful_assoc.graphcore import (
    Graph,
    all_graphs,
    canonical_form,
    complete_graph,
    connected_components,
    cycle_graph,
    disjoint_union,
    induced_subgraph,
    is_connected,
    null_graph,
    path_graph,
    star_graph,
    vertex_connectivity,
)


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.nodes)
    h.add_edges_from(g.edges)
    return h


def nx_connectivity(g: Graph) -> int:
    # K1 counts as 1-connected; complete graphs as (n-1)-connected
    h = to_nx(g)
    if len(g) == 1:
        return 1
    if not nx.is_connected(h):
        return 0
    return nx.node_connectivity(h)


@pytest.mark.parametrize(
    "g, k",
    [
        (complete_graph(1), 1),
        (complete_graph(2), 1),
        (path_graph(3), 1),
        (cycle_graph(3), 2),
        (cycle_graph(5), 2),
        (complete_graph(4), 3),
        (complete_graph(5), 4),
        (star_graph(3), 1),
        (null_graph(4), 0),
    ],
)
def test_connectivity_named(g, k):
    assert vertex_connectivity(g) == k


def test_connectivity_matches_networkx_on_all_small_graphs():
    for n in range(1, 6):
        for g in all_graphs(n):
            assert vertex_connectivity(g) == nx_connectivity(g), g


def test_components_match_networkx():
    for n in range(1, 6):
        for g in all_graphs(n):
            ours = sorted(sorted(c) for c in connected_components(g))
            theirs = sorted(sorted(c) for c in nx.connected_components(to_nx(g)))
            assert ours == theirs


def test_all_graphs_counts_isomorphism_classes():
    # number of unlabelled simple graphs on n nodes
    assert [len(all_graphs(n)) for n in range(1, 6)] == [1, 2, 4, 11, 34]


def test_canonical_form_is_isomorphism_invariant():
    a = Graph("abcd", [("a", "b"), ("b", "c"), ("c", "d")])
    b = Graph("abcd", [("c", "a"), ("a", "d"), ("d", "b")])
    assert canonical_form(a) == canonical_form(b)
    assert canonical_form(a) != canonical_form(star_graph(3))


def test_disjoint_union_relabels():
    g = disjoint_union(complete_graph(1), path_graph(3))
    assert g.nodes == ("a", "b", "c", "d")
    assert g.sorted_edges() == [("b", "c"), ("c", "d")]
    assert len(connected_components(g)) == 2


def test_induced_subgraph_and_errors():
    g = cycle_graph(4)
    h = induced_subgraph(g, "abc")
    assert h.sorted_edges() == [("a", "b"), ("b", "c")]
    with pytest.raises(InputError):
        induced_subgraph(g, "az")
    with pytest.raises(InputError):
        Graph("ab", [("a", "a")])
    with pytest.raises(InputError):
        Graph("ab", [("a", "z")])


def test_empty_graph_is_not_connected():
    assert not is_connected(Graph([], []))
    assert is_connected(complete_graph(1))
