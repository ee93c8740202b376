from __future__ import annotations

import networkx as nx
import pytest
from networkx.algorithms.isomorphism import DiGraphMatcher

from colorful_assoc.coloring import ColorTemplate, ColorWord, Palette, palette_kinds
from colorful_assoc.errors import UnsupportedError
from colorful_assoc.graphcore import (
    all_graphs,
    complete_graph,
    cycle_graph,
    disjoint_union,
    is_connected,
    null_graph,
    path_graph,
    star_graph,
)
from colorful_assoc.poset import (
    FacePoset,
    build_collection,
    build_component,
    classic_kg_poset,
    direct_product,
    f_vector,
    simplex_poset,
)
from colorful_assoc.tubing import Universal
from colorful_assoc.verify import (
    check_diamond,
    disconnected_product_check,
    face_factors,
    flag_graph,
    is_abstract_polytope,
    is_regular,
    poset_isomorphic,
    product_structure_check,
    surface_report,
)

F = frozenset


def hasse(pos: FacePoset) -> nx.DiGraph:
    # the bounding faces are fixed by every automorphism; leaving them out
    # keeps VF2 from branching on their huge neighbourhoods
    hubs = {pos.least, pos.greatest}
    d = nx.DiGraph()
    for i, r in enumerate(pos.ranks):
        if i not in hubs:
            d.add_node(i, rank=r)
    d.add_edges_from((a, b) for a, b in pos.covers if a in d and b in d)
    return d


def automorphism_count(pos: FacePoset) -> int:
    d = hasse(pos)
    m = DiGraphMatcher(d, d, node_match=lambda a, b: a["rank"] == b["rank"])
    return sum(1 for _ in m.isomorphisms_iter())


def nx_isomorphic(a: FacePoset, b: FacePoset) -> bool:
    return nx.is_isomorphic(hasse(a), hasse(b), node_match=lambda x, y: x["rank"] == y["rank"])


# -- axioms ------------------------------------------------------------------

def test_axioms_pass_on_all_small_components():
    for n in range(1, 5):
        for g in all_graphs(n):
            for p in palette_kinds(n).values():
                for pos in build_collection(g, p):
                    rep = is_abstract_polytope(pos)
                    assert rep.ok, (g, p, rep.witnesses)


def test_axioms_pass_on_classic_and_products():
    for g in (path_graph(4), cycle_graph(4), star_graph(3)):
        assert is_abstract_polytope(classic_kg_poset(g)).ok
    prism = direct_product(classic_kg_poset(path_graph(3)), simplex_poset(1))
    assert is_abstract_polytope(prism).ok


@pytest.mark.parametrize("name", ["face", "cover"])
def test_mutations_are_caught(name):
    (pos,) = build_collection(path_graph(4), "xyz")
    for target in (1, 100, 200, len(pos) - 1):
        if name == "face":
            bad = pos.without_face(target)
        else:
            bad = pos.without_cover(sorted(pos.covers)[target])
        rep = is_abstract_polytope(bad)
        assert not rep.ok
        assert rep.witnesses


def test_diamond_witness_names_interval():
    pos = FacePoset([-1, 0, 0, 0, 1], [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
    ok, wit = check_diamond(pos)
    assert not ok and wit


def test_simple_check_flags_non_simple_polytope():
    # the square pyramid is a polytope whose apex has degree 4
    ranks = [-1] + [0] * 5 + [1] * 8 + [2] * 5 + [3]
    v = {x: i + 1 for i, x in enumerate("abcdo")}
    edges = [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "o"), ("b", "o"), ("c", "o"), ("d", "o")]
    e = {pair: 6 + i for i, pair in enumerate(edges)}
    faces = [("a", "b", "c", "d"), ("a", "b", "o"), ("b", "c", "o"), ("c", "d", "o"), ("d", "a", "o")]
    covers = [(0, v[x]) for x in "abcdo"]
    for (x, y), k in e.items():
        covers += [(v[x], k), (v[y], k)]
    for j, f in enumerate(faces):
        for (x, y), k in e.items():
            if x in f and y in f:
                covers.append((k, 14 + j))
        covers.append((14 + j, 19))
    pos = FacePoset(ranks, covers)
    rep = is_abstract_polytope(pos)
    assert rep.bounded and rep.diamond_ok and rep.strongly_flag_connected
    assert not rep.simple


# -- surfaces ----------------------------------------------------------------

def test_surface_reports():
    (p4,) = build_collection(path_graph(4), "xyz")
    rep = surface_report(p4, path_graph(4), "xyz")
    assert (rep.V, rep.E, rep.F, rep.euler, rep.genus) == (84, 126, 36, -6, 4)
    assert rep.pseudomanifold_ok and rep.orientable

    g4 = null_graph(4)
    (t,) = build_collection(g4, "xyz")
    rep = surface_report(t, g4, "xyz")
    assert rep.census == {6: 12} and rep.euler == 0


def test_surface_report_notes_reference_discrepancies():
    g = star_graph(3)
    (pos,) = build_collection(g, "xxy")
    rep = surface_report(pos, g, Palette.of("xxy"))
    assert rep.census == {4: 9, 5: 6, 6: 3, 10: 6}
    text = " ".join(rep.notes)
    assert "12-gons" in text and "genus 2" in text


def test_surface_report_needs_rank_three():
    (pos,) = build_collection(path_graph(3), "xy")
    with pytest.raises(UnsupportedError):
        surface_report(pos)


# -- isomorphism -------------------------------------------------------------

def test_isomorphism_agrees_with_networkx():
    pool = [classic_kg_poset(g) for g in all_graphs(4)]
    for n in (3, 4):
        for g in all_graphs(n):
            for p in palette_kinds(n).values():
                pool.extend(build_collection(g, p)[:1])
    for a in pool:
        for b in pool:
            if f_vector(a) == f_vector(b) and len(a) <= 130:
                assert poset_isomorphic(a, b) == nx_isomorphic(a, b)


def test_isomorphism_distinguishes_equal_f_vectors():
    prism = build_collection(disjoint_union(complete_graph(1), path_graph(3)), "xyz")[0]
    cyclo = classic_kg_poset(cycle_graph(4))
    assert f_vector(prism) == f_vector(cyclo)
    assert not poset_isomorphic(prism, cyclo)


def test_isomorphism_on_non_polytopes():
    a = FacePoset([-1, 0, 0, 0, 1, 1], [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 5)])
    b = FacePoset([-1, 0, 0, 0, 1, 1], [(0, 3), (0, 2), (0, 1), (3, 5), (2, 5), (1, 4)])
    c = FacePoset([-1, 0, 0, 0, 1, 1], [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 5)])
    assert poset_isomorphic(a, b)
    assert poset_isomorphic(a, c)
    d = FacePoset([-1, 0, 0, 1, 1, 2], [(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (3, 5)])
    e = FacePoset([-1, 0, 0, 1, 1, 2], [(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (3, 5)])
    assert poset_isomorphic(d, e) == nx_isomorphic(d, e)


# -- regularity --------------------------------------------------------------

@pytest.mark.parametrize(
    "g, regular",
    [
        (complete_graph(2), True),
        (complete_graph(3), True),
        (path_graph(3), True),
        (null_graph(3), True),
        (null_graph(4), True),
        (path_graph(4), False),
        (cycle_graph(4), False),
        (complete_graph(4), False),
        (star_graph(3), False),
    ],
)
def test_regularity_and_group_order(g, regular):
    pos = build_collection(g, palette_kinds(len(g))["full"])[0]
    verdict, order = is_regular(pos)
    assert verdict is regular
    assert order == automorphism_count(pos)
    flags, _ = flag_graph(pos)
    assert (order == len(flags)) is regular


# -- products ----------------------------------------------------------------

def two_tube_face():
    g = path_graph(6)
    ab, ae = F("ab"), F("abcde")
    words = (
        (ab, ColorWord(("pink",), ("green",))),
        (ae, ColorWord(("blue",), ("pink", "pink"))),
        (Universal(g.node_set), ColorWord((), ())),
    )
    return g, Palette.of(["blue", "green", "pink", "pink", "pink"]), ColorTemplate((ab, ae), words)


def test_two_tube_face_is_pentagonal_prism():
    g, p, face = two_tube_face()
    section = build_component(g, p, face)
    assert f_vector(section) == (10, 15, 7, 1)
    assert [f_vector(x) for x in face_factors(g, face)] == [(2, 1), (5, 5, 1), (1,)]
    assert product_structure_check(g, p, face)
    prism = direct_product(classic_kg_poset(path_graph(3)), simplex_poset(1))
    assert poset_isomorphic(section, prism)


def test_product_structure_on_small_faces():
    for g in (path_graph(4), cycle_graph(4), star_graph(3)):
        (pos, *_) = build_collection(g, "xyz")
        for f in range(1, len(pos)):
            if pos.ranks[f] <= 1:
                assert product_structure_check(g, "xyz", pos.labels[f])


def test_disconnected_products():
    for n in (3, 4):
        for g in all_graphs(n):
            if is_connected(g):
                continue
            for p in palette_kinds(n).values():
                assert disconnected_product_check(g, p), (g, p)
    with pytest.raises(UnsupportedError):
        disconnected_product_check(path_graph(3), "xy")
