from __future__ import annotations

from collections import Counter
from math import factorial, perm

import pytest

from colorful_assoc.coloring import (
    ColorTemplate,
    ColorWord,
    Palette,
    arrangements,
    covers,
    enumerate_children,
    enumerate_templates,
    palette_kinds,
    root_templates,
    sub_multisets,
    template_from_colored_tubing,
    validate_template,
)
from colorful_assoc.errors import InputError
from colorful_assoc.graphcore import (
    all_graphs,
    complete_graph,
    cycle_graph,
    is_connected,
    null_graph,
    path_graph,
    vertex_connectivity,
)
from colorful_assoc.tubing import Universal, enumerate_maximal_tubings

F = frozenset


def reachable(g, root):
    seen = {root}
    stack = [root]
    while stack:
        for c in enumerate_children(g, stack.pop()):
            if c not in seen:
                seen.add(c)
                stack.append(c)
    return seen


def distinct_orderings(p: Palette) -> int:
    count = factorial(len(p))
    for m in p.counter().values():
        count //= factorial(m)
    return count


def test_palette_kinds():
    assert Palette.of(["a", "b"]).kind == "full"
    assert Palette.of(["a", "a"]).kind == "monochrome"
    assert Palette.of(["a", "a", "b"]).kind == "mixed"
    assert Palette.of([]).kind == "full"
    assert Palette.of(["b", "a"]) == Palette.of(["a", "b"])


def test_multiset_helpers():
    pool = Counter("aab")
    assert sorted(arrangements(pool, 2)) == [("a", "a"), ("a", "b"), ("b", "a")]
    assert sorted(sub_multisets(pool, 2)) == [("a", "a"), ("a", "b")]
    assert pool == Counter("aab")


@pytest.mark.parametrize(
    "g", [path_graph(4), cycle_graph(4), complete_graph(4), cycle_graph(5), complete_graph(5)]
)
def test_full_palette_root_count(g):
    n, k = len(g), vertex_connectivity(g)
    assert len(root_templates(g, palette_kinds(n)["full"])) == perm(n - 1, k - 1)


def test_root_words_have_connectivity_shape():
    g = complete_graph(4)
    for r in root_templates(g, "xyz"):
        (owner, w), = r.words
        assert isinstance(owner, Universal)
        assert len(w.chain) == 2 and w.size == 3


def test_wrong_palette_length():
    with pytest.raises(InputError):
        root_templates(path_graph(3), "abc")


def test_closure_equals_brute_force_enumeration():
    for n in range(1, 5):
        for g in all_graphs(n):
            for p in palette_kinds(n).values():
                roots = root_templates(g, p)
                parts = [reachable(g, r) for r in roots]
                union = set().union(*parts)
                assert union == set(enumerate_templates(g, p)), (g, p)
                assert sum(map(len, parts)) == len(union), "components overlap"


def test_closure_equals_brute_force_on_five_nodes():
    for g in (cycle_graph(5), path_graph(5)):
        p = palette_kinds(5)["mixed"]
        union = set().union(*(reachable(g, r) for r in root_templates(g, p)))
        assert union == set(enumerate_templates(g, p))


def test_every_reachable_template_validates():
    for n in range(1, 5):
        for g in all_graphs(n):
            for p in palette_kinds(n).values():
                for r in root_templates(g, p):
                    assert all(validate_template(g, p, c) for c in reachable(g, r))


def test_vertex_count_is_tubings_times_colorings():
    for n in range(2, 5):
        for g in all_graphs(n):
            for p in palette_kinds(n).values():
                verts = [c for c in enumerate_templates(g, p) if len(c.tubing) == n - 1]
                assert len(verts) == len(enumerate_maximal_tubings(g)) * distinct_orderings(p)


def test_null_graph_root_has_twelve_children():
    g = null_graph(4)
    (root,) = root_templates(g, palette_kinds(4)["full"])
    kids = enumerate_children(g, root)
    assert len(kids) == 12
    assert {(c.tubing[0], c.colored_tubes()[0][1]) for c in kids} == {
        (F(v), c) for v in "abcd" for c in ("c0", "c1", "c2")
    }


def test_covers_and_palette_mismatch():
    g = path_graph(3)
    (root,) = root_templates(g, "xy")
    kid = enumerate_children(g, root)[0]
    assert covers(g, root, kid)
    assert not covers(g, kid, root)
    (other,) = root_templates(g, "xz")
    with pytest.raises(InputError):
        covers(g, other, kid)


def test_template_from_colored_tubing_is_a_vertex():
    g = path_graph(3)
    c = template_from_colored_tubing(g, [("a", "x"), ("ab", "y")])
    assert validate_template(g, "xy", c)
    assert c.tube_color("ab") == "y"
    assert c in reachable(g, root_templates(g, "xy")[0])


def test_validate_rejects_bad_shapes():
    g = path_graph(3)
    u = Universal(g.node_set)
    good = ColorTemplate((), ((u, ColorWord((), ("x", "y"))),))
    assert validate_template(g, "xy", good)
    bad = ColorTemplate((), ((u, ColorWord(("x",), ("y",))),))
    assert not validate_template(g, "xy", bad)
    assert not validate_template(g, "xx", good)


def test_monochrome_disconnected_has_one_root():
    for n in range(2, 5):
        for g in all_graphs(n):
            if not is_connected(g) and "monochrome" in palette_kinds(n):
                assert len(root_templates(g, palette_kinds(n)["monochrome"])) == 1
