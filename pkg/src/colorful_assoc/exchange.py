"""Exchange graph on maximal color tubings and the reachability poset built on it.

This is an independent construction of the same collection of polytopes: it
never looks at color templates, only at maximal color tubings and one-tube
swaps, and is compared against the template posets by order isomorphism.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from itertools import combinations

from .coloring import Palette, arrangements, root_templates
from .errors import InputError, ResourceLimitError, UnsupportedError
from .graphcore import Graph, is_connected, vertex_connectivity
from .poset import FacePoset, build_collection, default_max_faces
from .tubing import enumerate_maximal_tubings, format_tube, tube_key
from .verify import poset_isomorphic


@dataclass(frozen=True)
class MaxColorTubing:
    tubing: tuple
    colors: tuple

    def colored(self) -> frozenset:
        return frozenset(zip(self.tubing, self.colors))

    def color_of(self, t) -> str:
        return self.colors[self.tubing.index(frozenset(t))]

    def label(self) -> str:
        return " ".join(f"{format_tube(t)}:{c}" for t, c in zip(self.tubing, self.colors))


@dataclass
class ExchangeGraph:
    graph: Graph
    palette: Palette
    nodes: list
    edges: list

    def __post_init__(self):
        self.adj = [[] for _ in self.nodes]
        for i, j in self.edges:
            self.adj[i].append(j)
            self.adj[j].append(i)
        self.index = {v: i for i, v in enumerate(self.nodes)}
        self.colored = [v.colored() for v in self.nodes]

    def components(self) -> list[list[int]]:
        seen = set()
        out = []
        for s in range(len(self.nodes)):
            if s in seen:
                continue
            comp = {s}
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self.adj[x]:
                    if y not in comp:
                        comp.add(y)
                        queue.append(y)
            seen |= comp
            out.append(sorted(comp))
        return out


def build_exchange_graph(g: Graph, p, max_nodes: int | None = None) -> ExchangeGraph:
    p = Palette.of(p)
    if len(p) != len(g) - 1:
        raise InputError(f"palette has {len(p)} colors, graph needs {len(g) - 1}")
    cap = default_max_faces() if max_nodes is None else max_nodes
    colorings = list(arrangements(p.counter(), len(p)))
    nodes = []
    for T in enumerate_maximal_tubings(g):
        for cs in colorings:
            nodes.append(MaxColorTubing(T, cs))
            if len(nodes) > cap:
                raise ResourceLimitError(f"exchange graph exceeds guard of {cap} nodes")
    if len(g) == 1:
        nodes = [MaxColorTubing((), ())]
    # two nodes are adjacent iff they share all but one colored tube; the
    # swapped tubes then necessarily share a color
    groups = defaultdict(list)
    for k, v in enumerate(nodes):
        col = v.colored()
        for tc in col:
            groups[(col - {tc}, tc[1])].append(k)
    edges = set()
    for members in groups.values():
        for a, b in combinations(members, 2):
            edges.add((a, b))
    return ExchangeGraph(g, p, nodes, sorted(edges))


def _outer_signature(g: Graph, v: MaxColorTubing) -> tuple:
    n, k = len(g), vertex_connectivity(g)
    by_size = {len(t): c for t, c in zip(v.tubing, v.colors) if len(t) > n - k}
    return tuple(by_size[s] for s in range(n - 1, n - k, -1))


def color_matched(g: Graph, a: MaxColorTubing, b: MaxColorTubing) -> bool:
    if not is_connected(g):
        raise UnsupportedError("color matching is defined for connected graphs")
    return _outer_signature(g, a) == _outer_signature(g, b)


def reachable_face(eg: ExchangeGraph, T, v: int) -> frozenset:
    """Nodes reachable from ``v`` along paths whose every node holds the colored tubes ``T``."""
    T = frozenset((frozenset(t), c) for t, c in T)
    colored = eg.colored
    if not T <= colored[v]:
        raise InputError("the starting node does not contain the given colored tubes")
    seen = {v}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for y in eg.adj[x]:
            if y not in seen and T <= colored[y]:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def build_peg_poset(eg: ExchangeGraph, component) -> FacePoset:
    """Faces are the distinct reachable sets (T, v), ordered by containment."""
    n = len(eg.graph)
    comp = sorted(component)
    colored = eg.colored
    face_of: dict = {}
    rank_of: dict[frozenset, int] = {}
    tubes_of: dict[frozenset, frozenset] = {}
    for v in comp:
        own = sorted(colored[v], key=lambda tc: (tube_key(tc[0]), tc[1]))
        for r in range(len(own) + 1):
            for T in combinations(own, r):
                T = frozenset(T)
                if (T, v) in face_of:
                    continue
                f = reachable_face(eg, T, v)
                for u in f:
                    face_of[(T, u)] = f
                rank = n - 1 - len(T)
                if rank_of.setdefault(f, rank) != rank:
                    raise AssertionError("one node set arose at two ranks")
                tubes_of.setdefault(f, T)
    faces = sorted(rank_of, key=lambda f: (rank_of[f], sorted(f)))
    index = {f: i + 1 for i, f in enumerate(faces)}
    by_vertex_rank = defaultdict(list)
    for f in faces:
        for u in f:
            by_vertex_rank[(u, rank_of[f])].append(f)
    covers = []
    for f in faces:
        u = min(f)
        for h in by_vertex_rank[(u, rank_of[f] + 1)]:
            if f <= h:
                covers.append((index[f], index[h]))
        if rank_of[f] == 0:
            covers.append((0, index[f]))
    ranks = [-1] + [rank_of[f] for f in faces]
    labels = [None] + [(tubes_of[f], tuple(sorted(f))) for f in faces]
    return FacePoset(ranks, covers, labels)


def equivalence_details(g: Graph, p, max_faces: int | None = None) -> dict:
    """Compare exchange-graph components and reachability posets with the template construction."""
    p = Palette.of(p)
    eg = build_exchange_graph(g, p, max_faces)
    comps = eg.components()
    roots = root_templates(g, p)
    out = {"exchange_components": len(comps), "roots": len(roots)}
    if is_connected(g):
        sig_of = {}
        ok = True
        for k, comp in enumerate(comps):
            sigs = {_outer_signature(g, eg.nodes[v]) for v in comp}
            ok &= len(sigs) == 1
            for s in sigs:
                ok &= sig_of.setdefault(s, k) == k
        out["color_matched_components"] = ok
    out["component_count"] = len(comps) == len(roots)

    comp_of = {}
    for k, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = k
    vertex_sets_ok = True
    iso_ok = True
    skeleton_ok = True
    for pos in build_collection(g, p, max_faces):
        verts = [pos.labels[f] for f in pos.faces_of_rank(0)]
        ids = {eg.index[MaxColorTubing(t.tubing, tuple(c for _, c in t.colored_tubes()))] for t in verts}
        ks = {comp_of[i] for i in ids}
        if len(ks) != 1 or set(comps[next(iter(ks))]) != ids:
            vertex_sets_ok = False
            continue
        comp = comps[ks.pop()]
        peg = build_peg_poset(eg, comp)
        iso_ok &= poset_isomorphic(pos, peg)
        skeleton_ok &= _skeleton_edges(pos, eg) == {e for e in eg.edges if e[0] in ids}
    out["vertex_sets"] = vertex_sets_ok
    out["order_isomorphic"] = iso_ok
    out["skeleton_matches"] = skeleton_ok
    out["ok"] = all(v for k, v in out.items() if isinstance(v, bool))
    return out


def _skeleton_edges(pos: FacePoset, eg: ExchangeGraph) -> set:
    def node(f):
        t = pos.labels[f]
        return eg.index[MaxColorTubing(t.tubing, tuple(c for _, c in t.colored_tubes()))]

    out = set()
    for e in pos.faces_of_rank(1):
        a, b = sorted(node(f) for f in pos.down[e])
        out.add((a, b))
    return out


def equivalence_check(g: Graph, p, max_faces: int | None = None) -> bool:
    return equivalence_details(g, p, max_faces)["ok"]
