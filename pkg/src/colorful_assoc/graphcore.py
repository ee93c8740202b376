"""Small simple graphs over string-labelled nodes.

Everything here is brute force on purpose: the graphs handled by the package
have at most a handful of nodes, and exhaustive subset scans are easy to audit.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable

from .errors import InputError

NodeSet = frozenset


class Graph:
    """Immutable simple undirected graph.

    Nodes are kept in sorted order; edges are stored as sorted label pairs.
    """

    __slots__ = ("nodes", "edges", "adj", "_hash")

    def __init__(self, nodes: Iterable[str], edges: Iterable[Iterable[str]] = ()):
        nodes = tuple(sorted(set(nodes)))
        node_set = set(nodes)
        adj: dict[str, set[str]] = {v: set() for v in nodes}
        norm = set()
        for e in edges:
            u, v = tuple(e)
            if u == v:
                raise InputError(f"self-loop at {u!r}")
            if u not in node_set or v not in node_set:
                raise InputError(f"edge ({u!r}, {v!r}) has an unknown endpoint")
            adj[u].add(v)
            adj[v].add(u)
            norm.add((u, v) if u < v else (v, u))
        self.nodes = nodes
        self.edges = frozenset(norm)
        self.adj = {v: frozenset(ns) for v, ns in adj.items()}
        self._hash = hash((self.nodes, self.edges))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.nodes == other.nodes and self.edges == other.edges

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.nodes)

    def __repr__(self):
        es = ",".join(f"{u}-{v}" for u, v in sorted(self.edges))
        return f"Graph([{','.join(self.nodes)}], [{es}])"

    @property
    def node_set(self) -> frozenset:
        return frozenset(self.nodes)

    def has_edge(self, u: str, v: str) -> bool:
        return v in self.adj[u]

    def sorted_edges(self) -> list[tuple[str, str]]:
        return sorted(self.edges)


def _check_nodes(g: Graph, s: Iterable[str]) -> frozenset:
    s = frozenset(s)
    unknown = s - g.node_set
    if unknown:
        raise InputError(f"unknown node ids: {sorted(unknown)}")
    return s


def induced_subgraph(g: Graph, s: Iterable[str]) -> Graph:
    s = _check_nodes(g, s)
    return Graph(s, [(u, v) for u, v in g.edges if u in s and v in s])


def _reach(g: Graph, start: str, allowed: frozenset) -> set[str]:
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in g.adj[u]:
            if w in allowed and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def is_connected_set(g: Graph, s: frozenset) -> bool:
    """True iff ``s`` is nonempty and induces a connected subgraph of ``g``."""
    if not s:
        return False
    return len(_reach(g, next(iter(s)), s)) == len(s)


def is_connected(g: Graph) -> bool:
    # the empty graph is declared disconnected
    return is_connected_set(g, g.node_set)


def connected_components(g: Graph) -> list[frozenset]:
    comps = []
    seen: set[str] = set()
    everything = g.node_set
    for v in g.nodes:
        if v in seen:
            continue
        comp = _reach(g, v, everything)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


@lru_cache(maxsize=None)
def vertex_connectivity(g: Graph) -> int:
    """Minimum number of nodes whose removal disconnects ``g``.

    Conventions: 0 for empty or disconnected graphs, 1 for a single node,
    m-1 for the complete graph on m nodes.
    """
    n = len(g)
    if n == 0 or not is_connected(g):
        return 0
    if n == 1:
        return 1
    for k in range(1, n - 1):
        for cut in combinations(g.nodes, k):
            rest = g.node_set - frozenset(cut)
            if not is_connected_set(g, rest):
                return k
    return n - 1


# -- named graphs ----------------------------------------------------------

def labels(n: int) -> list[str]:
    return [chr(ord("a") + i) for i in range(n)]


def path_graph(n: int) -> Graph:
    vs = labels(n)
    return Graph(vs, zip(vs, vs[1:]))


def cycle_graph(n: int) -> Graph:
    vs = labels(n)
    if n < 3:
        raise InputError("a cycle needs at least 3 nodes")
    return Graph(vs, list(zip(vs, vs[1:])) + [(vs[-1], vs[0])])


def complete_graph(n: int) -> Graph:
    vs = labels(n)
    return Graph(vs, combinations(vs, 2))


def null_graph(n: int) -> Graph:
    return Graph(labels(n))


def star_graph(leaves: int) -> Graph:
    """Center ``a`` joined to ``leaves`` leaves; ``star_graph(3)`` is the claw."""
    vs = labels(leaves + 1)
    return Graph(vs, [(vs[0], v) for v in vs[1:]])


def disjoint_union(*graphs: Graph) -> Graph:
    """Relabel consecutively and take the disjoint union."""
    nodes, edges = [], []
    offset = 0
    for h in graphs:
        rename = {v: chr(ord("a") + offset + i) for i, v in enumerate(h.nodes)}
        nodes.extend(rename.values())
        edges.extend((rename[u], rename[v]) for u, v in h.edges)
        offset += len(h)
    return Graph(nodes, edges)


# -- isomorphism classes of tiny graphs -------------------------------------

def canonical_form(g: Graph) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Lexicographically least relabelled edge list; equal iff isomorphic."""
    n = len(g)
    best = None
    for perm in permutations(range(n)):
        pos = dict(zip(g.nodes, perm))
        es = tuple(sorted(tuple(sorted((pos[u], pos[v]))) for u, v in g.edges))
        if best is None or es < best:
            best = es
    return n, best or ()


def all_graphs(n: int) -> list[Graph]:
    """One representative per isomorphism class of simple graphs on n nodes."""
    vs = labels(n)
    pairs = list(combinations(vs, 2))
    reps: dict = {}
    for mask in range(1 << len(pairs)):
        g = Graph(vs, [p for i, p in enumerate(pairs) if mask >> i & 1])
        key = canonical_form(g)
        if key not in reps:
            reps[key] = g
    return [reps[k] for k in sorted(reps, key=lambda k: (len(k[1]), k))]
