"""Tubes, tubings, inner/outer tubes and core graphs of a simple graph."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .errors import InputError, UnsupportedError
from .graphcore import (
    Graph,
    connected_components,
    induced_subgraph,
    is_connected,
    is_connected_set,
    vertex_connectivity,
)

Tube = frozenset


@dataclass(frozen=True)
class Universal:
    """Sentinel for the universal tube of a component (the whole graph if connected).

    It is never stored inside a tubing.
    """

    nodes: frozenset

    def __repr__(self):
        return "U{" + ",".join(sorted(self.nodes)) + "}"


def tube_key(t) -> tuple:
    return (len(t), tuple(sorted(t)))


def owner_key(o) -> tuple:
    if isinstance(o, Universal):
        return (1, len(o.nodes), tuple(sorted(o.nodes)))
    return (0, len(o), tuple(sorted(o)))


def canonical_tubing(tubes) -> tuple:
    return tuple(sorted((frozenset(t) for t in tubes), key=tube_key))


def format_tube(t) -> str:
    return "{" + ",".join(sorted(t)) + "}"


@dataclass(frozen=True)
class CoreGraph:
    graph: Graph
    owner: object
    node_map: dict

    def __hash__(self):
        return hash((self.graph, self.owner))


# -- tubes -----------------------------------------------------------------

@lru_cache(maxsize=None)
def _tubes(g: Graph) -> tuple:
    n = len(g)
    out = []
    for k in range(1, n):
        for s in combinations(g.nodes, k):
            s = frozenset(s)
            if is_connected_set(g, s):
                out.append(s)
    return tuple(sorted(out, key=tube_key))


def enumerate_tubes(g: Graph) -> list:
    return list(_tubes(g))


def is_tube(g: Graph, t) -> bool:
    t = frozenset(t)
    return 0 < len(t) < len(g) and t <= g.node_set and is_connected_set(g, t)


def _compatible(g: Graph, t1: frozenset, t2: frozenset) -> bool:
    if t1 < t2 or t2 < t1:
        return True
    if t1 & t2:
        return False
    return not any(g.adj[u] & t2 for u in t1)


def tubes_compatible(g: Graph, t1, t2) -> bool:
    t1, t2 = frozenset(t1), frozenset(t2)
    for t in (t1, t2):
        if not is_tube(g, t):
            raise InputError(f"{format_tube(t)} is not a tube of {g!r}")
    return _compatible(g, t1, t2)


@lru_cache(maxsize=None)
def _components(g: Graph) -> tuple:
    return tuple(connected_components(g))


def components(g: Graph) -> list[frozenset]:
    return list(_components(g))


def universals(g: Graph) -> list[Universal]:
    return [Universal(c) for c in _components(g)]


def is_tubing(g: Graph, tubes) -> bool:
    tubes = [frozenset(t) for t in tubes]
    if len(set(tubes)) != len(tubes):
        return False
    if not all(is_tube(g, t) for t in tubes):
        return False
    if not all(_compatible(g, a, b) for a, b in combinations(tubes, 2)):
        return False
    comps = _components(g)
    # a tubing may not hold every component at once
    return not (len(comps) > 1 and all(c in tubes for c in comps))


@lru_cache(maxsize=None)
def _compat_masks(g: Graph) -> tuple:
    ts = _tubes(g)
    masks = []
    for i, a in enumerate(ts):
        m = 0
        for j, b in enumerate(ts):
            if i != j and _compatible(g, a, b):
                m |= 1 << j
        masks.append(m)
    return tuple(masks)


def _cliques(g: Graph, size: int | None):
    """Yield valid tubings (as index tuples); only those of ``size`` if given."""
    ts = _tubes(g)
    masks = _compat_masks(g)
    comps = _components(g)
    comp_idx = {ts.index(c) for c in comps} if len(comps) > 1 else set()
    full = (1 << len(ts)) - 1

    def rec(chosen, cand):
        if size is None or len(chosen) == size:
            if not comp_idx or not comp_idx <= set(chosen):
                yield tuple(chosen)
            if size is not None:
                return
        while cand:
            low = cand & -cand
            i = low.bit_length() - 1
            cand ^= low
            chosen.append(i)
            yield from rec(chosen, cand & masks[i])
            chosen.pop()

    yield from rec([], full)


@lru_cache(maxsize=None)
def _all_tubings(g: Graph) -> tuple:
    ts = _tubes(g)
    return tuple(canonical_tubing(ts[i] for i in c) for c in _cliques(g, None))


def enumerate_tubings(g: Graph) -> list[tuple]:
    """All valid tubings, the empty one included."""
    return sorted(_all_tubings(g), key=lambda T: (len(T), [tube_key(t) for t in T]))


@lru_cache(maxsize=None)
def _maximal_tubings(g: Graph) -> tuple:
    n = len(g)
    if n == 0:
        return ()
    ts = _tubes(g)
    out = [canonical_tubing(ts[i] for i in c) for c in _cliques(g, n - 1)]
    return tuple(sorted(out, key=lambda T: [tube_key(t) for t in T]))


def enumerate_maximal_tubings(g: Graph) -> list[tuple]:
    return list(_maximal_tubings(g))


# -- inner / outer ---------------------------------------------------------

def classify_tube(g: Graph, t) -> str:
    if not is_connected(g):
        raise UnsupportedError("inner/outer is only defined on connected graphs")
    t = frozenset(t)
    if not is_tube(g, t):
        raise InputError(f"{format_tube(t)} is not a tube of {g!r}")
    return "inner" if len(t) <= len(g) - vertex_connectivity(g) else "outer"


def component_of(g: Graph, t) -> frozenset:
    v = next(iter(t))
    for c in _components(g):
        if v in c:
            return c
    raise InputError(f"{format_tube(t)} is not inside {g!r}")


def classify_tube_in_component(g: Graph, t) -> str:
    """Inner/outer relative to the component holding ``t``; 'component' for a whole component."""
    t = frozenset(t)
    comp = component_of(g, t)
    if t == comp:
        return "component"
    h = induced_subgraph(g, comp)
    return "inner" if len(t) <= len(h) - vertex_connectivity(h) else "outer"


# -- cores -----------------------------------------------------------------

def owner_nodes(o) -> frozenset:
    return o.nodes if isinstance(o, Universal) else o


def smallest_container(g: Graph, tubing, t) -> object:
    """Smallest tube of ``tubing`` strictly containing ``t``, else the universal of its component."""
    best = None
    for s in tubing:
        if t < s and (best is None or len(s) < len(best)):
            best = s
    if best is not None:
        return best
    return Universal(component_of(g, t))


@lru_cache(maxsize=None)
def _core(g: Graph, tubing: frozenset, owner) -> Graph:
    own = owner_nodes(owner)
    nested = [s for s in tubing if s < own]
    covered = frozenset().union(*nested) if nested else frozenset()
    core_nodes = own - covered
    # a path with interior inside a (connected) nested tube exists iff both
    # ends have a neighbour in that tube
    edges = set()
    for u, v in combinations(sorted(core_nodes), 2):
        if g.has_edge(u, v) or any(g.adj[u] & s and g.adj[v] & s for s in nested):
            edges.add((u, v))
    return Graph(core_nodes, edges)


def _check_owner(g: Graph, tubing: frozenset, owner) -> None:
    if isinstance(owner, Universal):
        if owner.nodes not in _components(g) and owner.nodes != g.node_set:
            raise InputError(f"{owner!r} is not a component of {g!r}")
    elif frozenset(owner) not in tubing:
        raise InputError(f"{format_tube(owner)} is not a tube of the tubing")


def core_graph(g: Graph, tubing, owner) -> CoreGraph:
    tubing = frozenset(frozenset(t) for t in tubing)
    if not isinstance(owner, Universal):
        owner = frozenset(owner)
    _check_owner(g, tubing, owner)
    h = _core(g, tubing, owner)
    return CoreGraph(h, owner, {v: v for v in h.nodes})


def core_of(g: Graph, tubing: frozenset, owner) -> Graph:
    """Unchecked, cached core graph; ``tubing`` must be a frozenset of tubes."""
    return _core(g, tubing, owner)


def core_tube_bijection_check(g: Graph, tubing, t) -> bool:
    """Check that h -> h minus nested tubes maps the tubes compatible with
    ``tubing`` inside ``t`` (and inside no nested tube) bijectively onto the tubes of the core."""
    tubing = frozenset(frozenset(s) for s in tubing)
    if not isinstance(t, Universal):
        t = frozenset(t)
    core = core_graph(g, tubing, t).graph
    own = owner_nodes(t)
    nested = [s for s in tubing if s < own]
    left = set(enumerate_tubes(core))
    right = [
        h
        for h in enumerate_tubes(g)
        if h < own
        and h not in tubing
        and all(_compatible(g, h, s) for s in tubing)
        and not any(h <= s for s in nested)
    ]
    images = [h & core.node_set for h in right]
    return len(set(images)) == len(images) and set(images) == left
