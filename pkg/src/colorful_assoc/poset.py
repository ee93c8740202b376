"""Graded face posets: construction from templates, products, and the classic oracle."""

from __future__ import annotations

import os
from collections import Counter
from itertools import combinations
from typing import Iterable, Sequence

from .coloring import ColorTemplate, Palette, enumerate_children, root_templates
from .errors import InputError, ResourceLimitError, StructuralError
from .graphcore import Graph
from .tubing import enumerate_tubings, tube_key

DEFAULT_MAX_FACES = 10**6


def default_max_faces() -> int:
    env = os.environ.get("COLORFUL_ASSOC_MAX_FACES")
    return int(env) if env else DEFAULT_MAX_FACES


class FacePoset:
    """A finite poset given by its covering pairs and a rank per face.

    Face ids are ``0..len-1``. ``labels`` carries whatever identifies a face
    (a template, a tubing, a vertex set, a pair of labels for products).
    The rank function is stored, not derived, so that mutilated posets can be
    represented and then rejected by the checks in :mod:`verify`.
    """

    def __init__(self, ranks: Sequence[int], covers: Iterable[tuple[int, int]], labels=None, meta=None):
        self.ranks = tuple(ranks)
        self.covers = frozenset((int(a), int(b)) for a, b in covers)
        n = len(self.ranks)
        self.labels = tuple(labels) if labels is not None else tuple(range(n))
        self.meta = dict(meta or {})
        self.up: list[list[int]] = [[] for _ in range(n)]
        self.down: list[list[int]] = [[] for _ in range(n)]
        for a, b in sorted(self.covers):
            self.up[a].append(b)
            self.down[b].append(a)
        self._downsets = None

    def __len__(self):
        return len(self.ranks)

    def __eq__(self, other):
        if not isinstance(other, FacePoset):
            return NotImplemented
        return (self.ranks, self.covers, self.labels) == (other.ranks, other.covers, other.labels)

    def __repr__(self):
        return f"FacePoset({len(self)} faces, f={f_vector(self)})"

    @property
    def top_rank(self) -> int:
        return max(self.ranks)

    def minimal(self) -> list[int]:
        return [i for i in range(len(self)) if not self.down[i]]

    def maximal(self) -> list[int]:
        return [i for i in range(len(self)) if not self.up[i]]

    @property
    def least(self) -> int | None:
        m = self.minimal()
        return m[0] if len(m) == 1 else None

    @property
    def greatest(self) -> int | None:
        m = self.maximal()
        return m[0] if len(m) == 1 else None

    def faces_of_rank(self, r: int) -> list[int]:
        return [i for i, x in enumerate(self.ranks) if x == r]

    def downsets(self) -> list[int]:
        """Bitmask of every face's down-set (itself included), via the covers."""
        if self._downsets is None:
            order = sorted(range(len(self)), key=lambda i: self.ranks[i])
            ds = [0] * len(self)
            for i in order:
                m = 1 << i
                for j in self.down[i]:
                    m |= ds[j]
                ds[i] = m
            self._downsets = ds
        return self._downsets

    def leq(self, a: int, b: int) -> bool:
        return bool(self.downsets()[b] >> a & 1)

    def interval(self, lo: int, hi: int) -> list[int]:
        """Faces f with lo <= f <= hi, in id order."""
        d = self.downsets()[hi]
        out = []
        stack = [lo]
        seen = {lo}
        while stack:
            x = stack.pop()
            if d >> x & 1:
                out.append(x)
                for y in self.up[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
        return sorted(out)

    def section(self, lo: int, hi: int) -> "FacePoset":
        """The section [lo, hi] as a poset of its own; ranks shifted so lo has rank -1."""
        keep = self.interval(lo, hi)
        index = {f: i for i, f in enumerate(keep)}
        shift = self.ranks[lo] + 1
        covers = [(index[a], index[b]) for a, b in self.covers if a in index and b in index]
        return FacePoset([self.ranks[f] - shift for f in keep], covers, [self.labels[f] for f in keep])

    def below(self, face: int) -> "FacePoset":
        return self.section(self.least, face)

    def flags(self) -> list[tuple[int, ...]]:
        """All maximal chains along covering pairs (minimal to maximal face)."""
        out = []
        for start in self.minimal():
            stack = [(start,)]
            while stack:
                chain = stack.pop()
                ups = self.up[chain[-1]]
                if not ups:
                    out.append(chain)
                for y in ups:
                    stack.append(chain + (y,))
        return sorted(out)

    # mutation helpers, used to build deliberately broken posets
    def without_face(self, face: int) -> "FacePoset":
        keep = [i for i in range(len(self)) if i != face]
        index = {f: i for i, f in enumerate(keep)}
        covers = [(index[a], index[b]) for a, b in self.covers if face not in (a, b)]
        return FacePoset([self.ranks[i] for i in keep], covers, [self.labels[i] for i in keep])

    def without_cover(self, pair: tuple[int, int]) -> "FacePoset":
        return FacePoset(self.ranks, self.covers - {tuple(pair)}, self.labels)


Flag = tuple


# -- colorful construction ---------------------------------------------------

def _rank_of(g: Graph, c: ColorTemplate) -> int:
    return len(g) - 1 - len(c.tubing)


def build_component(g: Graph, p, root: ColorTemplate, max_faces: int | None = None) -> FacePoset:
    """Face poset of the templates below ``root`` (any template may serve as the top).

    Face 0 is the formal least face; template faces follow by rank, canonical
    template order within a rank.
    """
    Palette.of(p)
    cap = default_max_faces() if max_faces is None else max_faces
    seen = {root}
    frontier = [root]
    pairs = []
    while frontier:
        nxt = []
        for parent in frontier:
            for child in enumerate_children(g, parent):
                pairs.append((child, parent))
                if child not in seen:
                    seen.add(child)
                    nxt.append(child)
                    if len(seen) + 1 > cap:
                        raise ResourceLimitError(f"face count exceeds guard of {cap}")
        frontier = nxt
    faces = sorted(seen, key=lambda c: (-len(c.tubing), c.sort_key()))
    index = {c: i + 1 for i, c in enumerate(faces)}
    ranks = [-1] + [_rank_of(g, c) for c in faces]
    covers = [(index[a], index[b]) for a, b in pairs]
    bottom = min(ranks[1:])
    covers += [(0, index[c]) for c in faces if _rank_of(g, c) == bottom]
    return FacePoset(ranks, covers, [None] + faces, meta={"graph": g, "palette": Palette.of(p), "root": root})


def build_collection(g: Graph, p, max_faces: int | None = None) -> list[FacePoset]:
    return [build_component(g, p, r, max_faces) for r in root_templates(g, p)]


def f_vector(pos: FacePoset) -> tuple[int, ...]:
    counts = Counter(pos.ranks)
    return tuple(counts[r] for r in range(0, pos.top_rank + 1))


def one_skeleton(pos: FacePoset) -> Graph:
    """Vertices are rank-0 faces (named by face id); edges come from rank-1 faces."""
    verts = pos.faces_of_rank(0)
    edges = []
    for e in pos.faces_of_rank(1):
        below = pos.down[e]
        if len(below) != 2:
            raise StructuralError(f"edge face {e} lies over {len(below)} vertices")
        edges.append((str(below[0]), str(below[1])))
    return Graph([str(v) for v in verts], edges)


def is_cycle_graph(g: Graph) -> bool:
    from .graphcore import is_connected

    return len(g) >= 3 and is_connected(g) and all(len(g.adj[v]) == 2 for v in g.nodes)


# -- generic posets ----------------------------------------------------------

def _with_least(faces: list, rank_of, cover_pairs) -> FacePoset:
    order = sorted(range(len(faces)), key=lambda i: rank_of(i))
    index = {f: k + 1 for k, f in enumerate(order)}
    ranks = [-1] + [rank_of(f) for f in order]
    covers = [(index[a], index[b]) for a, b in cover_pairs]
    covers += [(0, index[f]) for f in order if rank_of(f) == 0]
    return FacePoset(ranks, covers, [None] + [faces[f] for f in order])


def classic_kg_poset(g: Graph) -> FacePoset:
    """Tubings ordered by reverse inclusion, plus a formal least face."""
    tubings = enumerate_tubings(g)
    pos = {T: i for i, T in enumerate(tubings)}
    n = len(g)
    pairs = []
    for T in tubings:
        for k in range(len(T)):
            smaller = T[:k] + T[k + 1:]
            pairs.append((pos[T], pos[smaller]))
    return _with_least(list(tubings), lambda i: n - 1 - len(tubings[i]), pairs)


def simplex_poset(i: int) -> FacePoset:
    if i < 0:
        raise InputError("simplex dimension must be non-negative")
    elems = range(i + 1)
    subsets = [s for k in range(1, i + 2) for s in combinations(elems, k)]
    pos = {s: k for k, s in enumerate(subsets)}
    pairs = []
    for s in subsets:
        for x in s:
            smaller = tuple(y for y in s if y != x)
            if smaller:
                pairs.append((pos[smaller], pos[s]))
    return _with_least(subsets, lambda k: len(subsets[k]) - 1, pairs)


def point_poset() -> FacePoset:
    return simplex_poset(0)


def direct_product(a: FacePoset, b: FacePoset) -> FacePoset:
    """Cartesian product of bounded graded posets: rank(x, y) = rank(x) + rank(y)."""
    la, lb = a.least, b.least
    if la is None or lb is None:
        raise StructuralError("direct product needs posets with a least face")
    xs = [x for x in range(len(a)) if x != la]
    ys = [y for y in range(len(b)) if y != lb]
    faces = [(x, y) for x in xs for y in ys]
    index = {f: k for k, f in enumerate(faces)}
    pairs = []
    for x, x2 in a.covers:
        if x == la:
            continue
        for y in ys:
            pairs.append((index[(x, y)], index[(x2, y)]))
    for y, y2 in b.covers:
        if y == lb:
            continue
        for x in xs:
            pairs.append((index[(x, y)], index[(x, y2)]))
    labels = [(a.labels[x], b.labels[y]) for x, y in faces]
    return _with_least(labels, lambda k: a.ranks[faces[k][0]] + b.ranks[faces[k][1]], pairs)


def product_all(posets: Sequence[FacePoset]) -> FacePoset:
    """Left fold of :func:`direct_product`; the empty product is a point."""
    if not posets:
        return point_poset()
    out = posets[0]
    for p in posets[1:]:
        out = direct_product(out, p)
    return out


def tubing_label(T) -> str:
    return " ".join("{" + ",".join(sorted(t)) + "}" for t in sorted(T, key=tube_key))
