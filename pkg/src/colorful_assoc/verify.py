"""Checks on face posets: polytope axioms, surface topology, isomorphism,
regularity and product structure."""

from __future__ import annotations

from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from math import comb

from .coloring import ColorTemplate, ColorWord, Palette, root_templates
from .errors import ResourceLimitError, UnsupportedError
from .graphcore import Graph, canonical_form, induced_subgraph, null_graph
from .poset import (
    FacePoset,
    build_component,
    classic_kg_poset,
    product_all,
    simplex_poset,
)
from .tubing import Universal, components, core_of

ISO_MAX_FACES = 10**5


@dataclass
class AxiomReport:
    bounded: bool
    flag_length_ok: bool
    diamond_ok: bool
    strongly_flag_connected: bool
    simple: bool
    witnesses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all((self.bounded, self.flag_length_ok, self.diamond_ok, self.strongly_flag_connected, self.simple))

    def as_dict(self) -> dict:
        return {
            "bounded": self.bounded,
            "flag_length_ok": self.flag_length_ok,
            "diamond_ok": self.diamond_ok,
            "strongly_flag_connected": self.strongly_flag_connected,
            "simple": self.simple,
            "ok": self.ok,
            "witnesses": [str(w) for w in self.witnesses],
        }


@dataclass
class SurfaceReport:
    V: int
    E: int
    F: int
    census: dict
    euler: int
    pseudomanifold_ok: bool
    orientable: bool
    genus: int | None = None
    notes: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "V": self.V,
            "E": self.E,
            "F": self.F,
            "census": {str(k): v for k, v in sorted(self.census.items())},
            "euler": self.euler,
            "pseudomanifold_ok": self.pseudomanifold_ok,
            "orientable": self.orientable,
            "genus": self.genus,
            "notes": list(self.notes),
        }


# -- axioms ------------------------------------------------------------------

def check_bounded(pos: FacePoset) -> tuple[bool, list]:
    wit = []
    mins, maxs = pos.minimal(), pos.maximal()
    if len(mins) != 1:
        wit.append(("minimal faces", tuple(mins)))
    if len(maxs) != 1:
        wit.append(("maximal faces", tuple(maxs)))
    if len(mins) == 1 and pos.ranks[mins[0]] != -1:
        wit.append(("least face rank", mins[0]))
    if len(maxs) == 1 and pos.ranks[maxs[0]] != pos.top_rank:
        wit.append(("greatest face rank", maxs[0]))
    return not wit, wit


def check_flag_lengths(pos: FacePoset) -> tuple[bool, list]:
    """Every covering pair climbs one rank and every flag has top_rank + 2 faces."""
    wit = [("cover skips rank", (a, b)) for a, b in sorted(pos.covers) if pos.ranks[b] != pos.ranks[a] + 1]
    want = pos.top_rank + 2
    for fl in pos.flags():
        if len(fl) != want or pos.ranks[fl[0]] != -1:
            wit.append(("flag length", fl))
            break
    return not wit, wit


def check_diamond(pos: FacePoset) -> tuple[bool, list]:
    counts: Counter = Counter()
    for f in range(len(pos)):
        for g in pos.up[f]:
            for h in pos.up[g]:
                if pos.ranks[h] - pos.ranks[f] == 2:
                    counts[(f, h)] += 1
    wit = sorted(pair for pair, c in counts.items() if c != 2)
    return not wit, wit


def _section_flags(pos: FacePoset, lo: int, hi: int) -> list[tuple]:
    d = pos.downsets()[hi]
    out = []
    stack = [(lo,)]
    while stack:
        chain = stack.pop()
        last = chain[-1]
        if last == hi:
            out.append(chain)
            continue
        for y in pos.up[last]:
            if d >> y & 1:
                stack.append(chain + (y,))
    return out


def _flags_connected(flags: list[tuple]) -> bool:
    if len(flags) <= 1:
        return True
    by_len = {len(f) for f in flags}
    if len(by_len) != 1:
        return False
    length = by_len.pop()
    index = {f: i for i, f in enumerate(flags)}
    groups = defaultdict(list)
    for f, i in index.items():
        for k in range(1, length - 1):
            groups[(k, f[:k], f[k + 1:])].append(i)
    adj = defaultdict(list)
    for members in groups.values():
        for i in members:
            adj[i].extend(j for j in members if j != i)
    seen = {0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in adj[i]:
            if j not in seen:
                seen.add(j)
                queue.append(j)
    return len(seen) == len(flags)


def check_strong_flag_connectivity(pos: FacePoset) -> tuple[bool, list]:
    """Flag-connectivity of every section [f, h]; sections of rank <= 1 are always connected."""
    ds = pos.downsets()
    wit = []
    for h in range(len(pos)):
        d = ds[h]
        rh = pos.ranks[h]
        while d:
            low = d & -d
            f = low.bit_length() - 1
            d ^= low
            if rh - pos.ranks[f] >= 3 and not _flags_connected(_section_flags(pos, f, h)):
                wit.append((f, h))
    return not wit, sorted(wit)


def check_simple(pos: FacePoset) -> tuple[bool, list]:
    """Every vertex figure [v, top] is a Boolean lattice of rank top_rank."""
    top = pos.greatest
    r = pos.top_rank
    wit = []
    if top is None:
        return False, [("no greatest face", None)]
    for v in pos.faces_of_rank(0):
        atoms = [e for e in pos.up[v]]
        faces = pos.interval(v, top)
        ok = len(atoms) == r and len(faces) == 2**r
        if ok:
            bit = {e: 1 << i for i, e in enumerate(atoms)}
            ds = pos.downsets()
            sig = {}
            for h in faces:
                m = 0
                for e in atoms:
                    if ds[h] >> e & 1:
                        m |= bit[e]
                sig[h] = m
                if bin(m).count("1") != pos.ranks[h]:
                    ok = False
            ok = ok and len(set(sig.values())) == len(faces)
            if ok:
                fs = set(faces)
                ncov = 0
                for a in faces:
                    for b in pos.up[a]:
                        if b in fs:
                            ncov += 1
                            if sig[a] & ~sig[b] or bin(sig[b] ^ sig[a]).count("1") != 1:
                                ok = False
                if r and ncov != r * 2 ** (r - 1):
                    ok = False
        if not ok:
            wit.append(("vertex figure", v))
    return not wit, wit


def is_abstract_polytope(pos: FacePoset) -> AxiomReport:
    b, wb = check_bounded(pos)
    fl, wf = check_flag_lengths(pos)
    di, wd = check_diamond(pos)
    sf, ws = check_strong_flag_connectivity(pos)
    si, wsi = check_simple(pos)
    wit = (
        [f"bounded:{w}" for w in wb]
        + [f"flag:{w}" for w in wf]
        + [f"diamond:{w}" for w in wd]
        + [f"flag-connectivity:{w}" for w in ws]
        + [f"simple:{w}" for w in wsi]
    )
    return AxiomReport(b, fl, di, sf, si, wit)


# -- surfaces ----------------------------------------------------------------

# Tabulated surface data for four-node examples, keyed by graph shape and
# palette type: polygon census and genus of the boundary surface. The claw
# entry carries two conflicting census readings ("10" by the tabulated
# vector, "12" by the prose description).
REFERENCE_VALUES = {
    ("C4", "full"): {"census": {4: 8, 6: 8, 10: 4}},
    ("P4", "full"): {"genus": 4},
    ("claw", "mixed"): {
        "census": {4: 9, 5: 6, 6: 3, 10: 6},
        "census_alt": {4: 9, 5: 6, 6: 3, 12: 6},
        "genus": 2,
    },
    ("G4", "full"): {"census": {6: 12}, "genus": 1},
}


def _shape_name(g: Graph) -> str | None:
    from .graphcore import cycle_graph, path_graph, star_graph

    key = canonical_form(g)
    for name, h in (("C4", cycle_graph(4)), ("P4", path_graph(4)), ("claw", star_graph(3)), ("G4", null_graph(4))):
        if canonical_form(h) == key:
            return name
    return None


def _polygon_order(pos: FacePoset, face: int) -> list[int] | None:
    edges = pos.down[face]
    ends = {e: pos.down[e] for e in edges}
    if any(len(v) != 2 for v in ends.values()):
        return None
    at = defaultdict(list)
    for e, (a, b) in ends.items():
        at[a].append(e)
        at[b].append(e)
    if any(len(es) != 2 for es in at.values()):
        return None
    start_e = edges[0]
    cycle = [ends[start_e][0]]
    cur_v, cur_e = ends[start_e][1], start_e
    while cur_v != cycle[0]:
        cycle.append(cur_v)
        nxt = [e for e in at[cur_v] if e != cur_e][0]
        a, b = ends[nxt]
        cur_v, cur_e = (b if a == cur_v else a), nxt
        if len(cycle) > len(edges):
            return None
    return cycle if len(cycle) == len(edges) else None


def _orientable(pos: FacePoset, facets: list[int]) -> bool:
    cycles = {}
    for f in facets:
        c = _polygon_order(pos, f)
        if c is None:
            return False
        cycles[f] = c

    def darts(f, flip):
        c = cycles[f][::-1] if flip else cycles[f]
        return {(c[i], c[(i + 1) % len(c)]) for i in range(len(c))}

    by_edge = defaultdict(list)
    for f in facets:
        for e in pos.down[f]:
            by_edge[e].append(f)
    orient = {}
    for start in facets:
        if start in orient:
            continue
        orient[start] = False
        queue = deque([start])
        while queue:
            f = queue.popleft()
            mine = darts(f, orient[f])
            for e in pos.down[f]:
                for g in by_edge[e]:
                    if g == f:
                        continue
                    a, b = pos.down[e]
                    want_flip = None
                    for flip in (False, True):
                        theirs = darts(g, flip)
                        if ((a, b) in mine and (b, a) in theirs) or ((b, a) in mine and (a, b) in theirs):
                            want_flip = flip
                    if want_flip is None:
                        return False
                    if g in orient:
                        if orient[g] != want_flip:
                            return False
                    else:
                        orient[g] = want_flip
                        queue.append(g)
    return True


def surface_report(pos: FacePoset, graph: Graph | None = None, palette=None) -> SurfaceReport:
    """Counts, polygon census, Euler characteristic and (when justified) genus of a rank-3 poset."""
    if pos.top_rank != 3:
        raise UnsupportedError("surface reports need a rank-3 poset")
    verts, edges, facets = (pos.faces_of_rank(r) for r in (0, 1, 2))
    census = Counter(len(pos.down[f]) for f in facets)
    V, E, F = len(verts), len(edges), len(facets)
    euler = V - E + F
    pm = all(len(pos.up[e]) == 2 for e in edges)
    if pm:
        for v in verts:
            link = defaultdict(list)
            for e in pos.up[v]:
                for f in pos.up[e]:
                    link[f].append(e)
            if any(len(es) != 2 for es in link.values()):
                pm = False
                break
            adj = defaultdict(set)
            for a, b in link.values():
                adj[a].add(b)
                adj[b].add(a)
            at_v = pos.up[v]
            if any(len(adj[e]) != 2 for e in at_v):
                pm = False
                break
            seen, stack = {at_v[0]}, [at_v[0]]
            while stack:
                x = stack.pop()
                for y in adj[x] - seen:
                    seen.add(y)
                    stack.append(y)
            if len(seen) != len(at_v):
                pm = False
                break
    orientable = pm and _orientable(pos, facets)
    genus = (2 - euler) // 2 if pm and orientable and euler % 2 == 0 else None
    rep = SurfaceReport(V, E, F, dict(sorted(census.items())), euler, pm, orientable, genus)
    if graph is not None and palette is not None:
        key = (_shape_name(graph), Palette.of(palette).kind)
        ref = REFERENCE_VALUES.get(key)
        if ref:
            rep.notes.extend(_compare_reference(rep, ref))
    return rep


def _census_str(c: dict) -> str:
    return "{" + ", ".join(f"{k}:{v}" for k, v in sorted(c.items())) + "}"


def _compare_reference(rep: SurfaceReport, ref: dict) -> list[str]:
    notes = []
    if "census" in ref:
        same = rep.census == ref["census"]
        notes.append(f"tabulated census {_census_str(ref['census'])}: {'matches' if same else 'differs'}")
    if "census_alt" in ref:
        same = rep.census == ref["census_alt"]
        notes.append(
            f"prose census {_census_str(ref['census_alt'])} (12-gons): {'matches' if same else 'differs'};"
            f" computed polygons have sizes {sorted(rep.census)}"
        )
    if "genus" in ref:
        same = rep.genus == ref["genus"]
        notes.append(
            f"stated genus {ref['genus']}: {'matches' if same else 'differs'}"
            f" (computed euler {rep.euler}, genus {rep.genus})"
        )
    return notes


# -- isomorphism -------------------------------------------------------------

def refine_colors(*posets: FacePoset) -> list[list[int]]:
    """Joint color refinement on Hasse diagrams; equal colors are necessary for
    faces to correspond under any rank-preserving isomorphism."""
    cols = [[(p.ranks[i], len(p.up[i]), len(p.down[i])) for i in range(len(p))] for p in posets]
    palette = {c: k for k, c in enumerate(sorted({c for cs in cols for c in cs}))}
    cols = [[palette[c] for c in cs] for cs in cols]
    n_classes = len(palette)
    while True:
        sigs = [
            [
                (cs[i], tuple(sorted(cs[j] for j in p.up[i])), tuple(sorted(cs[j] for j in p.down[i])))
                for i in range(len(p))
            ]
            for p, cs in zip(posets, cols)
        ]
        palette = {s: k for k, s in enumerate(sorted({s for ss in sigs for s in ss}))}
        cols = [[palette[s] for s in ss] for ss in sigs]
        if len(palette) == n_classes:
            return cols
        n_classes = len(palette)


def poset_isomorphic(a: FacePoset, b: FacePoset, max_faces: int = ISO_MAX_FACES) -> bool:
    """Exact test for a rank-preserving order isomorphism (backtracking over covers)."""
    if len(a) > max_faces or len(b) > max_faces:
        raise ResourceLimitError(f"isomorphism guard of {max_faces} faces exceeded")
    if len(a) != len(b) or len(a.covers) != len(b.covers):
        return False
    if sorted(a.ranks) != sorted(b.ranks):
        return False
    ca, cb = refine_colors(a, b)
    if Counter(ca) != Counter(cb):
        return False
    found = _flag_match(a, b, ca, cb)
    if found is not None:
        return found
    return _backtrack(a, b, ca, cb) is not None


def _flag_match(a: FacePoset, b: FacePoset, ca, cb) -> bool | None:
    """Isomorphism test by flag propagation.

    On flag-connected posets with the diamond property, an isomorphism is fixed
    by the image of a single flag, so trying every admissible image of one
    base flag is exhaustive. Returns None when that shortcut does not apply.
    """
    fa, adj_a = flag_graph(a)
    fb, adj_b = flag_graph(b)
    if len(fa) != len(fb) or not fa:
        return False if len(fa) != len(fb) else None
    if any(-1 in row for row in adj_a) or any(-1 in row for row in adj_b):
        return None
    if _extend(adj_a, 0, 0) is None:
        return None
    sig = tuple(ca[x] for x in fa[0])
    for target, f in enumerate(fb):
        if tuple(cb[y] for y in f) != sig:
            continue
        img = _extend(adj_a, 0, target, adj_b)
        if img is not None and _faces_match(a, b, fa, fb, img):
            return True
    return False


def _faces_match(a, b, fa, fb, img) -> bool:
    phi = {}
    for f, g in enumerate(img):
        for x, y in zip(fa[f], fb[g]):
            if phi.setdefault(x, y) != y:
                return False
    if len(phi) != len(a) or len(set(phi.values())) != len(b):
        return False
    return all((phi[x], phi[y]) in b.covers for x, y in a.covers)


def _backtrack(a: FacePoset, b: FacePoset, ca, cb) -> dict | None:
    n = len(a)
    if n == 0:
        return {}
    b_up = [set(x) for x in b.up]
    b_down = [set(x) for x in b.down]
    by_color = defaultdict(list)
    for y in range(n):
        by_color[cb[y]].append(y)
    size = Counter(ca)
    # connectors to the bounding faces are skipped when ordering, to keep the
    # search local; bounding faces usually have singleton colors anyway
    hubs = {x for x in (a.least, a.greatest) if x is not None}
    order, parent = [], {}
    placed = set()
    for x in sorted(hubs, key=lambda x: size[ca[x]]):
        order.append(x)
        parent[x] = None
        placed.add(x)
    rest = sorted((x for x in range(n) if x not in placed), key=lambda x: (size[ca[x]], a.ranks[x], x))
    for s in rest:
        if s in placed:
            continue
        order.append(s)
        parent[s] = None
        placed.add(s)
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in a.up[x] + a.down[x]:
                if y not in placed and y not in hubs:
                    placed.add(y)
                    order.append(y)
                    parent[y] = x
                    queue.append(y)
    nbrs = [[(z, True) for z in a.up[x]] + [(z, False) for z in a.down[x]] for x in range(n)]

    phi: dict[int, int] = {}
    used: set[int] = set()

    def candidates(x):
        p = parent[x]
        if p is None:
            pool = by_color[ca[x]]
        else:
            img = phi[p]
            pool = b.down[img] if x in a.down[p] else b.up[img]
        return [y for y in pool if cb[y] == ca[x]]

    def fits(x, y):
        if y in used:
            return False
        mapped = 0
        for z, is_up in nbrs[x]:
            if z in phi:
                mapped += 1
                if phi[z] not in (b_up[y] if is_up else b_down[y]):
                    return False
        return mapped == sum(1 for w in b.up[y] + b.down[y] if w in used)

    iters = [None] * n
    i = 0
    iters[0] = iter(candidates(order[0]))
    while i >= 0:
        x = order[i]
        if x in phi:
            used.discard(phi.pop(x))
        for y in iters[i]:
            if fits(x, y):
                phi[x] = y
                used.add(y)
                break
        else:
            iters[i] = None
            i -= 1
            continue
        i += 1
        if i == n:
            return dict(phi)
        iters[i] = iter(candidates(order[i]))
    return None


# -- regularity --------------------------------------------------------------

def flag_graph(pos: FacePoset) -> tuple[list[tuple], list[list[int]]]:
    """Flags and, per flag, its i-adjacent flag for each proper rank i (-1 if not unique)."""
    flags = pos.flags()
    index = {f: k for k, f in enumerate(flags)}
    r = pos.top_rank
    adj = [[-1] * r for _ in flags]
    for i in range(r):
        groups = defaultdict(list)
        for f, k in index.items():
            groups[(f[: i + 1], f[i + 2:])].append(k)
        for members in groups.values():
            if len(members) == 2:
                x, y = members
                adj[x][i], adj[y][i] = y, x
    return flags, adj


def _extend(adj: list[list[int]], base: int, target: int, adj_to=None) -> list[int] | None:
    """Propagate base -> target along flag adjacencies of ``adj`` into ``adj_to``."""
    adj_to = adj if adj_to is None else adj_to
    n = len(adj)
    img = [-1] * n
    hit = [False] * len(adj_to)
    img[base] = target
    hit[target] = True
    queue = deque([base])
    while queue:
        f = queue.popleft()
        for i, g in enumerate(adj[f]):
            want = adj_to[img[f]][i]
            if (g < 0) != (want < 0):
                return None
            if g < 0:
                continue
            if img[g] < 0:
                if hit[want]:
                    return None
                img[g] = want
                hit[want] = True
                queue.append(g)
            elif img[g] != want:
                return None
    return img if all(x >= 0 for x in img) else None


def is_regular(pos: FacePoset) -> tuple[bool, int]:
    """Flag-transitivity of the automorphism group, and the group order.

    An automorphism of a flag-connected poset is fixed by the image of one base
    flag, so the group order is the size of the base flag's orbit; the orbit is
    grown by closing under automorphisms found by extension attempts.
    """
    flags, adj = flag_graph(pos)
    colors = refine_colors(pos)[0]
    inv = [tuple(colors[x] for x in f) for f in flags]
    base = 0
    gens: list[list[int]] = []
    orbit = {base}

    def close():
        queue = deque(orbit)
        while queue:
            f = queue.popleft()
            for s in gens:
                g = s[f]
                if g not in orbit:
                    orbit.add(g)
                    queue.append(g)

    for target in range(len(flags)):
        if target in orbit or inv[target] != inv[base]:
            continue
        sigma = _extend(adj, base, target)
        if sigma is not None:
            gens.append(sigma)
            close()
    return len(orbit) == len(flags), len(orbit)


# -- product structure -------------------------------------------------------

def _root_for(h: Graph, words: list[tuple[frozenset, ColorWord]], ublock=()) -> ColorTemplate:
    return ColorTemplate((), tuple((Universal(nodes), w) for nodes, w in words), tuple(ublock))


def face_factors(g: Graph, face: ColorTemplate, max_faces: int | None = None) -> list[FacePoset]:
    """Colorful associahedra of the cores of ``face``, one per tube plus the universal part."""
    T = frozenset(face.tubing)
    factors = []
    for t in face.tubing:
        h = core_of(g, T, t)
        w = face.word(t)
        sub = ColorWord(w.chain[1:], w.inner)
        factors.append(build_component(h, sub.colors(), _root_for(h, [(h.node_set, sub)]), max_faces))
    unis = [o for o in face.owners() if isinstance(o, Universal)]
    cores = [core_of(g, T, u) for u in unis]
    nodes = [v for c in cores for v in c.nodes]
    edges = [e for c in cores for e in c.edges]
    h = Graph(nodes, edges)
    words = [(c.node_set, face.word(u)) for c, u in zip(cores, unis)]
    palette = [x for _, w in words for x in w.colors()] + list(face.universal_block)
    factors.append(build_component(h, palette, _root_for(h, words, face.universal_block), max_faces))
    return factors


def product_structure_check(g: Graph, p, face: ColorTemplate, max_faces: int | None = None) -> bool:
    section = build_component(g, p, face, max_faces)
    return poset_isomorphic(section, product_all(face_factors(g, face, max_faces)))


def _component_factors(g: Graph, root: ColorTemplate, max_faces=None) -> list[FacePoset]:
    factors = []
    for c in components(g):
        h = induced_subgraph(g, c)
        w = root.word(Universal(c))
        factors.append(build_component(h, w.colors(), _root_for(h, [(c, w)]), max_faces))
    m = len(components(g))
    nul = null_graph(m)
    roots = root_templates(nul, root.universal_block)
    assert len(roots) == 1
    factors.append(build_component(nul, root.universal_block, roots[0], max_faces))
    return factors


def full_palette_copy_count(g: Graph) -> int:
    """Number of palette splits among components and universal block for a full palette."""
    comps = components(g)
    n, m = len(g), len(comps)
    count = comb(n - 1, m - 1)
    left = n - m
    for c in comps:
        count *= comb(left, len(c) - 1)
        left -= len(c) - 1
    return count


def disconnected_product_check(g: Graph, p, max_faces: int | None = None) -> bool:
    comps = components(g)
    if len(comps) < 2:
        raise UnsupportedError("product decomposition applies to disconnected graphs")
    p = Palette.of(p)
    roots = root_templates(g, p)

    def split_key(r):
        return tuple(tuple(sorted(r.word(Universal(c)).colors())) for c in comps) + (r.universal_block,)

    by_split = defaultdict(list)
    for r in roots:
        by_split[split_key(r)].append(r)
    if p.kind == "full" and len(by_split) != full_palette_copy_count(g):
        return False
    for key, rs in by_split.items():
        expect = 1
        for c, share in zip(comps, key):
            h = induced_subgraph(g, c)
            expect *= len(root_templates(h, share))
        if len(rs) != expect:
            return False
        for r in rs:
            comp = build_component(g, p, r, max_faces)
            if not poset_isomorphic(comp, product_all(_component_factors(g, r, max_faces))):
                return False
    if p.kind == "monochrome":
        (r,) = roots
        comp = build_component(g, p, r, max_faces)
        classic = [classic_kg_poset(induced_subgraph(g, c)) for c in comps]
        if not poset_isomorphic(comp, product_all(classic + [simplex_poset(len(comps) - 1)])):
            return False
    return True


__all__ = [
    "AxiomReport",
    "SurfaceReport",
    "check_bounded",
    "check_flag_lengths",
    "check_diamond",
    "check_strong_flag_connectivity",
    "check_simple",
    "is_abstract_polytope",
    "surface_report",
    "poset_isomorphic",
    "refine_colors",
    "flag_graph",
    "is_regular",
    "face_factors",
    "product_structure_check",
    "disconnected_product_check",
    "full_palette_copy_count",
]
