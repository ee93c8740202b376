"""Palettes, color words and color templates, and the one-tube covering rule.

A template assigns every tube of its tubing, and every universal sentinel of a
component not itself present as a tube, a :class:`ColorWord`: an ordered
``chain`` (the tube's own color first when the owner is colored, then one
color per outer tube of its core, largest outer tube first) and an unordered
``inner`` multiset. Disconnected graphs additionally carry a universal block of
colors reserved for component tubes.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import InputError
from .graphcore import Graph, vertex_connectivity
from .tubing import (
    Universal,
    _compatible,
    canonical_tubing,
    components,
    core_of,
    enumerate_tubes,
    enumerate_tubings,
    format_tube,
    is_tubing,
    owner_key,
    smallest_container,
    tube_key,
    universals,
)


@dataclass(frozen=True)
class Palette:
    colors: tuple

    @classmethod
    def of(cls, colors: Iterable[str]) -> "Palette":
        if isinstance(colors, Palette):
            return colors
        return cls(tuple(sorted(str(c) for c in colors)))

    def __len__(self):
        return len(self.colors)

    @property
    def kind(self) -> str:
        distinct = len(set(self.colors))
        if distinct == len(self.colors):
            # the empty and one-color palettes count as full
            return "full"
        if distinct == 1:
            return "monochrome"
        return "mixed"

    def counter(self) -> Counter:
        return Counter(self.colors)


@dataclass(frozen=True)
class ColorWord:
    chain: tuple
    inner: tuple

    def __post_init__(self):
        object.__setattr__(self, "inner", tuple(sorted(self.inner)))

    @property
    def size(self) -> int:
        return len(self.chain) + len(self.inner)

    def colors(self) -> list:
        return list(self.chain) + list(self.inner)


@dataclass(frozen=True)
class ColorTemplate:
    tubing: tuple
    words: tuple
    universal_block: tuple = ()
    _lookup: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "tubing", canonical_tubing(self.tubing))
        ws = tuple(sorted(self.words, key=lambda ow: owner_key(ow[0])))
        object.__setattr__(self, "words", ws)
        object.__setattr__(self, "universal_block", tuple(sorted(self.universal_block)))
        object.__setattr__(self, "_lookup", dict(ws))

    def word(self, owner) -> ColorWord:
        return self._lookup[owner]

    def owners(self) -> list:
        return [o for o, _ in self.words]

    def tube_color(self, t) -> str:
        return self._lookup[frozenset(t)].chain[0]

    def colored_tubes(self) -> tuple:
        return tuple((t, self.tube_color(t)) for t in self.tubing)

    def all_colors(self) -> Counter:
        c = Counter(self.universal_block)
        for _, w in self.words:
            c.update(w.colors())
        return c

    def sort_key(self) -> tuple:
        return (
            len(self.tubing),
            [tube_key(t) for t in self.tubing],
            [(owner_key(o), w.chain, w.inner) for o, w in self.words],
            self.universal_block,
        )

    def __repr__(self):
        parts = []
        for o, w in self.words:
            name = repr(o) if isinstance(o, Universal) else format_tube(o)
            parts.append(f"{name}:[{' '.join(w.chain)}|{' '.join(w.inner)}]")
        if self.universal_block:
            parts.append(f"ub:{{{' '.join(self.universal_block)}}}")
        return "Template(" + " ".join(parts) + ")"


RootTemplate = ColorTemplate


# -- multiset helpers --------------------------------------------------------

def sub_multisets(pool: Counter, r: int) -> Iterator[tuple]:
    """Distinct sorted sub-multisets of ``pool`` with ``r`` elements."""
    items = sorted(c for c in pool if pool[c] > 0)

    def rec(i, r):
        if r == 0:
            yield ()
            return
        if i == len(items):
            return
        c = items[i]
        for take in range(min(pool[c], r), -1, -1):
            for rest in rec(i + 1, r - take):
                yield (c,) * take + rest

    yield from rec(0, r)


def arrangements(pool: Counter, r: int) -> Iterator[tuple]:
    """Distinct sequences of length ``r`` drawn from ``pool`` without replacement."""
    pool = Counter(pool)

    def rec(r):
        if r == 0:
            yield ()
            return
        for c in sorted(pool):
            if pool[c] > 0:
                pool[c] -= 1
                for rest in rec(r - 1):
                    yield (c,) + rest
                pool[c] += 1

    yield from rec(r)


def _minus(pool: Counter, used: Iterable[str]) -> Counter:
    out = Counter(pool)
    out.subtract(used)
    return +out


# -- shapes ------------------------------------------------------------------

def word_shape(g: Graph, tubing: frozenset, owner) -> tuple[int, int]:
    """(chain length, word size) demanded of ``owner``'s word by its core."""
    core = core_of(g, tubing, owner)
    kappa = vertex_connectivity(core)
    if isinstance(owner, Universal):
        return kappa - 1, len(core) - 1
    return kappa, len(core)


def _check_palette(g: Graph, p) -> Palette:
    p = Palette.of(p)
    if len(p) != len(g) - 1:
        raise InputError(f"palette has {len(p)} colors, graph needs {len(g) - 1}")
    return p


# -- roots -------------------------------------------------------------------

def root_templates(g: Graph, p) -> list[ColorTemplate]:
    p = _check_palette(g, p)
    empty = frozenset()
    comps = components(g)
    roots = []
    if len(comps) == 1:
        u = Universal(comps[0])
        chain_len, _ = word_shape(g, empty, u)
        pool = p.counter()
        for chain in arrangements(pool, chain_len):
            inner = tuple(_minus(pool, chain).elements())
            roots.append(ColorTemplate((), ((u, ColorWord(chain, inner)),)))
        return sorted(roots, key=ColorTemplate.sort_key)

    us = [Universal(c) for c in comps]
    shapes = [word_shape(g, empty, u) for u in us]

    def split(i, pool):
        if i == len(us):
            yield [], tuple(pool.elements())
            return
        chain_len, size = shapes[i]
        for share in sub_multisets(pool, size):
            rest = _minus(pool, share)
            share_c = Counter(share)
            for chain in arrangements(share_c, chain_len):
                w = ColorWord(chain, tuple(_minus(share_c, chain).elements()))
                for tail, ublock in split(i + 1, rest):
                    yield [(us[i], w)] + tail, ublock

    for words, ublock in split(0, p.counter()):
        roots.append(ColorTemplate((), tuple(words), ublock))
    return sorted(set(roots), key=ColorTemplate.sort_key)


# -- validity ----------------------------------------------------------------

def expected_owners(g: Graph, tubing) -> list:
    tubing = list(tubing)
    return tubing + [u for u in universals(g) if u.nodes not in tubing]


def validate_template(g: Graph, p, c: ColorTemplate) -> bool:
    try:
        p = _check_palette(g, p)
    except InputError:
        return False
    if not is_tubing(g, c.tubing):
        return False
    T = frozenset(c.tubing)
    owners = expected_owners(g, c.tubing)
    if sorted(map(owner_key, owners)) != sorted(map(owner_key, c.owners())):
        return False
    for o in owners:
        chain_len, size = word_shape(g, T, o)
        w = c.word(o)
        if len(w.chain) != chain_len or w.size != size:
            return False
    comps = components(g)
    ublock_size = len(comps) - 1 - sum(1 for cc in comps if cc in T) if len(comps) > 1 else 0
    if len(c.universal_block) != ublock_size:
        return False
    return c.all_colors() == p.counter()


def enumerate_templates(g: Graph, p) -> list[ColorTemplate]:
    """Every valid template, by brute force over tubings and color distributions."""
    p = _check_palette(g, p)
    comps = components(g)
    out = []
    for T in enumerate_tubings(g):
        Tset = frozenset(T)
        owners = expected_owners(g, T)
        shapes = [word_shape(g, Tset, o) for o in owners]

        def dist(i, pool):
            if i == len(owners):
                yield []
                return
            chain_len, size = shapes[i]
            for chain in arrangements(pool, chain_len):
                rest = _minus(pool, chain)
                for inner in sub_multisets(rest, size - chain_len):
                    for tail in dist(i + 1, _minus(rest, inner)):
                        yield [(owners[i], ColorWord(chain, inner))] + tail

        ublock_size = len(comps) - 1 - sum(1 for cc in comps if cc in Tset) if len(comps) > 1 else 0
        pool = p.counter()
        for ublock in sub_multisets(pool, ublock_size):
            for words in dist(0, _minus(pool, ublock)):
                out.append(ColorTemplate(T, tuple(words), ublock))
    return sorted(set(out), key=ColorTemplate.sort_key)


# -- covering ----------------------------------------------------------------

def _fill(prefix: tuple, pool: Counter, chain_len: int, size: int) -> Iterator[tuple[ColorWord, Counter]]:
    """Words of the given shape whose leading slots hold ``prefix`` in order,
    the rest drawn from ``pool``; yields (word, leftover pool)."""
    if len(prefix) >= chain_len:
        chain, overflow = prefix[:chain_len], prefix[chain_len:]
        for extra in sub_multisets(pool, size - len(prefix)):
            yield ColorWord(chain, overflow + extra), _minus(pool, extra)
        return
    for tail in arrangements(pool, chain_len - len(prefix)):
        rest = _minus(pool, tail)
        for inner in sub_multisets(rest, size - chain_len):
            yield ColorWord(prefix + tail, inner), _minus(rest, inner)


def enumerate_children(g: Graph, parent: ColorTemplate) -> list[ColorTemplate]:
    """All templates covered by ``parent`` (one more tube), canonically ordered."""
    T = frozenset(parent.tubing)
    words = dict(parent.words)
    comps = components(g)
    multi = len(comps) > 1
    out = set()
    for t in enumerate_tubes(g):
        if t in T or not all(_compatible(g, t, s) for s in T):
            continue
        if multi and t in comps:
            u = Universal(t)
            w = words[u]
            for c in sorted(set(parent.universal_block)):
                ws = dict(words)
                del ws[u]
                ws[t] = ColorWord((c,) + w.chain, w.inner)
                ublock = list(parent.universal_block)
                ublock.remove(c)
                out.add(ColorTemplate(parent.tubing + (t,), tuple(ws.items()), tuple(ublock)))
            continue
        star = smallest_container(g, T, t)
        newT = T | {t}
        w = words[star]
        star_chain, star_size = word_shape(g, newT, star)
        t_chain, t_size = word_shape(g, newT, t)
        if star_size + t_size != w.size:
            raise AssertionError(f"color count drift adding {format_tube(t)} to {parent!r}")
        j = min(star_size, len(w.chain))
        head, tail = w.chain[:j], w.chain[j:]
        for star_word, rest in _fill(head, Counter(w.inner), star_chain, star_size):
            for t_word, left in _fill(tail, rest, t_chain, t_size):
                if left:
                    continue
                ws = dict(words)
                ws[star] = star_word
                ws[t] = t_word
                out.add(ColorTemplate(parent.tubing + (t,), tuple(ws.items()), parent.universal_block))
    return sorted(out, key=ColorTemplate.sort_key)


def covers(g: Graph, parent: ColorTemplate, child: ColorTemplate) -> bool:
    if parent.all_colors() != child.all_colors():
        raise InputError("templates use different palettes")
    if len(child.tubing) != len(parent.tubing) + 1:
        return False
    return child in set(enumerate_children(g, parent))


def monochromize(c: ColorTemplate) -> tuple:
    return c.tubing


def template_from_colored_tubing(g: Graph, colored: Iterable[tuple]) -> ColorTemplate:
    """The vertex template of a maximal color tubing ``[(tube, color), ...]``."""
    colored = [(frozenset(t), c) for t, c in colored]
    ws = [(t, ColorWord((c,), ())) for t, c in colored]
    tubes = [t for t, _ in colored]
    ws += [(u, ColorWord((), ())) for u in universals(g) if u.nodes not in tubes]
    return ColorTemplate(tuple(tubes), tuple(ws))


def palette_kinds(n: int) -> dict[str, Palette]:
    """Representative full/mixed/monochrome palettes for an n-node graph."""
    k = n - 1
    out = {"full": Palette.of([f"c{i}" for i in range(k)])}
    if k >= 2:
        out["monochrome"] = Palette.of(["x"] * k)
    if k >= 3:
        out["mixed"] = Palette.of(["x"] * (k - 1) + ["y"])
    return out


__all__ = [
    "Palette",
    "ColorWord",
    "ColorTemplate",
    "RootTemplate",
    "root_templates",
    "validate_template",
    "enumerate_templates",
    "enumerate_children",
    "covers",
    "monochromize",
    "template_from_colored_tubing",
    "palette_kinds",
    "sub_multisets",
    "arrangements",
    "word_shape",
]
