"""Command-line entry point: graph spec files in, dumps / reports / DOT out."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .coloring import ColorTemplate, ColorWord, Palette
from .errors import InputError, ResourceLimitError, StructuralError, UnsupportedError
from .exchange import equivalence_check
from .graphcore import Graph, is_connected, vertex_connectivity
from .poset import (
    DEFAULT_MAX_FACES,
    FacePoset,
    build_collection,
    classic_kg_poset,
    f_vector,
)
from .tubing import (
    Universal,
    classify_tube,
    classify_tube_in_component,
    components,
    enumerate_tubes,
    format_tube,
    tube_key,
)
from .verify import (
    disconnected_product_check,
    is_abstract_polytope,
    is_regular,
    poset_isomorphic,
    product_structure_check,
    surface_report,
)

EXIT_OK, EXIT_INPUT, EXIT_GUARD, EXIT_FAILED = 0, 2, 3, 4
PRODUCT_SAMPLE = 200


# -- file formats ------------------------------------------------------------

def load_graph_spec(path, palette_override: str | None = None) -> tuple[Graph, Palette | None]:
    return parse_graph_spec(_read_json(path), palette_override)


def parse_graph_spec(data, palette_override: str | None = None) -> tuple[Graph, Palette | None]:
    if not isinstance(data, dict) or "nodes" not in data:
        raise InputError("graph spec needs an object with a 'nodes' list")
    nodes = data["nodes"]
    if not isinstance(nodes, list) or not all(isinstance(v, str) for v in nodes):
        raise InputError("'nodes' must be a list of strings")
    if len(set(nodes)) != len(nodes):
        raise InputError("node labels must be unique")
    edges = data.get("edges", [])
    if not isinstance(edges, list) or not all(isinstance(e, list) and len(e) == 2 for e in edges):
        raise InputError("'edges' must be a list of label pairs")
    g = Graph(nodes, [tuple(e) for e in edges])
    if palette_override is not None:
        colors = [c.strip() for c in palette_override.split(",")] if palette_override.strip() else []
    else:
        colors = data.get("palette")
    if colors is None:
        return g, None
    if not isinstance(colors, list) or not all(isinstance(c, str) and c for c in colors):
        raise InputError("'palette' must be a list of non-empty color strings")
    if len(colors) != len(g) - 1:
        raise InputError(f"palette has {len(colors)} colors, expected {len(g) - 1}")
    return g, Palette.of(colors)


def _tube_json(t) -> list[str]:
    return sorted(t)


def _owner_json(o) -> dict:
    if isinstance(o, Universal):
        return {"universal": True, "nodes": sorted(o.nodes)}
    return {"universal": False, "nodes": sorted(o)}


def dump_poset(pos: FacePoset, component: int) -> dict:
    """JSON-ready dump of a template face poset (face 0 is the formal least face)."""
    g = pos.meta["graph"]
    faces = []
    for i, c in enumerate(pos.labels):
        face = {"id": i, "rank": pos.ranks[i]}
        if c is not None:
            face["tubing"] = [{"nodes": _tube_json(t), "color": col} for t, col in c.colored_tubes()]
            face["words"] = [
                dict(_owner_json(o), chain=list(w.chain), inner=list(w.inner)) for o, w in c.words
            ]
            face["universal_block"] = list(c.universal_block)
        faces.append(face)
    return {
        "component": component,
        "graph": {"nodes": list(g.nodes), "edges": [list(e) for e in g.sorted_edges()]},
        "palette": list(pos.meta["palette"].colors),
        "faces": faces,
        "covers": [list(e) for e in sorted(pos.covers)],
    }


def load_dump(data: dict) -> tuple[int, FacePoset]:
    try:
        g = Graph(data["graph"]["nodes"], [tuple(e) for e in data["graph"]["edges"]])
        palette = Palette.of(data["palette"])
        ranks, labels = [], []
        for k, face in enumerate(data["faces"]):
            if face["id"] != k:
                raise InputError("face ids must be 0..n-1 in order")
            ranks.append(face["rank"])
            if "words" not in face:
                labels.append(None)
                continue
            words = []
            for w in face["words"]:
                nodes = frozenset(w["nodes"])
                owner = Universal(nodes) if w["universal"] else nodes
                words.append((owner, ColorWord(tuple(w["chain"]), tuple(w["inner"]))))
            tubing = tuple(frozenset(t["nodes"]) for t in face["tubing"])
            labels.append(ColorTemplate(tubing, tuple(words), tuple(face["universal_block"])))
        covers = [tuple(e) for e in data["covers"]]
        comp = data["component"]
    except (KeyError, TypeError) as e:
        raise InputError(f"malformed poset dump: {e!r}") from e
    roots = [c for c, r in zip(labels, ranks) if c is not None and r == max(ranks)]
    meta = {"graph": g, "palette": palette, "root": roots[0] if roots else None}
    return comp, FacePoset(ranks, covers, labels, meta=meta)


def tubing_string(c: ColorTemplate) -> str:
    """Tubes by (size, labels), each as ``{a,b}:color``."""
    return " ".join(f"{format_tube(t)}:{col}" for t, col in sorted(c.colored_tubes(), key=lambda x: tube_key(x[0])))


# -- helpers -----------------------------------------------------------------

def _max_faces(args) -> int:
    if args.max_faces is not None:
        return args.max_faces
    env = os.environ.get("COLORFUL_ASSOC_MAX_FACES")
    if env:
        try:
            return int(env)
        except ValueError as e:
            raise InputError(f"COLORFUL_ASSOC_MAX_FACES must be an integer, got {env!r}") from e
    return DEFAULT_MAX_FACES


def _need_palette(g: Graph, p: Palette | None) -> Palette:
    if p is None:
        raise InputError("a palette is required (in the spec file or via --palette)")
    return p


def _components(args) -> list[tuple[int, FacePoset]]:
    """Components selected by --component, from a spec file or a poset dump."""
    data = _read_json(args.input)
    if isinstance(data, dict) and "faces" in data:
        comps = [load_dump(data)]
    else:
        g, p = parse_graph_spec(data, args.palette)
        p = _need_palette(g, p)
        comps = list(enumerate(build_collection(g, p, _max_faces(args))))
    sel = getattr(args, "component", "all")
    if sel in (None, "all"):
        return comps
    try:
        k = int(sel)
    except ValueError as e:
        raise InputError(f"--component must be an index or 'all', got {sel!r}") from e
    picked = [(i, c) for i, c in comps if i == k]
    if not picked:
        raise InputError(f"no component {k} (have {[i for i, _ in comps]})")
    return picked


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}") from e


def _root_chain(pos: FacePoset) -> str:
    root = pos.meta.get("root")
    if root is None:
        return "-"
    parts = []
    for _, w in root.words:
        inner = "|" + " ".join(w.inner) if w.inner else ""
        parts.append("[" + " ".join(w.chain) + inner + "]")
    if root.universal_block:
        parts.append("{" + " ".join(root.universal_block) + "}")
    return "|".join(parts)


def _emit(text: str, out=None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- verbs -------------------------------------------------------------------

def cmd_tubes(args) -> int:
    g, _ = load_graph_spec(args.input, args.palette)
    connected = is_connected(g)
    rows = []
    for t in enumerate_tubes(g):
        kind = classify_tube(g, t) if connected else classify_tube_in_component(g, t)
        rows.append({"nodes": sorted(t), "size": len(t), "kind": kind})
    if args.format == "json":
        k = vertex_connectivity(g)
        _emit(_json({"nodes": list(g.nodes), "connectivity": k, "tubes": rows}), args.out)
    else:
        lines = [f"{'{' + ','.join(r['nodes']) + '}'} {r['kind']}" for r in rows]
        _emit("\n".join(lines) + ("\n" if lines else ""), args.out)
    return EXIT_OK


def cmd_build(args) -> int:
    comps = _components(args)
    dumps = [dump_poset(pos, i) for i, pos in comps]
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for d in dumps:
            (out / f"component-{d['component']}.json").write_text(_json(d))
    if args.format == "json" and not args.out:
        sys.stdout.write(_json(dumps))
    else:
        for i, pos in comps:
            fv = ",".join(map(str, f_vector(pos)))
            print(f"component {i}: root {_root_chain(pos)} f-vector ({fv})")
    return EXIT_OK


def cmd_verify(args) -> int:
    comps = _components(args)
    reports = []
    ok = True
    for i, pos in comps:
        ax = is_abstract_polytope(pos)
        entry = {"component": i, "f_vector": list(f_vector(pos)), "axioms": ax.as_dict()}
        ok &= ax.ok
        if pos.top_rank == 3 and ax.ok:
            rep = surface_report(pos, pos.meta.get("graph"), pos.meta.get("palette"))
            entry["surface"] = rep.as_dict()
        reports.append(entry)
    _emit(_json({"components": reports, "ok": ok}), args.out)
    return EXIT_OK if ok else EXIT_FAILED


def _codim2_faces(pos: FacePoset, cap: int) -> list[int]:
    top = pos.top_rank
    faces = [f for f in range(len(pos)) if 0 <= pos.ranks[f] <= top - 2]
    return faces[:cap]


def cmd_oracle(args) -> int:
    g, p = load_graph_spec(args.input, args.palette)
    p = _need_palette(g, p)
    cap = _max_faces(args)
    mono = Palette.of(["m"] * (len(g) - 1))
    mono_comps = build_collection(g, mono, cap)
    classic = classic_kg_poset(g)
    monochrome_ok = len(mono_comps) == 1 and poset_isomorphic(mono_comps[0], classic)
    exchange_ok = equivalence_check(g, p, cap)
    comps = build_collection(g, p, cap)
    product_ok = True
    for pos in comps:
        for f in _codim2_faces(pos, args.sample):
            product_ok &= product_structure_check(g, p, pos.labels[f], cap)
    if len(components(g)) > 1:
        product_ok &= disconnected_product_check(g, p, cap)
    regularity = []
    for i, pos in enumerate(comps):
        reg, order = is_regular(pos)
        regularity.append({"component": i, "regular": reg, "group_order": order})
    result = {
        "monochrome_ok": monochrome_ok,
        "exchange_ok": exchange_ok,
        "product_ok": product_ok,
        "regularity": regularity,
    }
    _emit(_json(result), args.out)
    return EXIT_OK if monochrome_ok and exchange_ok and product_ok else EXIT_FAILED


def skeleton_dot(pos: FacePoset, name: str = "skeleton") -> str:
    lines = [f"graph {name} {{"]
    for v in pos.faces_of_rank(0):
        lines.append(f'  v{v} [label="{tubing_string(pos.labels[v])}"];')
    edges = []
    for e in pos.faces_of_rank(1):
        below = pos.down[e]
        if len(below) != 2:
            raise StructuralError(f"edge face {e} lies over {len(below)} vertices")
        edges.append(tuple(sorted(below)))
    for a, b in sorted(edges):
        lines.append(f"  v{a} -- v{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def hasse_dot(pos: FacePoset, name: str = "hasse") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for f in range(len(pos)):
        lines.append(f'  f{f} [label="({pos.ranks[f]}, {f})"];')
    for a, b in sorted(pos.covers):
        lines.append(f"  f{a} -> f{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_export(args) -> int:
    comps = _components(args)
    chunks = []
    for i, pos in comps:
        if args.hasse:
            chunks.append(hasse_dot(pos, f"hasse_{i}"))
        else:
            chunks.append(skeleton_dot(pos, f"skeleton_{i}"))
    _emit("".join(chunks), args.out)
    return EXIT_OK


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="colorful-assoc", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, component=True):
        p.add_argument("input", help="graph spec JSON (or a poset dump where accepted)")
        p.add_argument("--palette", help="comma-separated colors, overrides the spec's palette")
        p.add_argument("--out", help="output path")
        p.add_argument("--max-faces", type=int, default=None, help=f"face guard (default {DEFAULT_MAX_FACES})")
        if component:
            p.add_argument("--component", default="all", help="component index or 'all'")

    p = sub.add_parser("tubes", help="list tubes with inner/outer classification")
    common(p, component=False)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_tubes)

    p = sub.add_parser("build", help="build components and write poset dumps")
    common(p)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="axiom and surface reports as JSON")
    common(p)
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="run the independent cross-checks")
    common(p, component=False)
    p.add_argument("--format", choices=["json"], default="json")
    p.add_argument("--sample", type=int, default=PRODUCT_SAMPLE, help="product checks per component")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("export", help="DOT export of the 1-skeleton or Hasse diagram")
    common(p)
    p.add_argument("--format", choices=["dot"], default="dot")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--skeleton", action="store_true", help="1-skeleton (default)")
    mode.add_argument("--hasse", action="store_true", help="Hasse diagram")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, UnsupportedError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_GUARD
    except StructuralError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
