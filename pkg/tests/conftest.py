from __future__ import annotations

import json

import pytest

from colorful_assoc.graphcore import (
    complete_graph,
    cycle_graph,
    disjoint_union,
    null_graph,
    path_graph,
    star_graph,
)

GRAPHS = {
    "K1": complete_graph(1),
    "K2": complete_graph(2),
    "K3": complete_graph(3),
    "P3": path_graph(3),
    "C3": cycle_graph(3),
    "P4": path_graph(4),
    "C4": cycle_graph(4),
    "K4": complete_graph(4),
    "claw": star_graph(3),
    "G3": null_graph(3),
    "G4": null_graph(4),
    "G5": null_graph(5),
    "P5": path_graph(5),
    "C5": cycle_graph(5),
    "K5": complete_graph(5),
    "P2+P2": disjoint_union(path_graph(2), path_graph(2)),
    "K1+P3": disjoint_union(complete_graph(1), path_graph(3)),
}

ACCEPTANCE_LINES: list[str] = []


def write_spec(path, g, palette):
    data = {"nodes": list(g.nodes), "edges": [list(e) for e in g.sorted_edges()], "palette": list(palette)}
    path.write_text(json.dumps(data))
    return path


@pytest.fixture
def spec_file(tmp_path):
    def make(name, palette, g=None):
        g = GRAPHS[name] if g is None else g
        return write_spec(tmp_path / f"{name}.json", g, palette)

    return make


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
