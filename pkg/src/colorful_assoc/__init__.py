"""Colorful graph associahedra: color templates of tubings, their face posets,
and exhaustive checks of the polytopes they form."""

from .coloring import ColorTemplate, ColorWord, Palette, enumerate_templates, root_templates
from .errors import InputError, ResourceLimitError, StructuralError, UnsupportedError
from .exchange import build_exchange_graph, equivalence_check
from .graphcore import (
    Graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    null_graph,
    path_graph,
    star_graph,
    vertex_connectivity,
)
from .poset import FacePoset, build_collection, build_component, classic_kg_poset, f_vector
from .tubing import Universal, enumerate_maximal_tubings, enumerate_tubes, enumerate_tubings
from .verify import is_abstract_polytope, is_regular, poset_isomorphic, surface_report

__version__ = "0.1.0"
