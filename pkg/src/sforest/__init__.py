"""S-forests of graphs, trifunctional partial orders and collapsed permutohedra."""

from .errors import SForestError
from .graphs import Graph, graph, reconstruct_graph, t_forests, destruction_film
from .polytope import class_of_permutation, collapse, export_skeleton, permutohedron
from .relations import Relation, concatenation, disjoint_union, relation
from .relationships import Relationship, linear_extensions, map_E, map_L, map_P, shuffle_sum, concat_product
from .sterm import kappa, parse_sterm, render_sterm, sterm_of_ftp

__all__ = [
    "SForestError",
    "Graph",
    "graph",
    "reconstruct_graph",
    "t_forests",
    "destruction_film",
    "class_of_permutation",
    "collapse",
    "export_skeleton",
    "permutohedron",
    "Relation",
    "concatenation",
    "disjoint_union",
    "relation",
    "Relationship",
    "linear_extensions",
    "map_E",
    "map_L",
    "map_P",
    "shuffle_sum",
    "concat_product",
    "kappa",
    "parse_sterm",
    "render_sterm",
    "sterm_of_ftp",
]
