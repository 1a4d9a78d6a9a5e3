from .bootstrap import setup
from .catalog import Catalog, generate
from .digraph import Digraph, PathSeq, Subgraph, chain, cover_digraph, top_structure
from .errors import CatalogError, FormatError, HomLabError, InvariantViolation, PreconditionError
from .homs import count_homs, enumerate_homs
from .maps import VertexMap
from .shells import capsule_system, phi
from .taxonomy import classify, in_R
from .weights import ArcWeight, expand

__all__ = [
    "ArcWeight",
    "Catalog",
    "CatalogError",
    "Digraph",
    "FormatError",
    "HomLabError",
    "InvariantViolation",
    "PathSeq",
    "PreconditionError",
    "Subgraph",
    "VertexMap",
    "capsule_system",
    "chain",
    "classify",
    "count_homs",
    "cover_digraph",
    "enumerate_homs",
    "expand",
    "generate",
    "in_R",
    "phi",
    "setup",
    "top_structure",
]
