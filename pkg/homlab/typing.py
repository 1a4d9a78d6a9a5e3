from __future__ import annotations

from typing import (
    TYPE_CHECKING,
    Any,
    Callable,
    Collection,
    Generator,
    Generic,
    Hashable,
    Iterable,
    Iterator,
    Literal,
    Mapping,
    NamedTuple,
    Optional,
    Protocol,
    Sequence,
    TypedDict,
    TypeVar,
    Union,
    cast,
    overload,
)

# New in version 3.10
try:
    from typing import ParamSpec, TypeAlias, TypeGuard
except ImportError:
    from typing_extensions import ParamSpec, TypeAlias, TypeGuard


__all__ = [
    "TYPE_CHECKING",
    "Any",
    "Arc",
    "ArcSet",
    "BoundsStrategy",
    "Callable",
    "CatalogRecord",
    "ClassRecord",
    "Collection",
    "Generator",
    "Generic",
    "Hashable",
    "Image",
    "Iterable",
    "Iterator",
    "Literal",
    "Mapping",
    "Mask",
    "NamedTuple",
    "Optional",
    "ParamSpec",
    "Protocol",
    "RMethod",
    "Sequence",
    "ShellStrategy",
    "TypeAlias",
    "TypeGuard",
    "TypeVar",
    "TypedDict",
    "Union",
    "Vertex",
    "cast",
    "overload",
]


Vertex: TypeAlias = int
Arc: TypeAlias = tuple[int, int]
ArcSet: TypeAlias = frozenset[tuple[int, int]]
Mask: TypeAlias = int
"""Bitset over vertices: bit `v` is set iff vertex `v` is a member."""
Image: TypeAlias = tuple[int, ...]

RMethod = Literal["sum_condition", "direct"]
ShellStrategy = Literal["frontier", "full"]
BoundsStrategy = Literal["first", "last"]


class ClassRecord(TypedDict, total=False):
    n: int
    arcs: int
    reflexive: bool
    antisymmetric: bool
    transitive: bool
    poset: bool
    in_Ta: bool
    flat: bool
    height: Optional[int]
    in_R: Optional[bool]
    in_R_method: Optional[str]
    in_Taghn: Optional[bool]
    in_TaghnA: Optional[bool]
    in_Chn: Optional[bool]


class CatalogRecord(TypedDict):
    kind: str
    max_n: int
    count: int
