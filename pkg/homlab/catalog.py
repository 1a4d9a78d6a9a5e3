"""
Catalogs of pairwise non-isomorphic small digraphs of a given kind.

Members are stored in canonical form: the relabelling whose adjacency bits, read block by block
(vertex `k` against the vertices `0..k` placed before it), form the smallest bit string.
Catalogs are generated size by size, each member of size `k` being extended by one vertex
(a sink, a maximal element, or an arbitrary new vertex, depending on the kind).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING

from .digraph import Digraph, relabel, top_structure
from .errors import CatalogError, FormatError
from .formats import format_catalog_header, format_digraph, parse_catalog_header, parse_digraphs
from .settings import homlab_settings
from .taxonomy import in_Chn, in_Ta, in_Taghn, in_TaghnA, is_flat, is_poset
from .utils import homlab_logger, iter_bits, parallel_map
from .validators import validate_max_n

if TYPE_CHECKING:
    from .typing import Callable, CatalogRecord, Iterator, Optional, Union


__all__ = [
    "KINDS",
    "Catalog",
    "brute_force",
    "canonical",
    "canonical_key",
    "generate",
    "is_isomorphic",
    "parse_kind",
]


BASE_KINDS = ("all_digraphs", "reflexive", "Ta", "posets", "flat_posets")
PARAMETRIZED_KINDS = ("Chn", "Taghn", "TaghnA")
KINDS = BASE_KINDS + tuple(f"{kind}:<n>" for kind in PARAMETRIZED_KINDS)


def parse_kind(kind: str) -> tuple[str, Optional[int]]:
    """Split a kind like `Chn:2` into its name and parameter."""
    name, _, parameter = kind.partition(":")
    if name in BASE_KINDS and not parameter:
        return name, None
    if name in PARAMETRIZED_KINDS and parameter:
        try:
            value = int(parameter)
        except ValueError:
            value = -1
        if value >= 0:
            return name, value
    msg = f"Unknown catalog kind {kind!r}. Choices: {', '.join(KINDS)}."
    raise CatalogError(msg)


# Canonical forms


def _block(graph: Digraph, order: list[int], vertex: int) -> tuple[int, ...]:
    """Adjacency bits of `vertex` against itself and the already placed vertices."""
    arcs = graph.arcs
    bits = [int((vertex, vertex) in arcs)]
    for placed in order:
        bits.append(int((placed, vertex) in arcs))
        bits.append(int((vertex, placed) in arcs))
    return tuple(bits)


def canonical_key(graph: Digraph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """
    The smallest block bit string over all relabellings, and an order attaining it.

    :raises CatalogError: `G` is larger than the `MAX_CANONICAL_N` setting allows.
    """
    if graph.n > homlab_settings.MAX_CANONICAL_N:
        msg = f"Canonical forms are limited to {homlab_settings.MAX_CANONICAL_N} vertices, got {graph.n}."
        raise CatalogError(msg)

    best_bits: Optional[tuple[int, ...]] = None
    best_order: tuple[int, ...] = ()

    def search(order: list[int], bits: tuple[int, ...], remaining: int) -> None:
        nonlocal best_bits, best_order
        if not remaining:
            if best_bits is None or bits < best_bits:
                best_bits, best_order = bits, tuple(order)
            return
        for vertex in iter_bits(remaining):
            extended = bits + _block(graph, order, vertex)
            if best_bits is not None and extended > best_bits[: len(extended)]:
                continue
            order.append(vertex)
            search(order, extended, remaining & ~(1 << vertex))
            order.pop()

    search([], (), graph.full_mask)
    return best_bits or (), best_order


def canonical(graph: Digraph) -> Digraph:
    """The canonical representative of the isomorphism class of `G`."""
    _, order = canonical_key(graph)
    permutation = [0] * graph.n
    for position, vertex in enumerate(order):
        permutation[vertex] = position
    return relabel(graph, permutation)


def is_isomorphic(first: Digraph, second: Digraph) -> bool:
    if first.n != second.n or len(first.arcs) != len(second.arcs):
        return False
    return canonical(first) == canonical(second)


# Generation


def _predicate(name: str, parameter: Optional[int]) -> Callable[[Digraph], bool]:
    if name == "all_digraphs":
        return lambda graph: True
    if name == "reflexive":
        return lambda graph: graph.is_reflexive
    if name == "Ta":
        return in_Ta
    if name in ("posets", "Chn"):
        base = is_poset
    elif name == "flat_posets":
        return lambda graph: is_poset(graph) and is_flat(graph)
    else:
        base = in_Ta

    if name == "Chn":
        return lambda graph: base(graph) and in_Chn(graph, parameter)
    if name == "Taghn":
        return lambda graph: base(graph) and in_Taghn(graph, parameter)
    if name == "TaghnA":
        return lambda graph: (
            base(graph) and top_structure(graph).height == parameter and in_TaghnA(graph, parameter).member
        )
    return base


def _growth_kind(name: str) -> str:
    """The hereditary kind whose extensions contain every member of `name`."""
    if name in ("Chn", "flat_posets"):
        return "posets"
    if name in ("Taghn", "TaghnA"):
        return "Ta"
    return name


def _extensions(item: tuple[str, Digraph]) -> list[Digraph]:
    """Canonical one-vertex extensions of a member of a hereditary kind."""
    kind, graph = item
    predicate = _predicate(kind, None)
    found = set()

    for arcs in _new_vertex_arcs(kind, graph):
        candidate = Digraph(n=graph.n + 1, arcs=graph.arcs | arcs)
        if predicate(candidate):
            found.add(canonical(candidate))

    homlab_logger.debug(f"{len(found)} extensions of {graph} for kind {kind}.")
    return sorted(found, key=canonical_key)


def _new_vertex_arcs(kind: str, graph: Digraph) -> Iterator[frozenset[tuple[int, int]]]:
    new = graph.n
    vertices = list(graph.vertices)

    if kind == "posets":
        # New maximal element above a down-closed set.
        for size in range(len(vertices) + 1):
            for below in itertools.combinations(vertices, size):
                members = set(below)
                if all(set(iter_bits(graph.in_masks[v])) <= members for v in below):
                    yield frozenset({(new, new)} | {(v, new) for v in below})
        return

    loops = [False, True] if kind in ("all_digraphs", "Ta") else [True]
    if kind == "Ta":
        # New sink of the loopless part.
        for loop in loops:
            for size in range(len(vertices) + 1):
                for below in itertools.combinations(vertices, size):
                    yield frozenset({(v, new) for v in below} | ({(new, new)} if loop else set()))
        return

    for loop in loops:
        for ins in range(1 << len(vertices)):
            for outs in range(1 << len(vertices)):
                arcs = {(v, new) for v in iter_bits(ins)} | {(new, v) for v in iter_bits(outs)}
                if loop:
                    arcs.add((new, new))
                yield frozenset(arcs)


_LEVELS: dict[tuple[str, int], tuple[Digraph, ...]] = {}


def _level(kind: str, n: int, jobs: Optional[int]) -> tuple[Digraph, ...]:
    """Canonical members of a hereditary kind with exactly `n` vertices."""
    key = (kind, n)
    if key not in _LEVELS:
        if n == 1:
            seeds = [Digraph(n=1, arcs=frozenset()), Digraph(n=1, arcs=frozenset({(0, 0)}))]
            predicate = _predicate(kind, None)
            members = sorted({canonical(seed) for seed in seeds if predicate(seed)}, key=canonical_key)
        else:
            parents = _level(kind, n - 1, jobs)
            children = parallel_map(_extensions, [(kind, parent) for parent in parents], jobs=jobs)
            members = sorted({child for group in children for child in group}, key=canonical_key)
        _LEVELS[key] = tuple(members)
        homlab_logger.debug(f"Catalog level {kind} n={n}: {len(members)} members.")
    return _LEVELS[key]


def brute_force(kind: str, n: int) -> list[Digraph]:
    """Filter all relations on `n` vertices and deduplicate by canonical form. Independent oracle."""
    name, parameter = parse_kind(kind)
    predicate = _predicate(name, parameter)
    pairs = [(u, v) for u in range(n) for v in range(n)]
    found = set()
    for bits in range(1 << len(pairs)):
        graph = Digraph(n=n, arcs=frozenset(pair for index, pair in enumerate(pairs) if (bits >> index) & 1))
        if predicate(graph):
            found.add(canonical(graph))
    return sorted(found, key=canonical_key)


@dataclass(frozen=True)
class Catalog:
    kind: str
    max_n: int
    members: tuple[Digraph, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Digraph]:
        return iter(self.members)

    def of_size(self, n: int) -> list[Digraph]:
        return [graph for graph in self.members if graph.n == n]

    def summary(self) -> CatalogRecord:
        return {"kind": self.kind, "max_n": self.max_n, "count": len(self.members)}

    def to_text(self) -> str:
        header = format_catalog_header(self.kind, self.max_n, len(self.members))
        return header + "\n" + "".join(format_digraph(graph) for graph in self.members)

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.to_text(), encoding="utf-8")

    @classmethod
    def from_text(cls, text: str) -> Catalog:
        lines = text.splitlines()
        if not lines:
            msg = "Empty catalog file."
            raise FormatError(msg)
        kind, max_n, count = parse_catalog_header(lines[0])
        parse_kind(kind)
        members = parse_digraphs("\n".join(lines[1:]))
        if len(members) != count:
            msg = f"Catalog header announces {count} members, found {len(members)}."
            raise FormatError(msg)
        return cls(kind=kind, max_n=max_n, members=tuple(members))

    @classmethod
    def load(cls, path: Union[str, Path]) -> Catalog:
        return cls.from_text(Path(path).read_text(encoding="utf-8"))


def generate(kind: str, max_n: int, *, jobs: Optional[int] = None) -> Catalog:
    """
    Every digraph of `kind` with `1..max_n` vertices, up to isomorphism.

    Members are ordered by size, then by canonical bit string.

    :raises CatalogError: Unknown kind.
    :raises ValueError: `max_n` exceeds the `MAX_CATALOG_N` setting.
    """
    name, parameter = parse_kind(kind)
    validate_max_n(max_n)

    growth = _growth_kind(name)
    predicate = _predicate(name, parameter)
    members: list[Digraph] = []
    for n in range(1, max_n + 1):
        members.extend(graph for graph in _level(growth, n, jobs) if predicate(graph))

    homlab_logger.info(f"Catalog {kind} up to {max_n} vertices: {len(members)} members.")
    return Catalog(kind=kind, max_n=max_n, members=tuple(members))
