"""
Immutable digraph values on the vertices `0..n-1` and their structural operations.

Arcs are stored as a frozen set of pairs. Adjacency bitsets (and their transposes) are derived
lazily, so that an interval `[v, w]` is a single intersection of two bitsets.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import TYPE_CHECKING

import networkx as nx

from .errors import InvariantViolation, PreconditionError
from .maps import VertexMap, is_strict
from .utils import iter_bits, mask_of, popcount
from .validators import validate_vertex_count

if TYPE_CHECKING:
    from .typing import Arc, ArcSet, Iterable, Mask, Optional, Sequence


__all__ = [
    "Digraph",
    "PathSeq",
    "Subgraph",
    "TopStructure",
    "add_loops",
    "all_paths",
    "chain",
    "concatenate",
    "cover_digraph",
    "disjoint_union",
    "g_map",
    "height",
    "induced",
    "interval",
    "iota",
    "isolated_vertices",
    "kappa_maps",
    "lambda_maps",
    "longest_path_ending",
    "loopless_part_is_acyclic",
    "maximal_paths",
    "paths_on_vertex_set",
    "reconstruct_path",
    "relabel",
    "singleton_with_loop",
    "strip_loops",
    "top_structure",
    "transitive_hull",
    "transitive_reduction",
    "walk_power",
]


@dataclass(frozen=True, repr=False)
class Digraph:
    """Digraph on the vertices `0..n-1`. Loops are allowed. Equality is literal."""

    n: int
    arcs: ArcSet

    def __post_init__(self) -> None:
        validate_vertex_count(self.n)
        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        for u, v in arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                msg = f"Arc {u} {v} leaves the vertex set 0..{self.n - 1}."
                raise PreconditionError(msg)
        object.__setattr__(self, "arcs", arcs)

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={list(self.sorted_arcs)})"

    @classmethod
    def from_masks(cls, out_masks: Sequence[Mask]) -> Digraph:
        arcs = frozenset((u, v) for u, mask in enumerate(out_masks) for v in iter_bits(mask))
        return cls(n=len(out_masks), arcs=arcs)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def full_mask(self) -> Mask:
        return (1 << self.n) - 1

    @cached_property
    def out_masks(self) -> tuple[Mask, ...]:
        masks = [0] * self.n
        for u, v in self.arcs:
            masks[u] |= 1 << v
        return tuple(masks)

    @cached_property
    def in_masks(self) -> tuple[Mask, ...]:
        masks = [0] * self.n
        for u, v in self.arcs:
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def loop_mask(self) -> Mask:
        return mask_of(u for u, v in self.arcs if u == v)

    @cached_property
    def sorted_arcs(self) -> tuple[Arc, ...]:
        return tuple(sorted(self.arcs))

    @cached_property
    def proper_arcs(self) -> tuple[Arc, ...]:
        """Arcs between distinct vertices, i.e. `A(G*)`, in ascending order."""
        return tuple(arc for arc in self.sorted_arcs if arc[0] != arc[1])

    @cached_property
    def adjacency_masks(self) -> tuple[Mask, ...]:
        """Undirected adjacency over proper arcs."""
        return tuple((self.out_masks[v] | self.in_masks[v]) & ~(1 << v) for v in range(self.n))

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def degree(self, v: int) -> int:
        return popcount(self.adjacency_masks[v])

    @property
    def is_reflexive(self) -> bool:
        return self.loop_mask == self.full_mask

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.sorted_arcs)
        return graph


@dataclass(frozen=True, repr=False)
class Subgraph:
    """Subgraph of a host digraph, in the host's vertex labels."""

    vertices: tuple[int, ...]
    arcs: ArcSet

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(sorted(set(self.vertices))))
        object.__setattr__(self, "arcs", frozenset(self.arcs))
        members = set(self.vertices)
        if any(u not in members or v not in members for u, v in self.arcs):
            msg = "Subgraph arcs must join subgraph vertices."
            raise PreconditionError(msg)

    def __repr__(self) -> str:
        return f"Subgraph(vertices={list(self.vertices)}, arcs={sorted(self.arcs)})"

    @classmethod
    def whole(cls, graph: Digraph) -> Subgraph:
        return cls(vertices=tuple(graph.vertices), arcs=graph.arcs)

    @cached_property
    def proper_arcs(self) -> tuple[Arc, ...]:
        return tuple(sorted(arc for arc in self.arcs if arc[0] != arc[1]))

    @property
    def vertex_mask(self) -> Mask:
        return mask_of(self.vertices)

    def is_subgraph_of(self, graph: Digraph) -> bool:
        return all(v < graph.n for v in self.vertices) and self.arcs <= graph.arcs

    def as_digraph(self) -> Digraph:
        """Relabel to `0..k-1` by position in the sorted vertex tuple."""
        position = {v: i for i, v in enumerate(self.vertices)}
        return Digraph(n=len(self.vertices), arcs=frozenset((position[u], position[v]) for u, v in self.arcs))


@dataclass(frozen=True, order=True)
class PathSeq:
    """Sequence of pairwise distinct vertices with consecutive pairs joined by arcs."""

    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if not self.vertices:
            msg = "A path has at least one vertex."
            raise PreconditionError(msg)
        if len(set(self.vertices)) != len(self.vertices):
            msg = f"Path vertices must be distinct: {self.vertices}"
            raise PreconditionError(msg)

    def __len__(self) -> int:
        return len(self.vertices)

    def __getitem__(self, index: int) -> int:
        return self.vertices[index]

    def __contains__(self, vertex: object) -> bool:
        return vertex in self.vertices

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def bottom(self) -> int:
        return self.vertices[0]

    @property
    def top(self) -> int:
        return self.vertices[-1]

    @property
    def arcs(self) -> tuple[Arc, ...]:
        return tuple(zip(self.vertices, self.vertices[1:]))

    @property
    def vertex_mask(self) -> Mask:
        return mask_of(self.vertices)

    def is_path_in(self, graph: Digraph) -> bool:
        return all(v < graph.n for v in self.vertices) and all(arc in graph.arcs for arc in self.arcs)

    def cover_subgraph(self) -> Subgraph:
        """The subgraph `P_×`: the path's vertices with its consecutive arcs."""
        return Subgraph(vertices=self.vertices, arcs=frozenset(self.arcs))


@dataclass(frozen=True)
class TopStructure:
    height: int
    maximal_paths: tuple[PathSeq, ...]
    top_paths: tuple[PathSeq, ...]
    top_mask: Mask
    off_top_mask: Mask
    top_subgraph: Subgraph

    @property
    def top_vertices(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.top_mask))

    @property
    def off_top_vertices(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.off_top_mask))


# Construction


def chain(n: int) -> Digraph:
    """Reflexive and transitive chain `C_n` on `n + 1` vertices."""
    if n < 0:
        msg = "Chain length must be non-negative."
        raise PreconditionError(msg)
    return Digraph(n=n + 1, arcs=frozenset((i, j) for i in range(n + 1) for j in range(i, n + 1)))


def singleton_with_loop() -> Digraph:
    return chain(0)


def strip_loops(graph: Digraph) -> Digraph:
    if not graph.loop_mask:
        return graph
    return Digraph(n=graph.n, arcs=frozenset(arc for arc in graph.arcs if arc[0] != arc[1]))


def add_loops(graph: Digraph, vertices: Optional[Iterable[int]] = None) -> Digraph:
    loops = {(v, v) for v in (graph.vertices if vertices is None else vertices)}
    return Digraph(n=graph.n, arcs=graph.arcs | loops)


def induced(graph: Digraph, vertices: Iterable[int]) -> Subgraph:
    mask = mask_of(vertices)
    return Subgraph(
        vertices=tuple(iter_bits(mask)),
        arcs=frozenset((u, v) for u, v in graph.arcs if (mask >> u) & 1 and (mask >> v) & 1),
    )


def relabel(graph: Digraph, permutation: Sequence[int]) -> Digraph:
    """Vertex `v` becomes `permutation[v]`."""
    if sorted(permutation) != list(range(graph.n)):
        msg = f"Not a permutation of 0..{graph.n - 1}: {permutation}"
        raise PreconditionError(msg)
    return Digraph(n=graph.n, arcs=frozenset((permutation[u], permutation[v]) for u, v in graph.arcs))


def disjoint_union(first: Digraph, second: Digraph) -> Digraph:
    shift = first.n
    return Digraph(
        n=first.n + second.n,
        arcs=first.arcs | frozenset((u + shift, v + shift) for u, v in second.arcs),
    )


def isolated_vertices(graph: Digraph) -> Mask:
    """Vertices on no proper arc. Loops do not count."""
    return mask_of(v for v in graph.vertices if not graph.adjacency_masks[v])


# Intervals


def interval(graph: Digraph, v: int, w: int) -> Mask:
    """The interval `[v, w] = N_out(v) ∩ N_in(w)` of an arc `vw`."""
    if (v, w) not in graph.arcs:
        msg = f"Interval is only defined for arcs, and {v} {w} is not an arc."
        raise PreconditionError(msg)
    return graph.out_masks[v] & graph.in_masks[w]


def iota(graph: Digraph, v: int, w: int) -> int:
    return popcount(interval(graph, v, w))


# Walks and hulls


def _compose_masks(first: Sequence[Mask], second: Sequence[Mask]) -> list[Mask]:
    result = []
    for mask in first:
        row = 0
        for w in iter_bits(mask):
            row |= second[w]
        result.append(row)
    return result


def walk_power(graph: Digraph, exponent: int) -> Digraph:
    """The digraph `G^i` with an arc `uv` iff a walk of length exactly `i` leads from `u` to `v`."""
    if exponent < 0:
        msg = "Walk power exponent must be non-negative."
        raise PreconditionError(msg)
    masks: list[Mask] = [1 << v for v in graph.vertices]
    for _ in range(exponent):
        masks = _compose_masks(masks, graph.out_masks)
    return Digraph.from_masks(masks)


@lru_cache(maxsize=4096)
def transitive_hull(graph: Digraph) -> Digraph:
    """Smallest transitive arc set containing `A(G)`; closed walks contribute loops."""
    reach = list(graph.out_masks)
    for k in graph.vertices:
        bit = 1 << k
        row = reach[k]
        for i in graph.vertices:
            if reach[i] & bit:
                reach[i] |= row
    return Digraph.from_masks(reach)


def _topological_order(graph: Digraph) -> Optional[list[int]]:
    """Topological order of the loopless part, or None if it has a cycle."""
    star_in = [graph.in_masks[v] & ~(1 << v) for v in graph.vertices]
    remaining = graph.full_mask
    order: list[int] = []
    while remaining:
        sources = [v for v in iter_bits(remaining) if not star_in[v] & remaining]
        if not sources:
            return None
        for v in sources:
            order.append(v)
            remaining &= ~(1 << v)
    return order


def loopless_part_is_acyclic(graph: Digraph) -> bool:
    return _topological_order(graph) is not None


def _require_acyclic(graph: Digraph, operation: str) -> list[int]:
    order = _topological_order(graph)
    if order is None:
        msg = f"{operation} requires a digraph whose loopless part is acyclic."
        raise PreconditionError(msg)
    return order


@lru_cache(maxsize=4096)
def transitive_reduction(graph: Digraph) -> Digraph:
    """
    Transitive reduction of a digraph with an acyclic loopless part.

    Erases every arc `vw` for which `v` reaches `w` by a walk of length at least 2 in `G*`.

    :raises PreconditionError: The loopless part has a cycle, so the reduction is not unique.
    """
    _require_acyclic(graph, "Transitive reduction")
    star = strip_loops(graph)

    longer = [0] * graph.n
    power = walk_power(star, 2).out_masks
    # Walks in an acyclic digraph are shorter than n.
    for _ in range(2, graph.n):
        if not any(power):
            break
        longer = [a | b for a, b in zip(longer, power)]
        power = tuple(_compose_masks(power, star.out_masks))

    return Digraph(n=graph.n, arcs=frozenset((u, v) for u, v in graph.arcs if not (longer[u] >> v) & 1))


def cover_digraph(graph: Digraph) -> Digraph:
    """The digraph `G_×`, i.e. the transitive reduction without loops."""
    return strip_loops(transitive_reduction(graph))


# Paths


def all_paths(graph: Digraph) -> list[PathSeq]:
    """Every path of `G`, including the paths of length zero, in ascending order."""
    paths: list[PathSeq] = []

    def extend(sequence: list[int], used: Mask) -> None:
        paths.append(PathSeq(tuple(sequence)))
        for w in iter_bits(graph.out_masks[sequence[-1]] & ~used):
            sequence.append(w)
            extend(sequence, used | (1 << w))
            sequence.pop()

    for v in graph.vertices:
        extend([v], 1 << v)
    return sorted(paths)


def paths_on_vertex_set(graph: Digraph, vertices: Iterable[int], *, limit: Optional[int] = None) -> list[PathSeq]:
    """Paths of `G` whose vertex set is exactly `vertices`, up to `limit` of them."""
    target = mask_of(vertices)
    size = popcount(target)
    found: list[PathSeq] = []

    def extend(sequence: list[int], used: Mask) -> bool:
        if len(sequence) == size:
            found.append(PathSeq(tuple(sequence)))
            return limit is not None and len(found) >= limit
        for w in iter_bits(graph.out_masks[sequence[-1]] & target & ~used):
            sequence.append(w)
            if extend(sequence, used | (1 << w)):
                return True
            sequence.pop()
        return False

    for v in iter_bits(target):
        if extend([v], 1 << v):
            break
    return found


def reconstruct_path(graph: Digraph, vertices: Iterable[int]) -> Optional[PathSeq]:
    """The path through exactly `vertices`, if there is exactly one such path."""
    candidates = paths_on_vertex_set(graph, vertices, limit=2)
    if len(candidates) == 1:
        return candidates[0]
    return None


def concatenate(first: PathSeq, second: PathSeq) -> PathSeq:
    """Join two paths meeting only in the top of `first` and the bottom of `second`."""
    if first.top != second.bottom or (first.vertex_mask & second.vertex_mask) != 1 << first.top:
        msg = "Paths can only be concatenated when they share exactly their joining endpoint."
        raise PreconditionError(msg)
    return PathSeq(first.vertices + second.vertices[1:])


def longest_path_ending(graph: Digraph) -> tuple[int, ...]:
    """For every vertex, the length of the longest path ending in it."""
    order = _require_acyclic(graph, "Longest paths")
    depth = [0] * graph.n
    for v in order:
        preds = graph.in_masks[v] & ~(1 << v)
        if preds:
            depth[v] = 1 + max(depth[u] for u in iter_bits(preds))
    return tuple(depth)


def height(graph: Digraph) -> int:
    return max(longest_path_ending(graph))


def maximal_paths(graph: Digraph) -> list[PathSeq]:
    """
    The maximal paths of `G`, found as the source-to-sink paths of `G_×`.

    :raises PreconditionError: The loopless part of `G` has a cycle.
    """
    cover = cover_digraph(graph)
    sources = [v for v in cover.vertices if not cover.in_masks[v]]
    paths: list[PathSeq] = []

    def extend(sequence: list[int]) -> None:
        successors = cover.out_masks[sequence[-1]]
        if not successors:
            paths.append(PathSeq(tuple(sequence)))
            return
        for w in iter_bits(successors):
            sequence.append(w)
            extend(sequence)
            sequence.pop()

    for source in sources:
        extend([source])
    return sorted(paths)


@lru_cache(maxsize=4096)
def top_structure(graph: Digraph) -> TopStructure:
    """Height, maximal paths, the longest ones among them, and the vertices they cover."""
    paths = maximal_paths(graph)
    top_height = max(path.length for path in paths)
    top_paths = tuple(path for path in paths if path.length == top_height)
    top_mask = 0
    for path in top_paths:
        top_mask |= path.vertex_mask

    if top_height != height(graph):
        msg = f"Maximal path height {top_height} differs from longest path height {height(graph)}."
        raise InvariantViolation(msg)

    return TopStructure(
        height=top_height,
        maximal_paths=tuple(paths),
        top_paths=top_paths,
        top_mask=top_mask,
        off_top_mask=graph.full_mask & ~top_mask,
        top_subgraph=induced(graph, iter_bits(top_mask)),
    )


def g_map(graph: Digraph) -> dict[int, int]:
    """Position of every top-path vertex, the same on every longest path through it."""
    positions: dict[int, int] = {}
    for path in top_structure(graph).top_paths:
        for index, vertex in enumerate(path.vertices):
            known = positions.setdefault(vertex, index)
            if known != index:
                msg = f"Vertex {vertex} sits at positions {known} and {index} of two longest paths."
                raise InvariantViolation(msg)
    return dict(sorted(positions.items()))


def lambda_maps(graph: Digraph, n: int) -> tuple[VertexMap, VertexMap]:
    """
    The strict homomorphisms `λ` and `λ̂` from `G` into the chain `C_n`.

    `λ(v)` is the length of the longest path ending in `v`. `λ̂` sends vertices without a
    proper out-neighbour to the top `n` of the chain and agrees with `λ` elsewhere.

    :raises PreconditionError: `n` is smaller than the height of `G`.
    """
    depth = longest_path_ending(graph)
    if n < max(depth):
        msg = f"Chain length {n} is below the height {max(depth)} of the digraph."
        raise PreconditionError(msg)

    lam = VertexMap(image=depth, codomain_size=n + 1)
    hat = VertexMap(
        image=tuple(depth[v] if graph.out_masks[v] & ~(1 << v) else n for v in graph.vertices),
        codomain_size=n + 1,
    )

    target = chain(n)
    for name, xi in (("lambda", lam), ("lambda_hat", hat)):
        if not is_strict(xi, graph, target):
            msg = f"{name} map {xi} is not a strict homomorphism into C_{n}."
            raise InvariantViolation(msg)
    return lam, hat


def kappa_maps(graph: Digraph) -> tuple[VertexMap, VertexMap]:
    """
    The homomorphisms `κ_in` and `κ_out` from `G` into the chain of its height.

    `κ_in(v)` is the largest position `i` of a longest path whose `i`-th vertex reaches `v`
    (zero if there is none), `κ_out(v)` the smallest position reachable from `v` (the height if none).
    """
    structure = top_structure(graph)
    n = structure.height
    reach = transitive_hull(graph).out_masks
    kappa_in = [0] * graph.n
    kappa_out = [n] * graph.n

    for v in graph.vertices:
        reach_v = reach[v] | (1 << v)
        for path in structure.top_paths:
            for index, p in enumerate(path.vertices):
                if (reach[p] | (1 << p)) >> v & 1:
                    kappa_in[v] = max(kappa_in[v], index)
                if reach_v >> p & 1:
                    kappa_out[v] = min(kappa_out[v], index)

    return (
        VertexMap(image=tuple(kappa_in), codomain_size=n + 1),
        VertexMap(image=tuple(kappa_out), codomain_size=n + 1),
    )
