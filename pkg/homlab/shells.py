"""
Capsules around the vertices that lie on no longest path.

Every connected component `Z` of the cover digraph restricted to the off-top vertices is guarded
by shells in the top part: a bottom shell `B(z)` meets every cover path from the top part up to
`z`, an upper shell `U(z)` every cover path from `z` up into the top part. Together with bounds
`b_Z ≤ u_Z` in the top part they confine the images of `Z` under homomorphisms into chain-like
posets, which makes the ratio of strict to all homomorphisms computable per component.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

import networkx as nx

from .digraph import Digraph, chain, cover_digraph, g_map, induced, reconstruct_path, top_structure, transitive_hull
from .errors import InvariantViolation, PreconditionError
from .homs import count_homs, j_class, top_path_family
from .maps import is_strict
from .settings import homlab_settings
from .utils import homlab_logger, iter_bits, mask_of

if TYPE_CHECKING:
    from .maps import VertexMap
    from .typing import BoundsStrategy, Mask, Optional, Sequence, ShellStrategy


__all__ = [
    "CapsuleData",
    "bounded_chain_counts",
    "capsule_system",
    "check_capsule_classes",
    "find_shells",
    "phi",
    "z_components",
]


@dataclass(frozen=True)
class CapsuleData:
    component: tuple[int, ...]
    bottom_shells: dict[int, tuple[int, ...]]
    upper_shells: dict[int, tuple[int, ...]]
    lower_bound: int
    upper_bound: int
    offsets: dict[int, int]
    """`f_Z`: position of a top vertex of the capsule interval, counted from `b_Z`."""
    length: int
    lower: dict[int, int]
    upper: dict[int, int]

    def component_digraph(self, graph: Digraph) -> Digraph:
        return induced(graph, self.component).as_digraph()

    def to_text(self) -> str:
        lines = [
            f"component {' '.join(map(str, self.component))}",
            f"bounds {self.lower_bound} {self.upper_bound} length {self.length}",
        ]
        for z in self.component:
            bottom = " ".join(map(str, self.bottom_shells[z]))
            upper = " ".join(map(str, self.upper_shells[z]))
            lines.append(f"  {z}: B={{{bottom}}} U={{{upper}}} m={self.lower[z]} M={self.upper[z]}")
        return "\n".join(lines)


def z_components(graph: Digraph) -> list[tuple[int, ...]]:
    """
    Connected components of `G_×` restricted to the vertices on no longest path.

    :raises PreconditionError: The loopless part of `G` has a cycle.
    """
    off_top = top_structure(graph).off_top_vertices
    cover = cover_digraph(graph)
    members = set(off_top)

    undirected = nx.Graph()
    undirected.add_nodes_from(off_top)
    undirected.add_edges_from((u, v) for u, v in cover.arcs if u in members and v in members)
    return sorted(tuple(sorted(component)) for component in nx.connected_components(undirected))


def _frontier(graph: Digraph, vertex: int, *, upwards: bool) -> Mask:
    """Top vertices joined to `vertex` by a cover path whose inner vertices are all off-top."""
    cover = cover_digraph(graph)
    top_mask = top_structure(graph).top_mask
    step = cover.out_masks if upwards else cover.in_masks

    found = 0
    seen = 1 << vertex
    stack = [vertex]
    while stack:
        current = stack.pop()
        for w in iter_bits(step[current] & ~seen):
            seen |= 1 << w
            if (top_mask >> w) & 1:
                found |= 1 << w
            else:
                stack.append(w)
    return found


def _reachable_top(graph: Digraph, vertex: int, *, upwards: bool) -> Mask:
    hull = transitive_hull(graph)
    reach = hull.out_masks[vertex] if upwards else hull.in_masks[vertex]
    return reach & top_structure(graph).top_mask & ~(1 << vertex)


def _shells(graph: Digraph, vertex: int, strategy: ShellStrategy) -> tuple[Mask, Mask]:
    if strategy == "frontier":
        return _frontier(graph, vertex, upwards=False), _frontier(graph, vertex, upwards=True)
    if strategy == "full":
        return _reachable_top(graph, vertex, upwards=False), _reachable_top(graph, vertex, upwards=True)
    msg = f"Unknown shell strategy {strategy!r}."
    raise PreconditionError(msg)


def _closed_interval(graph: Digraph, low: int, high: int) -> Optional[Mask]:
    """`[low, high]` in the transitive hull with the diagonal added, or None if `low ≰ high`."""
    hull = transitive_hull(graph)
    above = hull.out_masks[low] | (1 << low)
    below = hull.in_masks[high] | (1 << high)
    if not (above >> high) & 1:
        return None
    return above & below


def find_shells(
    graph: Digraph,
    component: Sequence[int],
    *,
    strategy: Optional[ShellStrategy] = None,
    bounds: Optional[BoundsStrategy] = None,
) -> Optional[CapsuleData]:
    """
    Shells and capsule bounds for one component, or None if no admissible bounds exist.

    :param strategy: 'frontier' (the smallest shells) or 'full' (every top vertex below/above).
    :param bounds: Pick the 'first' or the 'last' admissible bound pair in lexicographic order.
    """
    strategy = strategy or homlab_settings.SHELL_STRATEGY
    bounds = bounds or homlab_settings.BOUNDS_STRATEGY

    shells = {z: _shells(graph, z, strategy) for z in component}
    guarded = mask_of(component)
    for bottom, upper in shells.values():
        guarded |= bottom | upper

    top = top_structure(graph).top_vertices
    pairs = list(itertools.product(top, repeat=2))
    if bounds == "last":
        pairs.reverse()

    for low, high in pairs:
        span = _closed_interval(graph, low, high)
        if span is None or guarded & ~span:
            continue
        return _capsule(graph, tuple(sorted(component)), shells, low, high, span)
    return None


def _capsule(
    graph: Digraph,
    component: tuple[int, ...],
    shells: dict[int, tuple[Mask, Mask]],
    low: int,
    high: int,
    span: Mask,
) -> CapsuleData:
    positions = g_map(graph)
    offsets = {
        w: positions[w] - positions[low]
        for w in iter_bits(span & top_structure(graph).top_mask)
    }
    lower = {z: max(offsets[b] for b in iter_bits(shells[z][0])) for z in component}
    upper = {z: min(offsets[u] for u in iter_bits(shells[z][1])) for z in component}
    return CapsuleData(
        component=component,
        bottom_shells={z: tuple(iter_bits(shells[z][0])) for z in component},
        upper_shells={z: tuple(iter_bits(shells[z][1])) for z in component},
        lower_bound=low,
        upper_bound=high,
        offsets=offsets,
        length=offsets[high],
        lower=lower,
        upper=upper,
    )


def capsule_system(
    graph: Digraph,
    *,
    strategy: Optional[ShellStrategy] = None,
    bounds: Optional[BoundsStrategy] = None,
) -> Optional[list[CapsuleData]]:
    """Capsule data for every component, or None if some component cannot be encapsulated."""
    capsules = []
    for component in z_components(graph):
        capsule = find_shells(graph, component, strategy=strategy, bounds=bounds)
        if capsule is None:
            homlab_logger.debug(f"No capsule bounds for component {component} of {graph}.")
            return None
        capsules.append(capsule)
    return capsules


def _bound_domains(lower: Sequence[int], upper: Sequence[int], *, strict: bool) -> dict[int, Mask]:
    domains = {}
    for index, (low, high) in enumerate(zip(lower, upper)):
        if strict:
            low, high = low + 1, high - 1
        domains[index] = mask_of(range(low, high + 1)) if low <= high else 0
    return domains


def bounded_chain_counts(
    component: Digraph,
    lower: Sequence[int],
    upper: Sequence[int],
    length: int,
) -> tuple[int, int]:
    """
    Homomorphisms `θ` of `component` into the chain `0..length` with `lower ≤ θ ≤ upper` pointwise,
    and the strict ones with `lower < θ < upper`.
    """
    if length < 0:
        msg = "Chain length must be non-negative."
        raise PreconditionError(msg)
    if len(lower) != component.n or len(upper) != component.n:
        msg = "Bounds must be given for every vertex of the component."
        raise PreconditionError(msg)

    target = chain(length)
    loose = _bound_domains(lower, upper, strict=False)
    tight = _bound_domains(lower, upper, strict=True)
    if not all(loose.values()):
        return 0, 0
    homs = count_homs(component, target, domains=loose)
    strict = count_homs(component, target, strict=True, domains=tight) if all(tight.values()) else 0
    return homs, strict


def _component_counts(graph: Digraph, capsule: CapsuleData) -> tuple[int, int]:
    return bounded_chain_counts(
        capsule.component_digraph(graph),
        [capsule.lower[z] for z in capsule.component],
        [capsule.upper[z] for z in capsule.component],
        capsule.length,
    )


def phi(
    graph: Digraph,
    *,
    strategy: Optional[ShellStrategy] = None,
    bounds: Optional[BoundsStrategy] = None,
) -> Fraction:
    """
    The ratio of strict homomorphisms to profile-equivalent ones, as a product over the capsules.

    :raises PreconditionError: Some off-top component of `G` admits no capsule.
    """
    capsules = capsule_system(graph, strategy=strategy, bounds=bounds)
    if capsules is None:
        msg = f"{graph} has an off-top component without capsule bounds."
        raise PreconditionError(msg)

    result = Fraction(1)
    for capsule in capsules:
        homs, strict = _component_counts(graph, capsule)
        if not homs:
            msg = f"No bounded homomorphisms for component {capsule.component} of {graph}."
            raise InvariantViolation(msg)
        result *= Fraction(strict, homs)
    return result


def check_capsule_classes(graph: Digraph, target: Digraph, sigma: VertexMap) -> list[str]:
    """
    Partition the profile class of a strict `σ` by the restriction to the top vertices and check
    every part: its size is the product of the bounded counts, its strict members are counted by
    the strict bounded counts, and a member is strict iff each component lands strictly inside
    its capsule interval and is strict on the component.
    """
    problems: list[str] = []
    capsules = capsule_system(graph)
    if capsules is None:
        return [f"{graph} has an off-top component without capsule bounds"]

    top = top_structure(graph).top_vertices
    expected_size = expected_strict = 1
    for capsule in capsules:
        homs, strict = _component_counts(graph, capsule)
        expected_size *= homs
        expected_strict *= strict

    parts: dict[tuple[int, ...], list[VertexMap]] = {}
    for zeta in j_class(sigma, graph, target, target, top_path_family(graph)):
        parts.setdefault(tuple(zeta.image[v] for v in top), []).append(zeta)

    for key, members in parts.items():
        strict_members = [zeta for zeta in members if is_strict(zeta, graph, target)]
        if len(members) != expected_size:
            problems.append(f"class of top image {key} has {len(members)} members, expected {expected_size}")
        if len(strict_members) != expected_strict:
            problems.append(
                f"class of top image {key} has {len(strict_members)} strict members, expected {expected_strict}"
            )
        for zeta in members:
            if _inside_capsules(graph, target, zeta, capsules) != (zeta in strict_members):
                problems.append(f"strictness criterion fails for {zeta}")
    return problems


def _inside_capsules(graph: Digraph, target: Digraph, zeta: VertexMap, capsules: Sequence[CapsuleData]) -> bool:
    for capsule in capsules:
        span = _closed_interval(target, zeta.image[capsule.lower_bound], zeta.image[capsule.upper_bound])
        path = reconstruct_path(target, iter_bits(span)) if span is not None else None
        if path is None:
            return False
        position = {vertex: index for index, vertex in enumerate(path.vertices)}
        for z in capsule.component:
            index = position.get(zeta.image[z])
            if index is None or not capsule.lower[z] < index < capsule.upper[z]:
                return False
        restricted = zeta.restrict(capsule.component)
        if not is_strict(restricted, capsule.component_digraph(graph), target):
            return False
    return True
