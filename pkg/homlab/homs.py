"""
Exact enumeration and counting of (strict) homomorphisms between digraphs.

The search assigns source vertices in a fixed order and keeps, for every unassigned vertex,
a bitset of target vertices still compatible with the already assigned neighbours
(forward checking). Source vertices that are pairwise non-adjacent are placed at the end of
the order. Once only those remain, their choices are independent and the count of the
remaining subtree is the product of their domain sizes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .digraph import Digraph, PathSeq, Subgraph, top_structure
from .errors import PreconditionError
from .maps import VertexMap, is_homomorphism, is_strict
from .utils import iter_bits, popcount

if TYPE_CHECKING:
    from .typing import Arc, Image, Iterable, Iterator, Mapping, Mask, Optional, Sequence


__all__ = [
    "HomSearch",
    "IotaProfile",
    "count_extensions",
    "count_homs",
    "enumerate_homs",
    "extensions",
    "family_arcs",
    "i_class",
    "iota_profile",
    "is_path_strict",
    "iter_homs",
    "j_class",
    "m_class",
    "mu",
    "mu_hat",
    "naive_homs",
    "pi_alpha",
    "top_path_family",
    "two_profile",
    "zero_profile",
]


class HomSearch:
    """
    Backtracking search over `ℋ(G,H)` or `𝒮(G,H)`.

    :param source: The digraph `G`.
    :param target: The digraph `H`.
    :param strict: Only strict homomorphisms.
    :param fixed: Vertices of `G` with a prescribed image.
    :param domains: Vertices of `G` with a restricted set of allowed images, as bitsets over `V(H)`.
    """

    def __init__(
        self,
        source: Digraph,
        target: Digraph,
        *,
        strict: bool = False,
        fixed: Optional[Mapping[int, int]] = None,
        domains: Optional[Mapping[int, Mask]] = None,
    ) -> None:
        self.source = source
        self.target = target
        self.strict = strict
        self.fixed = dict(fixed or {})

        if strict:
            self.target_out = tuple(mask & ~(1 << a) for a, mask in enumerate(target.out_masks))
            self.target_in = tuple(mask & ~(1 << a) for a, mask in enumerate(target.in_masks))
        else:
            self.target_out = target.out_masks
            self.target_in = target.in_masks

        self.initial = self._initial_domains(domains or {})
        self.order, self.suffix_start = self._plan()
        self.position = {v: i for i, v in enumerate(self.order)}
        self.later = self._later_neighbours()

    def _initial_domains(self, domains: Mapping[int, Mask]) -> list[Mask]:
        initial = []
        for v in self.source.vertices:
            mask = self.target.full_mask
            if (self.source.loop_mask >> v) & 1:
                mask &= self.target.loop_mask
            if v in domains:
                mask &= domains[v]
            if v in self.fixed:
                mask &= 1 << self.fixed[v]
            initial.append(mask)
        return initial

    def _plan(self) -> tuple[list[int], int]:
        adjacency = self.source.adjacency_masks

        # Greedy independent set for the product suffix, preferring low degree and late vertices.
        candidates = sorted(self.source.vertices, key=lambda v: (v in self.fixed, popcount(adjacency[v]), -v))
        independent = 0
        for v in candidates:
            if not adjacency[v] & independent:
                independent |= 1 << v

        prefix_vertices = [v for v in self.source.vertices if not (independent >> v) & 1]
        order: list[int] = [v for v in prefix_vertices if v in self.fixed]
        placed = sum(1 << v for v in order)
        remaining = [v for v in prefix_vertices if v not in self.fixed]
        while remaining:
            best = max(remaining, key=lambda v: (popcount(adjacency[v] & placed), popcount(adjacency[v]), -v))
            remaining.remove(best)
            order.append(best)
            placed |= 1 << best

        suffix_start = len(order)
        order.extend(iter_bits(independent))
        return order, suffix_start

    def _later_neighbours(self) -> list[list[tuple[int, bool, bool]]]:
        """For every position, the later neighbours and whether the arc goes out of / into the vertex."""
        later = []
        for v in self.order:
            entries = []
            for w in iter_bits(self.source.adjacency_masks[v]):
                if self.position[w] > self.position[v]:
                    entries.append((w, (v, w) in self.source.arcs, (w, v) in self.source.arcs))
            later.append(entries)
        return later

    def _assign(self, index: int, value: int, domains: list[Mask]) -> Optional[list[Mask]]:
        updated = domains.copy()
        for w, outgoing, incoming in self.later[index]:
            mask = updated[w]
            if outgoing:
                mask &= self.target_out[value]
            if incoming:
                mask &= self.target_in[value]
            if not mask:
                return None
            updated[w] = mask
        return updated

    def count(self) -> int:
        if not all(self.initial):
            return 0
        return self._count(0, self.initial)

    def _count(self, index: int, domains: list[Mask]) -> int:
        if index >= self.suffix_start:
            total = 1
            for v in self.order[index:]:
                total *= popcount(domains[v])
                if not total:
                    break
            return total

        total = 0
        for value in iter_bits(domains[self.order[index]]):
            updated = self._assign(index, value, domains)
            if updated is not None:
                total += self._count(index + 1, updated)
        return total

    def __iter__(self) -> Iterator[Image]:
        if not all(self.initial):
            return
        image = [0] * self.source.n
        yield from self._iterate(0, self.initial, image)

    def _iterate(self, index: int, domains: list[Mask], image: list[int]) -> Iterator[Image]:
        if index >= self.suffix_start:
            suffix = self.order[index:]
            for values in itertools.product(*(tuple(iter_bits(domains[v])) for v in suffix)):
                for v, value in zip(suffix, values):
                    image[v] = value
                yield tuple(image)
            return

        vertex = self.order[index]
        for value in iter_bits(domains[vertex]):
            updated = self._assign(index, value, domains)
            if updated is not None:
                image[vertex] = value
                yield from self._iterate(index + 1, updated, image)


def iter_homs(
    source: Digraph,
    target: Digraph,
    *,
    strict: bool = False,
    fixed: Optional[Mapping[int, int]] = None,
    domains: Optional[Mapping[int, Mask]] = None,
) -> Iterator[VertexMap]:
    """Homomorphisms in search order, without materializing them."""
    for image in HomSearch(source, target, strict=strict, fixed=fixed, domains=domains):
        yield VertexMap(image=image, codomain_size=target.n)


def enumerate_homs(
    source: Digraph,
    target: Digraph,
    *,
    strict: bool = False,
    fixed: Optional[Mapping[int, int]] = None,
    domains: Optional[Mapping[int, Mask]] = None,
) -> list[VertexMap]:
    """
    Every homomorphism from `source` to `target`, lexicographically ordered by image.

    :param strict: Only homomorphisms mapping proper arcs to proper arcs.
    :param fixed: Prescribed images for some source vertices.
    :param domains: Allowed images for some source vertices, as bitsets.
    """
    images = sorted(HomSearch(source, target, strict=strict, fixed=fixed, domains=domains))
    return [VertexMap(image=image, codomain_size=target.n) for image in images]


def count_homs(
    source: Digraph,
    target: Digraph,
    *,
    strict: bool = False,
    fixed: Optional[Mapping[int, int]] = None,
    domains: Optional[Mapping[int, Mask]] = None,
) -> int:
    return HomSearch(source, target, strict=strict, fixed=fixed, domains=domains).count()


def naive_homs(source: Digraph, target: Digraph, *, strict: bool = False) -> list[VertexMap]:
    """Filter all `|V(H)|^|V(G)|` maps. Only for cross-checking the search on small inputs."""
    check = is_strict if strict else is_homomorphism
    result = []
    for image in itertools.product(range(target.n), repeat=source.n):
        xi = VertexMap(image=image, codomain_size=target.n)
        if check(xi, source, target):
            result.append(xi)
    return result


# Extension classes


def _require_contained(small: Digraph, big: Digraph) -> None:
    if small.n > big.n or not small.arcs <= big.arcs:
        msg = "The first digraph must be a subgraph of the second one on the same vertex labels."
        raise PreconditionError(msg)


def extensions(xi: VertexMap, small: Digraph, big: Digraph, target: Digraph) -> list[VertexMap]:
    """
    The extension class `[ξ]`: homomorphisms of `big` that agree with `ξ` on the vertices of `small`.

    :raises PreconditionError: `small` is not contained in `big`, or `ξ` is not a homomorphism of `small`.
    """
    _require_contained(small, big)
    if not is_homomorphism(xi, small, target):
        msg = f"{xi} is not a homomorphism of the smaller digraph."
        raise PreconditionError(msg)
    return enumerate_homs(big, target, fixed=dict(enumerate(xi.image)))


def count_extensions(xi: VertexMap, small: Digraph, big: Digraph, target: Digraph) -> int:
    _require_contained(small, big)
    if not is_homomorphism(xi, small, target):
        msg = f"{xi} is not a homomorphism of the smaller digraph."
        raise PreconditionError(msg)
    return count_homs(big, target, fixed=dict(enumerate(xi.image)))


# Interval profiles


@dataclass(frozen=True)
class IotaProfile:
    """Values `ι(ξ(v), ξ(w))_H` on an arc subset, in ascending arc order."""

    arcs: tuple[Arc, ...]
    values: tuple[int, ...]

    def as_dict(self) -> dict[Arc, int]:
        return dict(zip(self.arcs, self.values))

    def restrict(self, arcs: Iterable[Arc]) -> IotaProfile:
        lookup = self.as_dict()
        chosen = tuple(sorted(set(arcs)))
        return IotaProfile(arcs=chosen, values=tuple(lookup[arc] for arc in chosen))

    @property
    def total(self) -> int:
        return sum(self.values)

    def is_constant(self, value: int) -> bool:
        return all(v == value for v in self.values)


def iota_profile(xi: VertexMap, source: Digraph, target: Digraph, arcs: Optional[Iterable[Arc]] = None) -> IotaProfile:
    """
    Profile of `ξ` on `arcs`, defaulting to all proper arcs of `source`.

    :raises PreconditionError: An arc is not mapped to an arc of `target`.
    """
    chosen = tuple(sorted(set(source.proper_arcs if arcs is None else arcs)))
    values = []
    for v, w in chosen:
        a, b = xi.image[v], xi.image[w]
        if (a, b) not in target.arcs:
            msg = f"Arc {v} {w} is not mapped to an arc by {xi}."
            raise PreconditionError(msg)
        values.append(popcount(target.out_masks[a] & target.in_masks[b]))
    return IotaProfile(arcs=chosen, values=tuple(values))


def zero_profile(arcs: Iterable[Arc]) -> IotaProfile:
    chosen = tuple(sorted(set(arcs)))
    return IotaProfile(arcs=chosen, values=(0,) * len(chosen))


def two_profile(arcs: Iterable[Arc]) -> IotaProfile:
    chosen = tuple(sorted(set(arcs)))
    return IotaProfile(arcs=chosen, values=(2,) * len(chosen))


def mu(xi: VertexMap, target: Digraph, arcs: Iterable[Arc]) -> int:
    """Sum of `ι(ξ(v), ξ(w))_H` over the given proper arcs."""
    out_masks, in_masks = target.out_masks, target.in_masks
    image = xi.image
    return sum(popcount(out_masks[image[v]] & in_masks[image[w]]) for v, w in arcs if v != w)


# Maximal profile classes


def mu_hat(subgraph: Digraph, target: Digraph) -> tuple[int, list[VertexMap]]:
    """
    The largest `μ` over `ℋ(L,H)` and the homomorphisms attaining it.

    :raises PreconditionError: There is no homomorphism from `L` to `H`.
    """
    best = -1
    attaining: list[VertexMap] = []
    for xi in enumerate_homs(subgraph, target):
        value = mu(xi, target, subgraph.proper_arcs)
        if value > best:
            best, attaining = value, [xi]
        elif value == best:
            attaining.append(xi)

    if best < 0:
        msg = "The maximum interval sum is undefined without homomorphisms."
        raise PreconditionError(msg)
    return best, attaining


def _family_maxima(source: Digraph, target: Digraph, family: Sequence[Subgraph]) -> list[int]:
    cache: dict[Digraph, int] = {}
    maxima = []
    for member in family:
        if not member.is_subgraph_of(source):
            msg = f"{member} is not a subgraph of the source digraph."
            raise PreconditionError(msg)
        relabelled = member.as_digraph()
        if relabelled not in cache:
            cache[relabelled] = mu_hat(relabelled, target)[0]
        maxima.append(cache[relabelled])
    return maxima


def m_class(source: Digraph, target: Digraph, family: Sequence[Subgraph]) -> list[VertexMap]:
    """Homomorphisms whose restriction to every member of `family` attains the member's maximum."""
    maxima = _family_maxima(source, target, family)
    return [
        xi
        for xi in enumerate_homs(source, target)
        if all(mu(xi, target, member.proper_arcs) == best for member, best in zip(family, maxima))
    ]


def family_arcs(family: Sequence[Subgraph]) -> tuple[Arc, ...]:
    """Union of the proper arcs of the family members."""
    return tuple(sorted({arc for member in family for arc in member.proper_arcs}))


def i_class(source: Digraph, target: Digraph, family: Sequence[Subgraph]) -> set[IotaProfile]:
    arcs = family_arcs(family)
    return {iota_profile(xi, source, target, arcs) for xi in m_class(source, target, family)}


def j_class(
    xi: VertexMap,
    source: Digraph,
    host: Digraph,
    target: Digraph,
    family: Sequence[Subgraph],
) -> list[VertexMap]:
    """
    Homomorphisms from `source` to `target` whose profile on every member of `family` equals the
    profile of `ξ` (a homomorphism into `host`).
    """
    for member in family:
        if not member.is_subgraph_of(source):
            msg = f"{member} is not a subgraph of the source digraph."
            raise PreconditionError(msg)

    arcs = family_arcs(family)
    expected = iota_profile(xi, source, host, arcs)
    return [zeta for zeta in enumerate_homs(source, target) if iota_profile(zeta, source, target, arcs) == expected]


def pi_alpha(xi: VertexMap, weights: Mapping[Arc, int], target: Digraph) -> int:
    """
    The product of `ι(ξ(v), ξ(w))_H ** α(v,w)` over the weighted arcs.

    :raises PreconditionError: `H` is not reflexive.
    """
    if not target.is_reflexive:
        msg = "The interval product needs a reflexive target."
        raise PreconditionError(msg)

    result = 1
    for (v, w), weight in weights.items():
        if weight:
            a, b = xi.image[v], xi.image[w]
            result *= popcount(target.out_masks[a] & target.in_masks[b]) ** weight
    return result


# Longest-path family


def top_path_family(graph: Digraph) -> list[Subgraph]:
    """The family `ℒ(G)` of the subgraphs `P_×` of the longest paths of `G`."""
    return [path.cover_subgraph() for path in top_structure(graph).top_paths]


def is_path_strict(xi: VertexMap, graph: Digraph, target: Digraph, paths: Optional[Sequence[PathSeq]] = None) -> bool:
    """Whether `ξ` maps the consecutive arcs of every longest path to proper arcs of `H`."""
    if paths is None:
        paths = top_structure(graph).top_paths
    image = xi.image
    for path in paths:
        for v, w in path.arcs:
            a, b = image[v], image[w]
            if a == b or (a, b) not in target.arcs:
                return False
    return True
