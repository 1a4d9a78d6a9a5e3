"""Membership tests for the digraph classes the homomorphism inequalities are stated for."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Union

from .digraph import (
    Digraph,
    PathSeq,
    all_paths,
    cover_digraph,
    interval,
    loopless_part_is_acyclic,
    reconstruct_path,
    strip_loops,
    top_structure,
    transitive_hull,
)
from .errors import PreconditionError
from .homs import enumerate_homs, mu, mu_hat, top_path_family
from .maps import VertexMap
from .settings import homlab_settings
from .shells import CapsuleData, capsule_system
from .utils import homlab_logger, iter_bits, popcount

if TYPE_CHECKING:
    from .typing import BoundsStrategy, ClassRecord, Optional, RMethod, ShellStrategy


__all__ = [
    "ClassReport",
    "MembershipResult",
    "classify",
    "has_cover_loopless_part",
    "in_Chn",
    "in_R",
    "in_Ta",
    "in_Ta_by_hull",
    "in_Taghn",
    "in_TaghnA",
    "intervals_are_paths",
    "is_antisymmetric",
    "is_flat",
    "is_poset",
    "is_reflexive",
    "is_transitive",
]


@dataclass(frozen=True)
class MembershipResult:
    """Outcome of a membership test together with the object that decided it."""

    member: bool
    method: str
    certificate: Union[PathSeq, VertexMap, list[CapsuleData], None] = None

    def __bool__(self) -> bool:
        return self.member


def is_reflexive(graph: Digraph) -> bool:
    return graph.is_reflexive


def is_antisymmetric(graph: Digraph) -> bool:
    return all((v, u) not in graph.arcs for u, v in graph.proper_arcs)


def is_transitive(graph: Digraph) -> bool:
    out_masks = graph.out_masks
    for u in graph.vertices:
        for v in range(graph.n):
            if (out_masks[u] >> v) & 1 and out_masks[v] & ~out_masks[u]:
                return False
    return True


def is_poset(graph: Digraph) -> bool:
    return graph.is_reflexive and is_antisymmetric(graph) and is_transitive(graph)


def in_Ta(graph: Digraph) -> bool:  # noqa: N802
    """Whether the loopless part of `G` has no cycle."""
    return loopless_part_is_acyclic(graph)


def in_Ta_by_hull(graph: Digraph) -> bool:  # noqa: N802
    """Same as `in_Ta`, decided by the absence of loops in the transitive hull of the loopless part."""
    return not transitive_hull(strip_loops(graph)).loop_mask


def is_flat(graph: Digraph) -> bool:
    return in_Ta(graph) and top_structure(graph).height <= 1


def has_cover_loopless_part(graph: Digraph) -> bool:
    """Whether the loopless part of `G` equals its cover digraph `G_×`."""
    return in_Ta(graph) and strip_loops(graph) == cover_digraph(graph)


# The class R


def _require_reflexive_ta(graph: Digraph) -> None:
    if not graph.is_reflexive or not in_Ta(graph):
        msg = "Membership in R is only defined for reflexive digraphs with acyclic loopless part."
        raise PreconditionError(msg)


def _violating_path(graph: Digraph) -> Optional[PathSeq]:
    bound = top_structure(graph).height
    out_masks, in_masks = graph.out_masks, graph.in_masks
    for path in all_paths(graph):
        total = sum(popcount(out_masks[v] & in_masks[w]) for v, w in path.arcs)
        if total > bound + path.length:
            return path
    return None


def _strict_maximal_self_map(graph: Digraph) -> Optional[VertexMap]:
    family = top_path_family(graph)
    maxima = [mu_hat(member.as_digraph(), graph)[0] for member in family]

    def attains(xi: VertexMap) -> bool:
        return all(mu(xi, graph, member.proper_arcs) == best for member, best in zip(family, maxima))

    identity = VertexMap.identity(graph.n)
    if attains(identity):
        return identity
    for xi in enumerate_homs(graph, graph, strict=True):
        if attains(xi):
            return xi
    return None


def in_R(graph: Digraph, method: RMethod = "sum_condition") -> MembershipResult:  # noqa: N802
    """
    Membership in the class R of reflexive digraphs with a strict self-map that is maximal on
    every longest path.

    `sum_condition` checks that no path `P` has interval sizes summing to more than `h + ℓ(P)`
    and certifies a non-member by such a path. `direct` searches the self-maps and certifies a
    member by the map it found.

    :raises PreconditionError: `G` is not reflexive, has a cycle, or is too large for the path sum test.
    """
    _require_reflexive_ta(graph)

    if method == "sum_condition":
        if graph.n > homlab_settings.MAX_SUM_CONDITION_N:
            msg = f"The path sum test enumerates all paths, {graph.n} vertices is above the cap."
            raise PreconditionError(msg)
        path = _violating_path(graph)
        return MembershipResult(member=path is None, method=method, certificate=path)

    if method == "direct":
        xi = _strict_maximal_self_map(graph)
        return MembershipResult(member=xi is not None, method=method, certificate=xi)

    msg = f"Unknown method {method!r}."
    raise PreconditionError(msg)


# Height classes


def _require_ta(graph: Digraph) -> None:
    if not in_Ta(graph):
        msg = "Height classes are only defined for digraphs with acyclic loopless part."
        raise PreconditionError(msg)


def in_Taghn(graph: Digraph, n: int) -> bool:  # noqa: N802
    """Height `n` with every vertex on a longest path."""
    _require_ta(graph)
    structure = top_structure(graph)
    return structure.height == n and not structure.off_top_mask


def in_TaghnA(  # noqa: N802
    graph: Digraph,
    n: int,
    *,
    strategy: Optional[ShellStrategy] = None,
    bounds: Optional[BoundsStrategy] = None,
) -> MembershipResult:
    """
    Height `n` with every component off the longest paths enclosed in a capsule.

    :raises PreconditionError: `G` has a cycle or its height is not `n`.
    """
    _require_ta(graph)
    if top_structure(graph).height != n:
        msg = f"Digraph height {top_structure(graph).height} differs from {n}."
        raise PreconditionError(msg)

    capsules = capsule_system(graph, strategy=strategy, bounds=bounds)
    return MembershipResult(member=capsules is not None, method="shells", certificate=capsules)


def intervals_are_paths(graph: Digraph) -> bool:
    """Whether the interval of every proper arc is the vertex set of a path of `G`."""
    for v, w in graph.proper_arcs:
        if reconstruct_path(graph, iter_bits(interval(graph, v, w))) is None:
            return False
    return True


def in_Chn(graph: Digraph, n: int) -> bool:  # noqa: N802
    """Poset whose maximal paths all have length `n` and whose intervals are paths."""
    if not is_poset(graph):
        return False
    if any(path.length != n for path in top_structure(graph).maximal_paths):
        return False
    return intervals_are_paths(graph)


# Reports


@dataclass
class ClassReport:
    n: int
    arcs: int
    reflexive: bool
    antisymmetric: bool
    transitive: bool
    poset: bool
    in_Ta: bool
    flat: bool
    height: Optional[int] = None
    in_R: Optional[MembershipResult] = None
    in_Taghn: Optional[bool] = None
    in_TaghnA: Optional[bool] = None
    in_Chn: Optional[bool] = None
    capsules: list[CapsuleData] = field(default_factory=list)

    def to_record(self) -> ClassRecord:
        return {
            "n": self.n,
            "arcs": self.arcs,
            "reflexive": self.reflexive,
            "antisymmetric": self.antisymmetric,
            "transitive": self.transitive,
            "poset": self.poset,
            "in_Ta": self.in_Ta,
            "flat": self.flat,
            "height": self.height,
            "in_R": None if self.in_R is None else self.in_R.member,
            "in_R_method": None if self.in_R is None else self.in_R.method,
            "in_Taghn": self.in_Taghn,
            "in_TaghnA": self.in_TaghnA,
            "in_Chn": self.in_Chn,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_record())


def classify(graph: Digraph, n: Optional[int] = None, *, method: RMethod = "sum_condition") -> ClassReport:
    """
    Evaluate every class predicate that applies to `G`.

    The height classes are tested for `n`, defaulting to the height of `G`.
    """
    acyclic = in_Ta(graph)
    poset = is_poset(graph)
    report = ClassReport(
        n=graph.n,
        arcs=len(graph.arcs),
        reflexive=graph.is_reflexive,
        antisymmetric=is_antisymmetric(graph),
        transitive=is_transitive(graph),
        poset=poset,
        in_Ta=acyclic,
        flat=is_flat(graph),
    )
    if not acyclic:
        return report

    report.height = top_structure(graph).height
    level = report.height if n is None else n
    report.in_Taghn = in_Taghn(graph, level)
    report.in_Chn = in_Chn(graph, level)
    if level == report.height:
        membership = in_TaghnA(graph, level)
        report.in_TaghnA = membership.member
        report.capsules = membership.certificate or []
    else:
        report.in_TaghnA = False

    if graph.is_reflexive:
        if method == "sum_condition" and graph.n > homlab_settings.MAX_SUM_CONDITION_N:
            method = "direct"
        report.in_R = in_R(graph, method)

    homlab_logger.debug(f"Classified {graph}: {report.to_record()}")
    return report
