"""
Reports and constructive witnesses for the catalog sweeps in `homlab.checks`.

A sweep that finds `#𝒮(G,R) > #𝒮(G,S)` turns the gap into a digraph `G′` with
`#ℋ(G′,R) > #ℋ(G′,S)`: the selecting weight of a suitable `ξ` is clamped into `G` often
enough that the leading term of the `R`-count outgrows the `S`-count.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from .errors import PreconditionError
from .formats import format_digraph, format_weight
from .homs import count_homs
from .settings import homlab_settings
from .taxonomy import is_poset
from .utils import homlab_logger
from .weights import ArcWeight, expand, hom_count_expo, selecting_weight

if TYPE_CHECKING:
    from .digraph import Digraph, Subgraph
    from .maps import VertexMap
    from .typing import Optional, Sequence


__all__ = [
    "CheckReport",
    "Universe",
    "Violation",
    "Witness",
    "build_witness",
    "digraph_detail",
    "witness_nu",
]


@dataclass(frozen=True)
class Universe:
    """Which catalogs a check quantifies over."""

    sources: str
    source_max_n: int
    targets: str = ""
    target_max_n: int = 0

    def describe(self) -> str:
        text = f"sources={self.sources}<={self.source_max_n}"
        if self.targets:
            text += f" targets={self.targets}<={self.target_max_n}"
        return text


@dataclass(frozen=True)
class Violation:
    message: str
    details: tuple[tuple[str, str], ...] = ()

    def render(self, index: int) -> str:
        lines = [f"violation {index}: {self.message}"]
        for label, text in self.details:
            lines.append(f"  {label}:")
            lines.extend(f"    {line}" for line in text.strip().splitlines())
        return "\n".join(lines)


def digraph_detail(label: str, graph: Digraph) -> tuple[str, str]:
    return label, format_digraph(graph)


@dataclass
class CheckReport:
    check_id: str
    universe: Universe
    instances: int = 0
    violations: list[Violation] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def merge(self, instances: int, violations: Sequence[Violation], notes: Sequence[str] = ()) -> None:
        self.instances += instances
        self.violations.extend(violations)
        self.notes.extend(notes)

    def summary(self) -> str:
        return f"violations={len(self.violations)} instances={self.instances}"

    def render(self) -> str:
        """Byte-stable text form. Elapsed time is left out."""
        lines = [f"check {self.check_id}", f"universe {self.universe.describe()}"]
        lines.extend(violation.render(index) for index, violation in enumerate(self.violations, start=1))
        lines.extend(f"note: {note}" for note in self.notes)
        lines.append(self.summary())
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Witness:
    """An expansion of `G` separating two hom counts."""

    nu: int
    weight: ArcWeight
    graph: Digraph
    first_count: int
    second_count: int
    counted_directly: bool
    poset_variant: bool = False

    @property
    def separates(self) -> bool:
        return self.first_count > self.second_count

    def details(self) -> tuple[tuple[str, str], ...]:
        return (
            ("weight", format_weight(self.weight)),
            ("counts", f"nu={self.nu} first={self.first_count} second={self.second_count}"),
        )


def witness_nu(
    graph: Digraph,
    first: Digraph,
    second: Digraph,
    xi: VertexMap,
    family: Sequence[Subgraph],
) -> Optional[int]:
    """
    The smallest `ν` with `#ℋ(G(δ)_ν, R) > #ℋ(G(δ)_ν, S)` for the selecting weight `δ = γ_ξ`,
    or None if the `R`-count never exceeds the `S`-count.

    :raises PreconditionError: `R` or `S` is not reflexive, or `ξ` is not maximal on every member of `family`.
    """
    delta = selecting_weight(xi, graph, first, family)
    first_sum = hom_count_expo(graph, delta, first)
    second_sum = hom_count_expo(graph, delta, second)
    nu = first_sum.first_exceeding(second_sum)
    homlab_logger.debug(f"Exponential sums {first_sum.terms} vs {second_sum.terms}: nu={nu}")
    return nu


def build_witness(
    graph: Digraph,
    first: Digraph,
    second: Digraph,
    xi: VertexMap,
    family: Sequence[Subgraph],
    *,
    poset_variant: bool = False,
) -> Optional[Witness]:
    """
    Expand `G` at the exponent found by `witness_nu` and count both sides.

    Expansions up to the `WITNESS_DIRECT_MAX_VERTICES` setting are counted directly, larger ones
    through the exponential sums.

    :raises PreconditionError: The poset variant is requested for targets that are not posets.
    """
    if poset_variant and not (is_poset(first) and is_poset(second)):
        msg = "Poset expansions only count by the product formula for poset targets."
        raise PreconditionError(msg)

    nu = witness_nu(graph, first, second, xi, family)
    if nu is None:
        return None

    delta = selecting_weight(xi, graph, first, family)
    expansion = expand(graph, delta, nu, poset_variant=poset_variant)
    direct = expansion.result.n <= homlab_settings.WITNESS_DIRECT_MAX_VERTICES
    if direct:
        first_count = count_homs(expansion.result, first)
        second_count = count_homs(expansion.result, second)
    else:
        first_count = hom_count_expo(graph, delta, first)(nu)
        second_count = hom_count_expo(graph, delta, second)(nu)

    return Witness(
        nu=nu,
        weight=delta,
        graph=expansion.result,
        first_count=first_count,
        second_count=second_count,
        counted_directly=direct,
        poset_variant=poset_variant,
    )
