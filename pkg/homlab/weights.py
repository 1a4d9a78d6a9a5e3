"""
Arc weights and the expansions they drive.

An arc weight `α` assigns a non-negative integer to every proper arc of its host `G`. The
expansion `G(α)_ν` clamps `ν·α(v,w)` fresh vertices between `v` and `w`, so that every
homomorphism `ξ` of `G` extends in exactly `π_α(ξ)^ν` ways. Counting homomorphisms of the
expansions is therefore an exponential sum in `ν`, represented exactly by `ExpoSum`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from .digraph import Digraph, Subgraph, add_loops, loopless_part_is_acyclic, transitive_hull
from .errors import HomLabError, InvariantViolation, PreconditionError
from .homs import count_homs, enumerate_homs, iota_profile, mu, mu_hat, pi_alpha
from .settings import homlab_settings
from .taxonomy import is_poset
from .utils import homlab_logger, mask_of
from .validators import validate_nu

if TYPE_CHECKING:
    from .maps import VertexMap
    from .typing import Arc, Iterable, Iterator, Mapping, Optional, Sequence


__all__ = [
    "ArcWeight",
    "ExpoSum",
    "Expansion",
    "ExtensionReport",
    "SelectionResult",
    "check_expansion_structure",
    "check_extension_formula",
    "combine_weights",
    "combined_product_holds",
    "expand",
    "gibbs_check",
    "hom_count_expo",
    "is_selecting",
    "iter_small_weights",
    "leading_class_size",
    "selecting_weight",
]


@dataclass(frozen=True, repr=False)
class ArcWeight:
    """Map from the proper arcs of `host` to the non-negative integers."""

    host: Digraph
    values: tuple[tuple[Arc, int], ...]

    def __post_init__(self) -> None:
        given = dict(self.values)
        proper = set(self.host.proper_arcs)
        unknown = sorted(set(given) - proper)
        if unknown:
            msg = f"Arc weights are only defined on proper arcs of the host, got {unknown}."
            raise PreconditionError(msg)
        if any(value < 0 for value in given.values()):
            msg = "Arc weights must be non-negative."
            raise PreconditionError(msg)
        object.__setattr__(self, "values", tuple((arc, given.get(arc, 0)) for arc in self.host.proper_arcs))

    def __repr__(self) -> str:
        return f"ArcWeight({dict(self.support_items())})"

    @classmethod
    def from_mapping(cls, host: Digraph, mapping: Mapping[Arc, int]) -> ArcWeight:
        return cls(host=host, values=tuple(mapping.items()))

    @classmethod
    def zero(cls, host: Digraph) -> ArcWeight:
        return cls(host=host, values=())

    def __getitem__(self, arc: Arc) -> int:
        return self.as_dict()[arc]

    def as_dict(self) -> dict[Arc, int]:
        return dict(self.values)

    def support_items(self) -> tuple[tuple[Arc, int], ...]:
        return tuple((arc, value) for arc, value in self.values if value)

    @property
    def support(self) -> tuple[Arc, ...]:
        """The arcs `D(α)` with positive weight."""
        return tuple(arc for arc, value in self.values if value)

    @property
    def total(self) -> int:
        return sum(value for _, value in self.values)

    def is_zero(self) -> bool:
        return not self.support

    def product(self, xi: VertexMap, target: Digraph) -> int:
        """`π_α(ξ)` for a homomorphism into `target`."""
        return pi_alpha(xi, dict(self.support_items()), target)


@dataclass(frozen=True)
class Expansion:
    base: Digraph
    weight: ArcWeight
    nu: int
    result: Digraph
    clamp_sets: dict[Arc, tuple[int, ...]] = field(compare=False)
    poset_variant: bool = False

    @property
    def clamp_vertices(self) -> tuple[int, ...]:
        return tuple(range(self.base.n, self.result.n))


def expand(graph: Digraph, alpha: ArcWeight, nu: int, *, poset_variant: bool = False) -> Expansion:
    """
    Build `G(α)_ν`, or with `poset_variant` the poset `G′(α)_ν`.

    Clamp vertices are numbered from `|V(G)|` upwards, arc by arc in ascending arc order.
    The poset variant is the transitive hull of `G(α)_ν` with loops on the clamp vertices.

    :raises PreconditionError: `α` is hosted on another digraph, or `G` is not a poset for the poset variant.
    """
    validate_nu(nu)
    if alpha.host != graph:
        msg = "The arc weight is hosted on a different digraph."
        raise PreconditionError(msg)
    if poset_variant and not is_poset(graph):
        msg = "The poset variant of the expansion needs a poset."
        raise PreconditionError(msg)

    arcs = set(graph.arcs)
    clamp_sets: dict[Arc, tuple[int, ...]] = {}
    next_vertex = graph.n
    for (v, w), value in alpha.support_items():
        clamps = tuple(range(next_vertex, next_vertex + nu * value))
        next_vertex += len(clamps)
        clamp_sets[(v, w)] = clamps
        for x in clamps:
            arcs.add((v, x))
            arcs.add((x, w))

    result = Digraph(n=next_vertex, arcs=frozenset(arcs))
    if poset_variant:
        result = add_loops(transitive_hull(result), range(graph.n, next_vertex))
        if not is_poset(result):
            msg = f"Poset expansion of {graph} with {alpha} and nu={nu} is not a poset."
            raise InvariantViolation(msg)

    return Expansion(
        base=graph,
        weight=alpha,
        nu=nu,
        result=result,
        clamp_sets=clamp_sets,
        poset_variant=poset_variant,
    )


def check_expansion_structure(graph: Digraph, alpha: ArcWeight, nu: int) -> list[str]:
    """
    Problems with the structural guarantees of an expansion: acyclicity is preserved, the poset
    variant of a poset is a poset, and the interval of a weighted arc grows exactly by its clamps.
    """
    problems: list[str] = []
    expansion = expand(graph, alpha, nu)
    result = expansion.result

    if loopless_part_is_acyclic(graph) and not loopless_part_is_acyclic(result):
        problems.append("expansion of an acyclic digraph has a cycle")

    for v, w in graph.proper_arcs:
        expected = (graph.out_masks[v] & graph.in_masks[w]) | mask_of(expansion.clamp_sets.get((v, w), ()))
        if result.out_masks[v] & result.in_masks[w] != expected:
            problems.append(f"interval of {v} {w} is not the old interval plus its clamps")

    if is_poset(graph):
        try:
            expand(graph, alpha, nu, poset_variant=True)
        except InvariantViolation as error:
            problems.append(str(error))

    return problems


# Extension counts


@dataclass
class ExtensionReport:
    instances: int = 0
    violations: list[tuple[VertexMap, int, int]] = field(default_factory=list)
    expected_total: int = 0
    actual_total: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations and self.expected_total == self.actual_total


def check_extension_formula(
    graph: Digraph,
    alpha: ArcWeight,
    target: Digraph,
    nu: int,
    *,
    poset_variant: bool = False,
) -> ExtensionReport:
    """
    Count the extensions of every `ξ ∈ ℋ(G,H)` to the expansion directly and compare with `π_α(ξ)^ν`,
    then compare the sum with `#ℋ` of the expansion.

    The poset variant adds hull arcs between clamp vertices of comparable arcs, which the product
    formula only absorbs when `H` is transitive, so it requires a poset target.

    :raises PreconditionError: `H` is not reflexive, or not a poset for the poset variant.
    """
    if not target.is_reflexive:
        msg = "Extension counts need a reflexive target."
        raise PreconditionError(msg)
    if poset_variant and not is_poset(target):
        msg = "Extension counts of the poset expansion need a poset target."
        raise PreconditionError(msg)

    expansion = expand(graph, alpha, nu, poset_variant=poset_variant)
    report = ExtensionReport()
    for xi in enumerate_homs(graph, target):
        expected = alpha.product(xi, target) ** nu
        actual = count_homs(expansion.result, target, fixed=dict(enumerate(xi.image)))
        report.instances += 1
        report.expected_total += expected
        if actual != expected:
            report.violations.append((xi, expected, actual))

    report.actual_total = count_homs(expansion.result, target)
    homlab_logger.debug(
        f"Extension formula for {graph} with {alpha}, nu={nu}: {report.expected_total} vs {report.actual_total}"
    )
    return report


# Combining and selecting weights


def combine_weights(graph: Digraph, family: Sequence[tuple[Subgraph, Mapping[Arc, int]]]) -> ArcWeight:
    """
    Sum weights given on subgraphs of `G` into one weight of `G`.

    Each member is a subgraph in the labels of `G` together with a weight on its proper arcs.

    :raises PreconditionError: A member is not a subgraph of `G`, or weighs an arc it does not have.
    """
    combined: dict[Arc, int] = {}
    for subgraph, weight in family:
        if not subgraph.is_subgraph_of(graph):
            msg = f"{subgraph} is not a subgraph of {graph}."
            raise PreconditionError(msg)
        own = set(subgraph.proper_arcs)
        for arc, value in weight.items():
            if arc not in own:
                msg = f"Arc {arc} is weighted but not a proper arc of {subgraph}."
                raise PreconditionError(msg)
            combined[arc] = combined.get(arc, 0) + value
    return ArcWeight.from_mapping(graph, combined)


def combined_product_holds(
    beta: ArcWeight,
    family: Sequence[tuple[Subgraph, Mapping[Arc, int]]],
    theta: VertexMap,
    target: Digraph,
) -> bool:
    """Whether `π_β(θ)` equals the product of the member products `π_{α_L}(θ|_L)`."""
    product = 1
    for _, weight in family:
        product *= pi_alpha(theta, weight, target)
    return beta.product(theta, target) == product


def selecting_weight(zeta: VertexMap, graph: Digraph, target: Digraph, family: Sequence[Subgraph]) -> ArcWeight:
    """
    The weight `γ_ζ` with `γ_ζ(v,w) = ι(ζ(v), ζ(w)) · #{L : vw ∈ A(L*)}`.

    :raises PreconditionError: `H` is not reflexive, or `ζ` does not attain the maximum on some member.
    """
    if not target.is_reflexive:
        msg = "Selecting weights need a reflexive target."
        raise PreconditionError(msg)

    multiplicity: dict[Arc, int] = {}
    for member in family:
        relabelled = member.as_digraph()
        if mu(zeta, target, member.proper_arcs) != mu_hat(relabelled, target)[0]:
            msg = f"{zeta} does not attain the maximal interval sum on {member}."
            raise PreconditionError(msg)
        for arc in member.proper_arcs:
            multiplicity[arc] = multiplicity.get(arc, 0) + 1

    profile = iota_profile(zeta, graph, target, multiplicity).as_dict()
    return ArcWeight.from_mapping(graph, {arc: profile[arc] * count for arc, count in multiplicity.items()})


@dataclass(frozen=True)
class SelectionResult:
    selecting: bool
    certificate: Optional[VertexMap] = None

    def __bool__(self) -> bool:
        return self.selecting


def is_selecting(alpha: ArcWeight, zeta: VertexMap, graph: Digraph, target: Digraph) -> SelectionResult:
    """
    Whether `π_α(ξ) ≤ π_α(ζ)` for all `ξ ∈ ℋ(G,H)`, with equality exactly when `ξ` and `ζ` have
    the same profile on `D(α)`. A violating `ξ` is returned as certificate.
    """
    support = alpha.support
    best = alpha.product(zeta, target)
    reference = iota_profile(zeta, graph, target, support)
    for xi in enumerate_homs(graph, target):
        value = alpha.product(xi, target)
        same = iota_profile(xi, graph, target, support) == reference
        if value > best or (value == best) != same:
            return SelectionResult(selecting=False, certificate=xi)
    return SelectionResult(selecting=True)


def gibbs_check(x: Sequence[int], y: Sequence[int]) -> bool:
    """
    Whether `Π x_i^{y_i} ≤ Π y_i^{y_i}` holds, with equality exactly for `x = y`.

    :raises PreconditionError: Lengths differ, an entry is not positive, or `Σx > Σy`.
    """
    if len(x) != len(y):
        msg = "Both sequences must have the same length."
        raise PreconditionError(msg)
    if any(value <= 0 for value in (*x, *y)):
        msg = "All entries must be positive."
        raise PreconditionError(msg)
    if sum(x) > sum(y):
        msg = "The first sequence must not have a larger sum."
        raise PreconditionError(msg)

    lhs = rhs = 1
    for a, b in zip(x, y):
        lhs *= a**b
        rhs *= b**b
    return lhs <= rhs and (lhs == rhs) == (tuple(x) == tuple(y))


# Exponential sums


@dataclass(frozen=True)
class ExpoSum:
    """The function `ν ↦ Σ a_i · x_i^ν` with positive coefficients and distinct positive bases."""

    terms: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        terms = tuple(sorted(self.terms, key=lambda term: term[1]))
        bases = [base for _, base in terms]
        if len(set(bases)) != len(bases):
            msg = "Bases of an exponential sum must be distinct."
            raise PreconditionError(msg)
        if any(coefficient <= 0 or base <= 0 for coefficient, base in terms):
            msg = "Coefficients and bases of an exponential sum must be positive."
            raise PreconditionError(msg)
        object.__setattr__(self, "terms", terms)

    @classmethod
    def aggregate(cls, pairs: Iterable[tuple[int, int]]) -> ExpoSum:
        """Collect `(coefficient, base)` pairs, adding the coefficients of equal bases."""
        collected: dict[int, int] = {}
        for coefficient, base in pairs:
            collected[base] = collected.get(base, 0) + coefficient
        return cls(terms=tuple((coefficient, base) for base, coefficient in collected.items() if coefficient))

    def __call__(self, nu: int) -> int:
        return sum(coefficient * base**nu for coefficient, base in self.terms)

    @property
    def leading_term(self) -> Optional[tuple[int, int]]:
        return self.terms[-1] if self.terms else None

    def difference(self, other: ExpoSum) -> dict[int, int]:
        """Signed coefficients of `self - other` by base, zero coefficients dropped."""
        signed = {base: coefficient for coefficient, base in self.terms}
        for coefficient, base in other.terms:
            signed[base] = signed.get(base, 0) - coefficient
        return {base: coefficient for base, coefficient in sorted(signed.items()) if coefficient}

    def asymptotic_cmp(self, other: ExpoSum) -> int:
        """Sign of `self(ν) - other(ν)` for all sufficiently large `ν`."""
        signed = self.difference(other)
        if not signed:
            return 0
        top = signed[max(signed)]
        return 1 if top > 0 else -1

    def first_exceeding(self, other: ExpoSum, *, limit: Optional[int] = None) -> Optional[int]:
        """
        The smallest `ν` with `self(ν) > other(ν)`, or None if there is none.

        Past the exponent where the largest differing term outweighs all others together, the sign
        of the difference no longer changes, so only exponents up to that point are scanned.

        :raises HomLabError: That exponent exceeds `limit` (default: the `WITNESS_SCAN_LIMIT` setting).
        """
        if limit is None:
            limit = homlab_settings.WITNESS_SCAN_LIMIT

        signed = self.difference(other)
        if not signed:
            return None

        bases = sorted(signed, reverse=True)
        top_base = bases[0]
        top = signed[top_base]
        if len(bases) == 1:
            return 0 if top > 0 else None

        second_base = bases[1]
        rest = sum(abs(signed[base]) for base in bases[1:])
        crossover = 0
        while abs(top) * top_base**crossover <= rest * second_base**crossover:
            crossover += 1
            if crossover > limit:
                msg = f"Exponent scan for {signed} exceeds the limit {limit}."
                raise HomLabError(msg)

        for nu in range(crossover + 1):
            if sum(coefficient * base**nu for base, coefficient in signed.items()) > 0:
                return nu
        return None


def hom_count_expo(graph: Digraph, alpha: ArcWeight, target: Digraph) -> ExpoSum:
    """
    `ν ↦ #ℋ(G(α)_ν, H)` as an exponential sum, one term per distinct value of `π_α`.

    :raises PreconditionError: `H` is not reflexive.
    """
    if not target.is_reflexive:
        msg = "Exponential hom counts need a reflexive target."
        raise PreconditionError(msg)
    return ExpoSum.aggregate((1, alpha.product(xi, target)) for xi in enumerate_homs(graph, target))


def leading_class_size(alpha: ArcWeight, zeta: VertexMap, graph: Digraph, target: Digraph) -> int:
    """Number of `ξ ∈ ℋ(G,H)` with the same profile as `ζ` on `D(α)`."""
    support = alpha.support
    reference = iota_profile(zeta, graph, target, support)
    return sum(1 for xi in enumerate_homs(graph, target) if iota_profile(xi, graph, target, support) == reference)


def iter_small_weights(
    graph: Digraph,
    *,
    values: Sequence[int] = (1, 2),
    max_support: int = 3,
) -> Iterator[ArcWeight]:
    """
    Every weight of `G` with positive entries from `values` on at most `max_support` arcs.

    The zero weight comes first, then supports by size and ascending arcs.
    """
    arcs = graph.proper_arcs
    positive = [value for value in values if value > 0]
    yield ArcWeight.zero(graph)
    for size in range(1, min(max_support, len(arcs)) + 1):
        for support in itertools.combinations(arcs, size):
            for assignment in itertools.product(positive, repeat=size):
                yield ArcWeight.from_mapping(graph, dict(zip(support, assignment)))
