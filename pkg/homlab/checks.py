"""
Catalog sweeps for the counting statements.

Each check quantifies a statement over small catalogs, runs the per-instance work through
`parallel_map` and collects a `CheckReport`. Checks are registered by name with `register`
and run with `run_check`.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

import networkx as nx

from .catalog import generate, is_isomorphic
from .digraph import (
    Digraph,
    PathSeq,
    Subgraph,
    all_paths,
    chain,
    concatenate,
    cover_digraph,
    g_map,
    iota,
    isolated_vertices,
    kappa_maps,
    lambda_maps,
    maximal_paths,
    reconstruct_path,
    singleton_with_loop,
    strip_loops,
    top_structure,
    transitive_hull,
    transitive_reduction,
)
from .errors import InvariantViolation, PreconditionError
from .formats import format_weight
from .homs import (
    count_homs,
    enumerate_homs,
    iota_profile,
    is_path_strict,
    j_class,
    m_class,
    naive_homs,
    top_path_family,
)
from .maps import VertexMap, is_homomorphism, is_strict
from .settings import homlab_settings
from .shells import check_capsule_classes, phi
from .taxonomy import (
    has_cover_loopless_part,
    in_Chn,
    in_R,
    in_Ta,
    in_Ta_by_hull,
    in_Taghn,
    in_TaghnA,
    intervals_are_paths,
    is_flat,
    is_poset,
)
from .utils import homlab_logger, parallel_map, popcount
from .validators import validate_check_id, validate_jobs, validate_max_n
from .verifier import CheckReport, Universe, Violation, build_witness, digraph_detail
from .weights import (
    check_expansion_structure,
    check_extension_formula,
    combine_weights,
    combined_product_holds,
    hom_count_expo,
    is_selecting,
    iter_small_weights,
    leading_class_size,
    selecting_weight,
)

if TYPE_CHECKING:
    from .typing import Callable, Optional, Sequence

    CheckFunction = Callable[[CheckOptions], CheckReport]


__all__ = [
    "ALIASES",
    "CHECKS",
    "CheckOptions",
    "available_checks",
    "register",
    "run_all",
    "run_check",
]


Outcome = tuple[int, list[Violation], list[str]]


@dataclass(frozen=True)
class CheckOptions:
    max_n: int
    target_max_n: int
    jobs: Optional[int] = None


CHECKS: dict[str, CheckFunction] = {}
ALIASES: dict[str, str] = {"thm7": "thm78", "thm8": "thm78"}


def register(check_id: str) -> Callable[[CheckFunction], CheckFunction]:
    def decorator(func: CheckFunction) -> CheckFunction:
        CHECKS[check_id] = func
        return func

    return decorator


def available_checks() -> list[str]:
    return sorted(CHECKS)


def run_check(
    check_id: str,
    *,
    max_n: Optional[int] = None,
    target_max_n: Optional[int] = None,
    jobs: Optional[int] = None,
) -> CheckReport:
    """
    Run one registered check.

    :param check_id: Check name or alias.
    :param max_n: Largest source digraph, defaults to the `CHECK_MAX_N` setting.
    :param target_max_n: Largest target digraph, defaults to the `CHECK_TARGET_MAX_N` setting.
    :param jobs: Worker processes, see `resolve_jobs`.
    :raises ValueError: Unknown check or sizes above the catalog cap.
    """
    name = ALIASES.get(check_id, check_id)
    validate_check_id(name, CHECKS)
    options = CheckOptions(
        max_n=validate_max_n(homlab_settings.CHECK_MAX_N if max_n is None else max_n),
        target_max_n=validate_max_n(homlab_settings.CHECK_TARGET_MAX_N if target_max_n is None else target_max_n),
        jobs=validate_jobs(jobs),
    )

    homlab_logger.info(f"Running check {name} with max_n={options.max_n} target_max_n={options.target_max_n}.")
    started = time.perf_counter()
    report = CHECKS[name](options)
    report.elapsed = time.perf_counter() - started

    log = homlab_logger.info if report.passed else homlab_logger.error
    log(f"Check {name}: {report.summary()} in {report.elapsed:.2f}s.")
    return report


def run_all(
    *,
    max_n: Optional[int] = None,
    target_max_n: Optional[int] = None,
    jobs: Optional[int] = None,
) -> list[CheckReport]:
    return [run_check(name, max_n=max_n, target_max_n=target_max_n, jobs=jobs) for name in available_checks()]


# Helpers


def _catalog(kind: str, max_n: int, jobs: Optional[int]) -> list[Digraph]:
    if max_n < 1:
        return []
    return list(generate(kind, max_n, jobs=jobs).members)


def _reflexive_ta(max_n: int, jobs: Optional[int]) -> list[Digraph]:
    return [graph for graph in _catalog("Ta", max_n, jobs) if graph.is_reflexive]


def _sweep(report: CheckReport, worker: Callable, items: Sequence, jobs: Optional[int]) -> None:
    for instances, violations, notes in parallel_map(worker, items, jobs=jobs):
        report.merge(instances, violations, notes)


def _first_in(candidates: Sequence[VertexMap], allowed: set[VertexMap]) -> Optional[VertexMap]:
    return next((xi for xi in candidates if xi in allowed), None)


def _witness_violations(
    graph: Digraph,
    first: Digraph,
    second: Digraph,
    xi: VertexMap,
    family: Sequence[Subgraph],
    context: str,
) -> list[Violation]:
    """Build the plain witness, and the poset one when every digraph involved is a poset."""
    variants = [False]
    if is_poset(graph) and is_poset(first) and is_poset(second):
        variants.append(True)

    violations = []
    for poset_variant in variants:
        witness = build_witness(graph, first, second, xi, family, poset_variant=poset_variant)
        details = (digraph_detail("G", graph), digraph_detail("R", first), digraph_detail("S", second))
        if witness is None:
            message = f"{context}: the R-count never overtakes the S-count (poset_variant={poset_variant})"
            violations.append(Violation(message, details))
        elif not witness.separates:
            message = f"{context}: the expansion does not separate the counts (poset_variant={poset_variant})"
            violations.append(Violation(message, details + witness.details()))
    return violations


# Engine


def _random_digraph(rng: random.Random, max_n: int) -> Digraph:
    n = rng.randint(1, max_n)
    density = rng.random()
    arcs = frozenset((u, v) for u in range(n) for v in range(n) if rng.random() < density)
    return Digraph(n=n, arcs=arcs)


def _engine_instance(item: tuple[Digraph, Digraph]) -> Outcome:
    source, target = item
    violations = []
    for strict in (False, True):
        expected = naive_homs(source, target, strict=strict)
        found = enumerate_homs(source, target, strict=strict)
        counted = count_homs(source, target, strict=strict)
        if found != expected or counted != len(expected):
            kind = "strict homomorphisms" if strict else "homomorphisms"
            message = f"search finds {counted} {kind}, filtering all maps finds {len(expected)}"
            violations.append(Violation(message, (digraph_detail("G", source), digraph_detail("H", target))))
    return 2, violations, []


@register("engine")
def check_engine(options: CheckOptions) -> CheckReport:
    """Compare the search engine with the filter over all maps on seeded random pairs."""
    rng = random.Random(homlab_settings.RANDOM_SEED)
    items = [
        (_random_digraph(rng, options.max_n), _random_digraph(rng, options.target_max_n))
        for _ in range(homlab_settings.ENGINE_ORACLE_INSTANCES)
    ]
    report = CheckReport("engine", Universe("random", options.max_n, "random", options.target_max_n))
    _sweep(report, _engine_instance, items, options.jobs)
    return report


# Structure


def _inclusion_maximal(paths: Sequence[PathSeq]) -> set[PathSeq]:
    """Paths whose vertex set is not properly contained in the vertex set of another path."""
    masks = {path.vertex_mask for path in paths}
    return {
        path
        for path in paths
        if not any(mask != path.vertex_mask and not path.vertex_mask & ~mask for mask in masks)
    }


def _path_problems(graph: Digraph, paths: Sequence[PathSeq], *, acyclic: bool) -> list[str]:
    problems = []
    reconstructs = all(reconstruct_path(graph, path.vertices) == path for path in paths)
    if reconstructs != acyclic:
        problems.append(f"every path is determined by its vertex set: {reconstructs}, acyclic: {acyclic}")

    for first in paths:
        for second in paths:
            if first.top != second.bottom or first.vertex_mask & second.vertex_mask != 1 << first.top:
                continue
            if not concatenate(first, second).is_path_in(graph):
                problems.append(f"concatenation of {first} and {second} is not a path")

    if not acyclic:
        return problems

    cover = cover_digraph(graph)
    if any(not path.is_path_in(graph) for path in all_paths(cover)):
        problems.append("a path of the cover digraph is not a path of the digraph")
    if set(maximal_paths(graph)) != _inclusion_maximal(paths):
        problems.append("maximal paths of the cover digraph differ from the maximal paths of the digraph")
    if graph.is_reflexive:
        for path in maximal_paths(graph):
            if any(iota(graph, v, w) != 2 for v, w in path.arcs):
                problems.append(f"an arc of the maximal path {path} has an interval of size other than 2")

    reduction = transitive_reduction(graph)
    hull = transitive_hull(graph)
    if transitive_hull(reduction) != hull:
        problems.append("the transitive reduction has a different transitive hull")
    for arc in sorted(reduction.arcs):
        if transitive_hull(Digraph(n=graph.n, arcs=reduction.arcs - {arc})) == hull:
            problems.append(f"arc {arc[0]} {arc[1]} of the transitive reduction is redundant")
    return problems


def _structure_instance(graph: Digraph) -> Outcome:
    problems: list[str] = []
    instances = 1
    star = strip_loops(graph).to_networkx()
    acyclic = in_Ta(graph)
    if acyclic != in_Ta_by_hull(graph) or acyclic != nx.is_directed_acyclic_graph(star):
        problems.append("acyclicity tests disagree")

    problems.extend(_path_problems(graph, all_paths(graph), acyclic=acyclic))

    if acyclic:
        if set(cover_digraph(graph).arcs) != set(nx.transitive_reduction(star).edges()):
            problems.append("cover digraph differs from the networkx transitive reduction")
        if set(strip_loops(transitive_hull(graph)).arcs) != set(nx.transitive_closure_dag(star).edges()):
            problems.append("transitive hull differs from the networkx transitive closure")

        try:
            height = top_structure(graph).height
            positions = g_map(graph)
            lambda_maps(graph, height)
            lambda_maps(graph, height + 1)
        except InvariantViolation as error:
            problems.append(str(error))
        else:
            target = chain(height)
            for name, kappa in zip(("kappa_in", "kappa_out"), kappa_maps(graph)):
                if not is_homomorphism(kappa, graph, target):
                    problems.append(f"{name} {kappa} is not a homomorphism into C_{height}")
                if any(kappa.image[v] != position for v, position in positions.items()):
                    problems.append(f"{name} {kappa} differs from the top path positions {positions}")
            if in_Taghn(graph, height) and not in_TaghnA(graph, height).member:
                problems.append("every vertex lies on a longest path, but the shell test rejects the digraph")

        for alpha in iter_small_weights(graph, max_support=2):
            for nu in range(1, homlab_settings.VERIFY_NU_CAP + 1):
                instances += 1
                context = f"({format_weight(alpha).strip()}, nu={nu})"
                problems.extend(f"{message} {context}" for message in check_expansion_structure(graph, alpha, nu))

    return instances, [Violation(problem, (digraph_detail("G", graph),)) for problem in problems], []


@register("structure")
def check_structure(options: CheckOptions) -> CheckReport:
    """Path structure, hulls and reductions, the chain maps, and the shape of expansions."""
    small = min(options.max_n, 3)
    sources = _catalog("Ta", options.max_n, options.jobs)
    sources += [graph for graph in _catalog("all_digraphs", small, options.jobs) if not in_Ta(graph)]
    report = CheckReport("structure", Universe(f"Ta+all_digraphs<={small}", options.max_n))
    _sweep(report, _structure_instance, sources, options.jobs)
    return report


# Product formula


def _eq45_instance(item: tuple[Digraph, Digraph]) -> Outcome:
    graph, target = item
    variants = (False, True) if is_poset(target) else (False,)
    instances = 0
    violations = []
    for alpha in iter_small_weights(graph, max_support=3):
        for nu in range(homlab_settings.VERIFY_NU_CAP + 1):
            for poset_variant in variants:
                report = check_extension_formula(graph, alpha, target, nu, poset_variant=poset_variant)
                instances += report.instances
                if report.ok:
                    continue
                details = [
                    digraph_detail("G", graph),
                    digraph_detail("H", target),
                    ("weight", format_weight(alpha)),
                    ("exponent", f"nu={nu} poset_variant={poset_variant}"),
                ]
                details.extend(
                    ("extension", f"{xi} expected={expected} actual={actual}")
                    for xi, expected, actual in report.violations[:3]
                )
                details.append(("totals", f"expected={report.expected_total} actual={report.actual_total}"))
                violations.append(Violation("extension counts differ from the product formula", tuple(details)))
    return instances, violations, []


@register("eq45")
def check_eq45(options: CheckOptions) -> CheckReport:
    """Extension counts of expansions against the product formula, per homomorphism and summed."""
    sources = _catalog("posets", options.max_n, options.jobs)
    targets = _catalog("reflexive", options.target_max_n, options.jobs)
    report = CheckReport("eq45", Universe("posets", options.max_n, "reflexive", options.target_max_n))
    _sweep(report, _eq45_instance, list(itertools.product(sources, targets)), options.jobs)
    return report


# Selecting weights


def _selecting_problems(
    zeta: VertexMap,
    graph: Digraph,
    target: Digraph,
    family: Sequence[Subgraph],
) -> list[str]:
    problems = []
    gamma = selecting_weight(zeta, graph, target, family)
    result = is_selecting(gamma, zeta, graph, target)
    if not result:
        return [f"weight {gamma} is not selecting for {zeta}, violated by {result.certificate}"]

    size = leading_class_size(gamma, zeta, graph, target)
    expected = (size, gamma.product(zeta, target))
    leading = hom_count_expo(graph, gamma, target).leading_term
    if leading != expected:
        problems.append(f"leading term {leading} differs from {expected}")
    j_size = len(j_class(zeta, graph, target, target, family))
    if j_size != size:
        problems.append(f"profile class has {j_size} members, the leading coefficient is {size}")

    if len(family) > 1:
        parts = [(member, dict(selecting_weight(zeta, graph, target, [member]).support_items())) for member in family]
        combined = combine_weights(graph, parts)
        if combined != gamma:
            problems.append(f"member weights combine to {combined}, not {gamma}")
        if not combined_product_holds(combined, parts, zeta, target):
            problems.append("product of the combined weight is not the product of the member products")
    return problems


def _selecting_instance(item: tuple[Digraph, Digraph]) -> Outcome:
    graph, target = item
    families = {
        "none": [],
        "whole": [Subgraph.whole(graph)],
        "longest paths": top_path_family(graph),
    }
    instances = 0
    violations = []
    for label, family in families.items():
        for zeta in m_class(graph, target, family):
            instances += 1
            details = (
                digraph_detail("G", graph),
                digraph_detail("H", target),
                ("map", f"{zeta} family={label}"),
            )
            problems = _selecting_problems(zeta, graph, target, family)
            violations.extend(Violation(problem, details) for problem in problems)
    return instances, violations, []


@register("selecting")
def check_selecting(options: CheckOptions) -> CheckReport:
    """Selecting weights of maximal homomorphisms and the leading terms they produce."""
    sources = _catalog("Ta", options.max_n, options.jobs)
    targets = _catalog("reflexive", options.target_max_n, options.jobs)
    report = CheckReport("selecting", Universe("Ta", options.max_n, "reflexive", options.target_max_n))
    _sweep(report, _selecting_instance, list(itertools.product(sources, targets)), options.jobs)
    return report


# Strict homomorphisms


def _path_image_problems(sigma: VertexMap, paths: Sequence[PathSeq], target: Digraph) -> list[str]:
    problems = []
    for path in paths:
        image = tuple(sigma.image[v] for v in path.vertices)
        if len(set(image)) != len(image) or not PathSeq(image).is_path_in(target):
            problems.append(f"{sigma} sends the path {path} to {image}, which is not a path of the same length")
    return problems


def _chain_embedding(target: Digraph) -> VertexMap:
    """`C_h → H` along the first longest path of `H`."""
    path = top_structure(target).top_paths[0]
    return VertexMap(image=path.vertices, codomain_size=target.n)


def _strict_instance(item: tuple[Digraph, Digraph]) -> Outcome:
    graph, target = item
    details = (digraph_detail("G", graph), digraph_detail("H", target))
    problems: list[str] = []
    graph_height = top_structure(graph).height
    target_height = top_structure(target).height

    strict_homs = enumerate_homs(graph, target, strict=True)
    if strict_homs and graph_height > target_height:
        problems.append(f"strict homomorphisms exist from height {graph_height} into height {target_height}")

    paths = all_paths(graph)
    self_maps = enumerate_homs(target, target, strict=True)
    for sigma in strict_homs:
        problems.extend(_path_image_problems(sigma, paths, target))
        for rho in self_maps:
            if not is_strict(rho.compose(sigma), graph, target):
                problems.append(f"{rho} after {sigma} is not strict")

    for xi in enumerate_homs(graph, target):
        sizes = iota_profile(xi, graph, target).values
        if is_strict(xi, graph, target) != all(size >= 2 for size in sizes):
            problems.append(f"strictness of {xi} does not match its interval sizes {sizes}")

    if graph_height <= target_height and in_Chn(target, target_height):
        witness = _chain_embedding(target).compose(lambda_maps(graph, target_height)[1])
        if not is_strict(witness, graph, target):
            problems.append(f"the chain map {witness} into a digraph with paths as intervals is not strict")

    return 1, [Violation(problem, details) for problem in problems], []


@register("strict")
def check_strict(options: CheckOptions) -> CheckReport:
    """Strict homomorphisms keep path lengths, show in interval sizes and compose."""
    sources = _catalog("Ta", options.max_n, options.jobs)
    targets = _reflexive_ta(options.target_max_n, options.jobs)
    report = CheckReport("strict", Universe("Ta", options.max_n, "reflexive Ta", options.target_max_n))
    _sweep(report, _strict_instance, list(itertools.product(sources, targets)), options.jobs)
    return report


# The class R


def _prop1_instance(graph: Digraph) -> Outcome:
    by_sum = in_R(graph, "sum_condition")
    direct = in_R(graph, "direct")
    details = (digraph_detail("G", graph),)
    violations = []
    if by_sum.member != direct.member:
        message = f"path sum test says {by_sum.member} ({by_sum.certificate}), self-map search says {direct.member}"
        violations.append(Violation(message, details))
    if is_flat(graph) and is_poset(graph) and not by_sum:
        violations.append(Violation("flat poset outside R", details))
    if intervals_are_paths(graph) and not by_sum:
        violations.append(Violation("digraph whose intervals are paths lies outside R", details))
    height = top_structure(graph).height
    if in_Chn(graph, height) and not by_sum:
        message = f"poset with all maximal paths of length {height} and paths as intervals lies outside R"
        violations.append(Violation(message, details))
    return 1, violations, []


@register("prop1")
def check_prop1(options: CheckOptions) -> CheckReport:
    """The path sum test for R against the direct self-map search."""
    graphs = _reflexive_ta(options.max_n, options.jobs)
    report = CheckReport("prop1", Universe("reflexive Ta", options.max_n))
    _sweep(report, _prop1_instance, graphs, options.jobs)
    return report


# Whole digraph as the only member


def _thm5_instance(item: tuple[Digraph, Digraph, tuple[Digraph, ...]]) -> Outcome:
    first, second, sources = item
    instances = 0
    violations: list[Violation] = []
    notes: list[str] = []
    for graph in sources:
        instances += 1
        second_count = count_homs(graph, second, strict=True)
        details = (digraph_detail("G", graph), digraph_detail("R", first), digraph_detail("S", second))
        family = [Subgraph.whole(graph)]
        strict_homs = enumerate_homs(graph, first, strict=True)
        if not strict_homs:
            continue

        maximal = set(m_class(graph, first, family))
        if maximal != set(strict_homs):
            violations.append(Violation("maximal homomorphisms differ from the strict ones", details))
        if not all(iota_profile(xi, graph, first).is_constant(2) for xi in strict_homs):
            violations.append(Violation("a strict homomorphism has an interval of size other than 2", details))

        xi = _first_in(strict_homs, maximal)
        if xi is not None and second_count and len(strict_homs) > second_count:
            found = _witness_violations(graph, first, second, xi, family, "strict gap")
            violations.extend(found)
            if not found:
                notes.append(f"gap {len(strict_homs)} > {second_count} separated for {graph} into {first} vs {second}")
    return instances, violations, notes


@register("thm5")
def check_thm5(options: CheckOptions) -> CheckReport:
    """Strict count gaps become hom count gaps for targets whose loopless part is its cover digraph."""
    targets = [graph for graph in _reflexive_ta(options.target_max_n, options.jobs) if has_cover_loopless_part(graph)]
    sources = tuple(_catalog("Ta", options.max_n, options.jobs))
    report = CheckReport("thm5", Universe("Ta", options.max_n, "reflexive cover Ta", options.target_max_n))

    for target in targets:
        if not in_R(target, "direct"):
            report.merge(0, [Violation("target outside R", (digraph_detail("R", target),))])

    items = [(first, second, sources) for first, second in itertools.permutations(targets, 2)]
    _sweep(report, _thm5_instance, items, options.jobs)
    return report


# Longest paths as members


def _path_family_gap(
    graph: Digraph,
    first: Digraph,
    second: Digraph,
    first_strict: Sequence[VertexMap],
    context: str,
) -> list[Violation]:
    family = top_path_family(graph)
    xi = _first_in(first_strict, set(m_class(graph, first, family)))
    if xi is None:
        details = (digraph_detail("G", graph), digraph_detail("R", first))
        return [Violation(f"{context}: no strict homomorphism is maximal on the longest paths", details)]
    return _witness_violations(graph, first, second, xi, family, context)


def _thm6a_instance(item: tuple[Digraph, Digraph, tuple[Digraph, ...]]) -> Outcome:
    first, second, sources = item
    instances = 0
    violations: list[Violation] = []
    for graph in sources:
        second_strict = enumerate_homs(graph, second, strict=True)
        if not second_strict:
            continue
        instances += 1
        family = top_path_family(graph)
        first_strict = enumerate_homs(graph, first, strict=True)

        for target, strict_homs in ((first, first_strict), (second, second_strict)):
            details = (digraph_detail("G", graph), digraph_detail("H", target))
            if strict_homs and set(j_class(strict_homs[0], graph, target, target, family)) != set(strict_homs):
                violations.append(Violation("strict homomorphisms are not one profile class", details))
            homs = enumerate_homs(graph, target)
            if any(is_path_strict(xi, graph, target) != is_strict(xi, graph, target) for xi in homs):
                violations.append(Violation("strict on the longest paths does not match strict", details))

        if len(first_strict) > len(second_strict):
            violations.extend(_path_family_gap(graph, first, second, first_strict, "equal height gap"))
    return instances, violations, []


def _thm6b_instance(item: tuple[Digraph, Digraph, tuple[Digraph, ...]]) -> Outcome:
    first, second, sources = item
    instances = 0
    violations: list[Violation] = []
    for graph in sources:
        first_count = count_homs(graph, first, strict=True)
        second_count = count_homs(graph, second, strict=True)
        if first_count <= second_count:
            continue
        instances += 1
        details = (digraph_detail("G", graph), digraph_detail("R", first), digraph_detail("S", second))
        structure = top_structure(graph)

        if structure.height == 0:
            if count_homs(graph, first) <= count_homs(graph, second):
                violations.append(Violation("antichain with a strict gap but no hom gap", details))
            continue

        if second.n < first.n:
            loop = singleton_with_loop()
            if count_homs(loop, first) <= count_homs(loop, second):
                violations.append(Violation("the looped singleton does not separate", details))
            continue

        reduced = structure.top_subgraph.as_digraph()
        isolated = popcount(isolated_vertices(graph))
        for target, count in ((first, first_count), (second, second_count)):
            if count_homs(reduced, target, strict=True) * target.n**isolated != count:
                violations.append(Violation("strict counts do not factor over the isolated vertices", details))
        if not in_Taghn(reduced, structure.height):
            violations.append(Violation("the top part is not covered by its longest paths", details))
            continue

        reduced_first = enumerate_homs(reduced, first, strict=True)
        violations.extend(_path_family_gap(reduced, first, second, reduced_first, "flat gap"))
    return instances, violations, []


@register("thm6")
def check_thm6(options: CheckOptions) -> CheckReport:
    """Equal height targets in R, and flat posets through the reduction to the top part."""
    report = CheckReport("thm6", Universe("Ta", options.max_n, "R and flat_posets", options.target_max_n))
    ta = _catalog("Ta", options.max_n, options.jobs)

    members = [graph for graph in _reflexive_ta(options.target_max_n, options.jobs) if in_R(graph, "direct")]
    items = []
    for first, second in itertools.permutations(members, 2):
        level = top_structure(first).height
        if level >= 1 and top_structure(second).height == level:
            sources = tuple(graph for graph in ta if in_Taghn(graph, level))
            items.append((first, second, sources))
    _sweep(report, _thm6a_instance, items, options.jobs)

    flat = _catalog("flat_posets", options.target_max_n, options.jobs)
    items = [
        (first, second, tuple(ta))
        for first, second in itertools.permutations(flat, 2)
        if top_structure(first).height == top_structure(second).height
    ]
    _sweep(report, _thm6b_instance, items, options.jobs)
    return report


# Capsules


def _anchor_capsule_poset() -> Digraph:
    """The chain `0<1<2<3` with `4` between `0` and `3` off the chain."""
    covers = {(0, 1), (1, 2), (2, 3), (0, 4), (4, 3)}
    loops = {(v, v) for v in range(5)}
    return transitive_hull(Digraph(n=5, arcs=frozenset(covers | loops)))


def _thm7_instance(item: tuple[Digraph, tuple[Digraph, ...]]) -> Outcome:
    graph, targets = item
    instances = 0
    violations: list[Violation] = []
    notes: list[str] = []
    value = phi(graph)

    for strategy, bounds in (("full", "first"), ("frontier", "last")):
        try:
            other = phi(graph, strategy=strategy, bounds=bounds)
        except PreconditionError:
            continue
        if other != value:
            note = f"phi of {graph} is {value}, with {strategy} shells and {bounds} bounds {other}"
            homlab_logger.warning(note)
            notes.append(note)

    if not 0 < value <= 1:
        violations.append(Violation(f"phi={value} is outside (0, 1]", (digraph_detail("G", graph),)))

    family = top_path_family(graph)
    for target in targets:
        details = (digraph_detail("G", graph), digraph_detail("H", target))
        strict_homs = enumerate_homs(graph, target, strict=True)
        for sigma in strict_homs:
            instances += 1
            size = len(j_class(sigma, graph, target, target, family))
            if Fraction(len(strict_homs)) != value * size:
                message = f"{len(strict_homs)} strict homomorphisms, phi={value} times class size {size} for {sigma}"
                violations.append(Violation(message, details))
        if strict_homs:
            problems = check_capsule_classes(graph, target, strict_homs[0])
            violations.extend(Violation(problem, details) for problem in problems)
    return instances, violations, notes


def _thm8_instance(item: tuple[Digraph, Digraph, tuple[Digraph, ...]]) -> Outcome:
    first, second, sources = item
    instances = 0
    violations: list[Violation] = []
    for graph in sources:
        instances += 1
        first_strict = enumerate_homs(graph, first, strict=True)
        if len(first_strict) > count_homs(graph, second, strict=True):
            violations.extend(_path_family_gap(graph, first, second, first_strict, "capsule gap"))
    return instances, violations, []


@register("thm78")
def check_thm78(options: CheckOptions) -> CheckReport:
    """The strict to profile class ratio for capsule digraphs, and the gaps it turns into witnesses."""
    report = CheckReport("thm78", Universe("TaghnA", options.max_n, "Chn", options.target_max_n))
    ta = _catalog("Ta", options.max_n, options.jobs)
    posets = _catalog("posets", options.target_max_n, options.jobs)

    thm7_items: list[tuple[Digraph, tuple[Digraph, ...]]] = []
    thm8_items: list[tuple[Digraph, Digraph, tuple[Digraph, ...]]] = []
    for level in (1, 2, 3):
        sources = [
            graph for graph in ta if top_structure(graph).height == level and in_TaghnA(graph, level).member
        ]
        targets = tuple(graph for graph in posets if in_Chn(graph, level))
        if level == 3 and not any(is_isomorphic(target, chain(3)) for target in targets):
            targets += (chain(3),)
        thm7_items.extend((graph, targets) for graph in sources)
        thm8_items.extend((first, second, tuple(sources)) for first, second in itertools.permutations(targets, 2))

    thm7_items.append((_anchor_capsule_poset(), (chain(3),)))
    _sweep(report, _thm7_instance, thm7_items, options.jobs)
    _sweep(report, _thm8_instance, thm8_items, options.jobs)
    return report


# Chain maps


def _prop2_instance(item: tuple[Digraph, tuple[Digraph, ...]]) -> Outcome:
    graph, targets = item
    height = top_structure(graph).height
    member = in_Taghn(graph, height)
    details = (digraph_detail("G", graph),)
    instances = 0
    violations: list[Violation] = []

    failing: Optional[tuple[Digraph, VertexMap]] = None
    for target in targets:
        for xi in enumerate_homs(graph, target):
            instances += 1
            if is_path_strict(xi, graph, target) != is_strict(xi, graph, target):
                failing = (target, xi)
                break
        if failing:
            break

    if member and failing is not None:
        target, xi = failing
        message = f"{xi} is strict on the longest paths only, though every vertex lies on one"
        violations.append(Violation(message, details + (digraph_detail("H", target),)))
    if not member:
        if failing is None:
            violations.append(Violation("strict on the longest paths matches strict for every target", details))
        target = chain(height)
        if not any(
            is_path_strict(kappa, graph, target) and not is_strict(kappa, graph, target) for kappa in kappa_maps(graph)
        ):
            violations.append(Violation("neither chain map is strict on the longest paths only", details))

    kappa_in, _ = kappa_maps(graph)
    if any(kappa_in.image[v] != position for v, position in g_map(graph).items()):
        violations.append(Violation(f"kappa_in {kappa_in} differs from the top path positions", details))
    return instances, violations, []


@register("prop2")
def check_prop2(options: CheckOptions) -> CheckReport:
    """Strict on the longest paths equals strict exactly when every vertex lies on a longest path."""
    report = CheckReport("prop2", Universe("Ta", options.max_n, "reflexive Ta", options.target_max_n))
    targets = _reflexive_ta(options.target_max_n, options.jobs)
    items = []
    for graph in _catalog("Ta", options.max_n, options.jobs):
        height = top_structure(graph).height
        if height < 1 or isolated_vertices(graph):
            continue
        chosen = [target for target in targets if top_structure(target).height in (height, height + 1)]
        chosen += [chain(height), chain(height + 1)]
        items.append((graph, tuple(chosen)))
    _sweep(report, _prop2_instance, items, options.jobs)
    return report


# Distinguishability


def _lovasz_instance(item: tuple[Digraph, Digraph, tuple[Digraph, ...]]) -> Outcome:
    first, second, sources = item
    details = (digraph_detail("R", first), digraph_detail("S", second))
    violations = []
    for strict in (False, True):
        if all(
            count_homs(graph, first, strict=strict) == count_homs(graph, second, strict=strict) for graph in sources
        ):
            kind = "strict homomorphism" if strict else "homomorphism"
            violations.append(Violation(f"non-isomorphic posets with equal {kind} counts", details))
    return 1, violations, []


@register("lovasz")
def check_lovasz(options: CheckOptions) -> CheckReport:
    """Non-isomorphic posets are told apart by the counts from small posets."""
    posets = _catalog("posets", options.max_n, options.jobs)
    items = [(first, second, tuple(posets)) for first, second in itertools.combinations(posets, 2)]
    report = CheckReport("lovasz", Universe("posets", options.max_n))
    _sweep(report, _lovasz_instance, items, options.jobs)
    return report
