import pytest

from homlab.digraph import Digraph, Subgraph, chain
from homlab.errors import HomLabError, InvariantViolation, PreconditionError
from homlab.homs import count_homs
from homlab.maps import VertexMap
from homlab.typing import NamedTuple, Optional
from homlab.weights import (
    ArcWeight,
    ExpoSum,
    check_expansion_structure,
    check_extension_formula,
    combine_weights,
    combined_product_holds,
    expand,
    gibbs_check,
    hom_count_expo,
    is_selecting,
    iter_small_weights,
    leading_class_size,
    selecting_weight,
)
from tests.helpers import digraph, parametrize_helper, poset

IDENTITY = VertexMap.identity(3)


def test_arc_weight__fills_zeros_in_arc_order():
    alpha = ArcWeight.from_mapping(chain(2), {(1, 2): 1})
    assert alpha.values == (((0, 1), 0), ((0, 2), 0), ((1, 2), 1))
    assert alpha.support == ((1, 2),)
    assert alpha.total == 1
    assert alpha[(0, 1)] == 0
    assert not alpha.is_zero()
    assert ArcWeight.zero(chain(2)).is_zero()


def test_arc_weight__loops_are_not_weighted():
    with pytest.raises(PreconditionError, match="proper arcs"):
        ArcWeight.from_mapping(chain(1), {(0, 0): 1})


def test_arc_weight__negative():
    with pytest.raises(PreconditionError, match="non-negative"):
        ArcWeight.from_mapping(chain(1), {(0, 1): -1})


def test_expand():
    alpha = ArcWeight.from_mapping(chain(1), {(0, 1): 1})
    expansion = expand(chain(1), alpha, 1)
    assert expansion.result == digraph(3, (0, 0), (0, 1), (1, 1), (0, 2), (2, 1))
    assert expansion.clamp_vertices == (2,)
    assert expansion.clamp_sets == {(0, 1): (2,)}


def test_expand__clamps_numbered_by_arc():
    alpha = ArcWeight.from_mapping(chain(2), {(0, 1): 1, (1, 2): 2})
    expansion = expand(chain(2), alpha, 1)
    assert expansion.clamp_sets == {(0, 1): (3,), (1, 2): (4, 5)}


def test_expand__zero_exponent_is_the_base():
    alpha = ArcWeight.from_mapping(chain(1), {(0, 1): 3})
    assert expand(chain(1), alpha, 0).result == chain(1)


class SizeParams(NamedTuple):
    poset_variant: bool
    n: int
    arcs: int


@pytest.mark.parametrize(
    **parametrize_helper({
        "plain": SizeParams(poset_variant=False, n=6, arcs=11),
        "poset": SizeParams(poset_variant=True, n=6, arcs=15),
    }),
)
def test_expand__sizes(poset_variant, n, arcs):
    alpha = ArcWeight.from_mapping(chain(1), {(0, 1): 2})
    result = expand(chain(1), alpha, 2, poset_variant=poset_variant).result
    assert result.n == n
    assert len(result.arcs) == arcs


def test_expand__poset_variant_of_chain_is_a_poset():
    alpha = ArcWeight.from_mapping(chain(2), {(0, 1): 1, (0, 2): 1})
    result = expand(chain(2), alpha, 1, poset_variant=True).result
    assert (3, 2) in result.arcs
    assert (3, 3) in result.arcs
    assert (3, 4) not in result.arcs


def test_expand__foreign_weight():
    alpha = ArcWeight.from_mapping(chain(2), {(0, 1): 1})
    with pytest.raises(PreconditionError, match="different digraph"):
        expand(chain(1), alpha, 1)


def test_expand__poset_variant_needs_a_poset():
    graph = digraph(2, (0, 1))
    with pytest.raises(PreconditionError, match="needs a poset"):
        expand(graph, ArcWeight.zero(graph), 1, poset_variant=True)


def test_expand__negative_exponent():
    with pytest.raises(ValueError, match="non-negative"):
        expand(chain(1), ArcWeight.zero(chain(1)), -1)


def test_check_expansion_structure():
    for alpha in iter_small_weights(chain(2), max_support=2):
        assert check_expansion_structure(chain(2), alpha, 2) == []


def test_check_extension_formula():
    alpha = ArcWeight.from_mapping(chain(1), {(0, 1): 1})
    report = check_extension_formula(chain(1), alpha, chain(1), 1)
    assert report.ok
    assert report.instances == 3
    assert report.expected_total == 4
    assert report.actual_total == 4


def test_check_extension_formula__poset_variant():
    graph = poset(3, (0, 1), (0, 2))
    alpha = ArcWeight.from_mapping(graph, {(0, 1): 1, (0, 2): 2})
    report = check_extension_formula(graph, alpha, chain(2), 2, poset_variant=True)
    assert report.ok


def test_check_extension_formula__poset_variant_needs_poset_target():
    target = digraph(2, (0, 1), (1, 0), loops=True)
    with pytest.raises(PreconditionError, match="poset target"):
        check_extension_formula(chain(1), ArcWeight.zero(chain(1)), target, 1, poset_variant=True)


def test_check_extension_formula__reflexive_target():
    with pytest.raises(PreconditionError, match="reflexive"):
        check_extension_formula(chain(1), ArcWeight.zero(chain(1)), digraph(2, (0, 1)), 1)


def test_hom_count_expo():
    alpha = ArcWeight.from_mapping(chain(1), {(0, 1): 1})
    expo = hom_count_expo(chain(1), alpha, chain(1))
    assert expo.terms == ((2, 1), (1, 2))
    for nu in range(4):
        assert expo(nu) == count_homs(expand(chain(1), alpha, nu).result, chain(1))


def test_selecting_weight():
    gamma = selecting_weight(IDENTITY, chain(2), chain(2), [Subgraph.whole(chain(2))])
    assert gamma.as_dict() == {(0, 1): 2, (0, 2): 3, (1, 2): 2}
    assert gamma.product(IDENTITY, chain(2)) == 432
    assert is_selecting(gamma, IDENTITY, chain(2), chain(2))
    assert hom_count_expo(chain(2), gamma, chain(2)).leading_term == (1, 432)
    assert leading_class_size(gamma, IDENTITY, chain(2), chain(2)) == 1


def test_selecting_weight__not_maximal():
    with pytest.raises(PreconditionError, match="does not attain"):
        selecting_weight(VertexMap((0, 0, 0), 3), chain(2), chain(2), [Subgraph.whole(chain(2))])


def test_is_selecting__certificate():
    alpha = ArcWeight.from_mapping(chain(2), {(0, 1): 1})
    result = is_selecting(alpha, IDENTITY, chain(2), chain(2))
    assert not result
    assert result.certificate == VertexMap((0, 2, 2), 3)


def test_combine_weights():
    upper = Subgraph(vertices=(0, 1), arcs=frozenset({(0, 1)}))
    family = [(Subgraph.whole(chain(2)), {(0, 1): 1, (1, 2): 1}), (upper, {(0, 1): 2})]
    beta = combine_weights(chain(2), family)
    assert beta.as_dict() == {(0, 1): 3, (0, 2): 0, (1, 2): 1}
    assert combined_product_holds(beta, family, IDENTITY, chain(2))


def test_combine_weights__arc_outside_member():
    upper = Subgraph(vertices=(0, 1), arcs=frozenset({(0, 1)}))
    with pytest.raises(PreconditionError, match="not a proper arc"):
        combine_weights(chain(2), [(upper, {(0, 2): 1})])


class GibbsParams(NamedTuple):
    x: list[int]
    y: list[int]
    holds: bool


@pytest.mark.parametrize(
    **parametrize_helper({
        "equal": GibbsParams(x=[1, 2], y=[1, 2], holds=True),
        "swapped": GibbsParams(x=[2, 1], y=[1, 2], holds=True),
        "smaller sum": GibbsParams(x=[1, 1, 1], y=[2, 3, 1], holds=True),
    }),
)
def test_gibbs_check(x, y, holds):
    assert gibbs_check(x, y) is holds


def test_gibbs_check__larger_sum():
    with pytest.raises(PreconditionError, match="larger sum"):
        gibbs_check([3, 3], [1, 2])


def test_expo_sum__aggregate():
    expo = ExpoSum.aggregate([(1, 3), (2, 1), (1, 3)])
    assert expo.terms == ((2, 1), (2, 3))
    assert expo(2) == 20


def test_expo_sum__repeated_base():
    with pytest.raises(PreconditionError, match="distinct"):
        ExpoSum(terms=((1, 2), (3, 2)))


class ExceedParams(NamedTuple):
    first: ExpoSum
    second: ExpoSum
    expected: Optional[int]


@pytest.mark.parametrize(
    **parametrize_helper({
        "late crossover": ExceedParams(first=ExpoSum(((1, 3),)), second=ExpoSum(((5, 2),)), expected=4),
        "already ahead": ExceedParams(first=ExpoSum(((2, 3),)), second=ExpoSum(((1, 3),)), expected=0),
        "never ahead": ExceedParams(first=ExpoSum(((1, 3),)), second=ExpoSum(((2, 3),)), expected=None),
        "equal": ExceedParams(first=ExpoSum(((1, 2),)), second=ExpoSum(((1, 2),)), expected=None),
        "smaller base behind": ExceedParams(first=ExpoSum(((9, 2),)), second=ExpoSum(((1, 3),)), expected=0),
    }),
)
def test_expo_sum__first_exceeding(first, second, expected):
    assert first.first_exceeding(second) == expected


def test_expo_sum__first_exceeding_limit():
    with pytest.raises(HomLabError, match="exceeds the limit"):
        ExpoSum(((1, 1001),)).first_exceeding(ExpoSum(((1000, 1000),)), limit=100)


def test_expo_sum__asymptotic_cmp():
    assert ExpoSum(((1, 3),)).asymptotic_cmp(ExpoSum(((5, 2),))) == 1
    assert ExpoSum(((9, 2),)).asymptotic_cmp(ExpoSum(((1, 3),))) == -1
    assert ExpoSum(((1, 2),)).asymptotic_cmp(ExpoSum(((1, 2),))) == 0


class SmallWeightParams(NamedTuple):
    graph: Digraph
    max_support: int
    count: int


@pytest.mark.parametrize(
    **parametrize_helper({
        "arc": SmallWeightParams(graph=chain(1), max_support=1, count=3),
        "chain": SmallWeightParams(graph=chain(2), max_support=3, count=27),
        "chain with small support": SmallWeightParams(graph=chain(2), max_support=1, count=7),
    }),
)
def test_iter_small_weights(graph, max_support, count):
    weights = list(iter_small_weights(graph, max_support=max_support))
    assert len(weights) == count
    assert weights[0].is_zero()


def test_invariant_violation_is_an_assertion():
    assert issubclass(InvariantViolation, AssertionError)
