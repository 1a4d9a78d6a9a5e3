from fractions import Fraction

import pytest

from homlab.digraph import chain
from homlab.errors import PreconditionError
from homlab.homs import count_homs, j_class, top_path_family
from homlab.maps import VertexMap
from homlab.shells import (
    bounded_chain_counts,
    capsule_system,
    check_capsule_classes,
    find_shells,
    phi,
    z_components,
)
from homlab.typing import NamedTuple
from tests.helpers import digraph, parametrize_helper, poset

ANCHOR = poset(5, (0, 1), (1, 2), (2, 3), (0, 4), (4, 3))
HANGING = poset(4, (0, 1), (1, 2), (3, 2))
# Two off-top vertices stacked between 0 and 4 of the chain 0<1<2<3<4.
LADDER = poset(7, (0, 1), (1, 2), (2, 3), (3, 4), (0, 5), (5, 6), (6, 4))
SIGMA = VertexMap((0, 1, 2, 3, 1), 4)


def test_z_components():
    assert z_components(ANCHOR) == [(4,)]
    assert z_components(chain(3)) == []
    assert z_components(poset(5, (0, 1), (1, 2), (0, 3), (4, 2))) == [(3,), (4,)]


def test_find_shells():
    capsule = find_shells(ANCHOR, (4,))
    assert capsule.bottom_shells == {4: (0,)}
    assert capsule.upper_shells == {4: (3,)}
    assert (capsule.lower_bound, capsule.upper_bound) == (0, 3)
    assert capsule.length == 3
    assert capsule.lower == {4: 0}
    assert capsule.upper == {4: 3}
    assert capsule.offsets == {0: 0, 1: 1, 2: 2, 3: 3}


def test_find_shells__text():
    capsule = find_shells(ANCHOR, (4,))
    assert capsule.to_text() == "component 4\nbounds 0 3 length 3\n  4: B={0} U={3} m=0 M=3"


def test_find_shells__full_strategy_same_on_anchor():
    assert find_shells(ANCHOR, (4,), strategy="full") == find_shells(ANCHOR, (4,))


def test_find_shells__unknown_strategy():
    with pytest.raises(PreconditionError, match="Unknown shell strategy"):
        find_shells(ANCHOR, (4,), strategy="widest")


def test_find_shells__no_capsule():
    assert find_shells(HANGING, (3,)) is None
    assert capsule_system(HANGING) is None


def test_capsule_system__ladder():
    (capsule,) = capsule_system(LADDER)
    assert capsule.component == (5, 6)
    assert capsule.lower == {5: 0, 6: 0}
    assert capsule.upper == {5: 4, 6: 4}


class BoundedParams(NamedTuple):
    lower: list[int]
    upper: list[int]
    length: int
    homs: int
    strict: int


@pytest.mark.parametrize(
    **parametrize_helper({
        "full chain": BoundedParams(lower=[0], upper=[3], length=3, homs=4, strict=2),
        "unit chain": BoundedParams(lower=[0], upper=[1], length=1, homs=2, strict=0),
        "empty bounds": BoundedParams(lower=[2], upper=[1], length=3, homs=0, strict=0),
    }),
)
def test_bounded_chain_counts__singleton(lower, upper, length, homs, strict):
    assert bounded_chain_counts(chain(0), lower, upper, length) == (homs, strict)


def test_bounded_chain_counts__two_vertices():
    assert bounded_chain_counts(chain(1), [0, 0], [3, 3], 3) == (10, 1)


def test_bounded_chain_counts__bad_input():
    with pytest.raises(PreconditionError, match="every vertex"):
        bounded_chain_counts(chain(1), [0], [3], 3)
    with pytest.raises(PreconditionError, match="non-negative"):
        bounded_chain_counts(chain(0), [0], [0], -1)


def test_phi():
    assert phi(ANCHOR) == Fraction(1, 2)
    assert phi(LADDER) == Fraction(1, 5)
    assert phi(chain(3)) == 1


def test_phi__matches_strict_count():
    strict = count_homs(ANCHOR, chain(3), strict=True)
    members = j_class(SIGMA, ANCHOR, chain(3), chain(3), top_path_family(ANCHOR))
    assert strict == 2
    assert len(members) == 4
    assert Fraction(strict) == phi(ANCHOR) * len(members)


def test_phi__no_capsule():
    with pytest.raises(PreconditionError, match="without capsule bounds"):
        phi(HANGING)


def test_check_capsule_classes():
    assert check_capsule_classes(ANCHOR, chain(3), SIGMA) == []
    assert check_capsule_classes(LADDER, chain(4), VertexMap((0, 1, 2, 3, 4, 1, 3), 5)) == []


def test_check_capsule_classes__no_capsule():
    (problem,) = check_capsule_classes(HANGING, chain(2), VertexMap((0, 1, 2, 1), 3))
    assert "without capsule bounds" in problem


def test_capsule_component_digraph():
    (capsule,) = capsule_system(LADDER)
    assert capsule.component_digraph(LADDER) == digraph(2, (0, 1), loops=True)
