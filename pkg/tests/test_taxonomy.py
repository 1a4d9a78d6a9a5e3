import json

import pytest

from homlab.catalog import generate
from homlab.digraph import Digraph, PathSeq, chain, height, lambda_maps, top_structure
from homlab.errors import PreconditionError
from homlab.homs import count_homs
from homlab.maps import VertexMap, is_strict
from homlab.taxonomy import (
    classify,
    has_cover_loopless_part,
    in_Chn,
    in_R,
    in_Ta,
    in_Ta_by_hull,
    in_Taghn,
    in_TaghnA,
    intervals_are_paths,
    is_antisymmetric,
    is_flat,
    is_poset,
    is_transitive,
)
from homlab.typing import NamedTuple
from tests.factories import DigraphFactory
from tests.helpers import digraph, parametrize_helper, poset

ANCHOR = poset(5, (0, 1), (1, 2), (2, 3), (0, 4), (4, 3))
DIAMOND = poset(4, (0, 1), (0, 2), (1, 3), (2, 3))
HANGING = poset(4, (0, 1), (1, 2), (3, 2))
TWO_CYCLE = digraph(2, (0, 1), (1, 0), loops=True)


class OrderParams(NamedTuple):
    graph: Digraph
    antisymmetric: bool
    transitive: bool
    poset: bool


@pytest.mark.parametrize(
    **parametrize_helper({
        "chain": OrderParams(graph=chain(2), antisymmetric=True, transitive=True, poset=True),
        "two cycle": OrderParams(graph=TWO_CYCLE, antisymmetric=False, transitive=True, poset=False),
        "path": OrderParams(
            graph=digraph(3, (0, 1), (1, 2), loops=True),
            antisymmetric=True,
            transitive=False,
            poset=False,
        ),
        "loopless arc": OrderParams(graph=digraph(2, (0, 1)), antisymmetric=True, transitive=True, poset=False),
    }),
)
def test_order_predicates(graph, antisymmetric, transitive, poset):
    assert is_antisymmetric(graph) is antisymmetric
    assert is_transitive(graph) is transitive
    assert is_poset(graph) is poset


def test_in_Ta__both_tests_agree():
    for graph in DigraphFactory.build_batch(60):
        assert in_Ta(graph) == in_Ta_by_hull(graph)


def test_in_Ta__loops_do_not_count():
    assert in_Ta(chain(3))
    assert not in_Ta(TWO_CYCLE)


def test_is_flat():
    assert is_flat(poset(3, (0, 1), (0, 2)))
    assert is_flat(digraph(2))
    assert not is_flat(chain(2))


def test_has_cover_loopless_part():
    assert has_cover_loopless_part(digraph(3, (0, 1), (1, 2), loops=True))
    assert not has_cover_loopless_part(chain(2))
    assert not has_cover_loopless_part(TWO_CYCLE)


class RParams(NamedTuple):
    graph: Digraph
    member: bool


@pytest.mark.parametrize(
    **parametrize_helper({
        "chain": RParams(graph=chain(2), member=True),
        "flat poset": RParams(graph=poset(3, (0, 2), (1, 2)), member=True),
        "covers only": RParams(graph=digraph(3, (0, 1), (1, 2), loops=True), member=True),
        "diamond": RParams(graph=DIAMOND, member=False),
        "capsule poset": RParams(graph=ANCHOR, member=False),
    }),
)
def test_in_R__methods_agree(graph, member):
    assert in_R(graph, "sum_condition").member is member
    assert in_R(graph, "direct").member is member


def test_in_R__certificates():
    assert in_R(DIAMOND).certificate == PathSeq((0, 3))
    assert in_R(chain(2)).certificate is None
    assert in_R(chain(2), "direct").certificate == VertexMap.identity(3)


def test_in_R__needs_reflexive_ta():
    with pytest.raises(PreconditionError, match="only defined for reflexive"):
        in_R(digraph(2, (0, 1)))
    with pytest.raises(PreconditionError, match="only defined for reflexive"):
        in_R(TWO_CYCLE)


def test_in_R__unknown_method():
    with pytest.raises(PreconditionError, match="Unknown method"):
        in_R(chain(1), "guess")


def test_in_Taghn():
    assert in_Taghn(chain(2), 2)
    assert in_Taghn(DIAMOND, 2)
    assert not in_Taghn(chain(2), 1)
    assert not in_Taghn(ANCHOR, 3)


def test_in_Taghn__cycle():
    with pytest.raises(PreconditionError, match="acyclic"):
        in_Taghn(TWO_CYCLE, 1)


def test_in_TaghnA():
    membership = in_TaghnA(ANCHOR, 3)
    assert membership
    assert [capsule.component for capsule in membership.certificate] == [(4,)]
    assert not in_TaghnA(HANGING, 2)


def test_in_TaghnA__wrong_height():
    with pytest.raises(PreconditionError, match="differs"):
        in_TaghnA(chain(2), 3)


def test_intervals_are_paths():
    assert intervals_are_paths(chain(3))
    assert not intervals_are_paths(DIAMOND)


class ChnParams(NamedTuple):
    graph: Digraph
    n: int
    member: bool


@pytest.mark.parametrize(
    **parametrize_helper({
        "chain": ChnParams(graph=chain(3), n=3, member=True),
        "chain at another height": ChnParams(graph=chain(3), n=2, member=False),
        "fork": ChnParams(graph=poset(3, (0, 1), (0, 2)), n=1, member=True),
        "diamond": ChnParams(graph=DIAMOND, n=2, member=False),
        "capsule poset": ChnParams(graph=ANCHOR, n=3, member=False),
        "not a poset": ChnParams(graph=digraph(2, (0, 1)), n=1, member=False),
    }),
)
def test_in_Chn(graph, n, member):
    assert in_Chn(graph, n) is member


def test_classify():
    report = classify(ANCHOR)
    assert report.to_record() == {
        "n": 5,
        "arcs": 13,
        "reflexive": True,
        "antisymmetric": True,
        "transitive": True,
        "poset": True,
        "in_Ta": True,
        "flat": False,
        "height": 3,
        "in_R": False,
        "in_R_method": "sum_condition",
        "in_Taghn": False,
        "in_TaghnA": True,
        "in_Chn": False,
    }
    assert [capsule.component for capsule in report.capsules] == [(4,)]


def test_classify__other_height():
    report = classify(chain(2), 3, method="direct")
    assert report.in_Taghn is False
    assert report.in_TaghnA is False
    assert report.in_R.method == "direct"


def test_classify__cycle():
    record = json.loads(classify(TWO_CYCLE).to_json())
    assert record["in_Ta"] is False
    assert record["height"] is None
    assert record["in_R"] is None


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_in_Chn__members_lie_in_R(n):
    for graph in generate(f"Chn:{n}", 4):
        assert in_R(graph), graph


@pytest.mark.parametrize("n", [0, 1, 2])
def test_in_Taghn__members_pass_the_shell_test(n):
    for graph in generate(f"Taghn:{n}", 3):
        assert in_TaghnA(graph, n).member, graph


def _chain_embedding(target: Digraph) -> VertexMap:
    return VertexMap(image=top_structure(target).top_paths[0].vertices, codomain_size=target.n)


@pytest.mark.parametrize("n", [1, 2])
def test_in_Chn__receives_a_strict_map_from_every_lower_digraph(n):
    targets = list(generate(f"Chn:{n}", 4))
    assert targets
    for graph in generate("Ta", 3):
        if height(graph) > n:
            continue
        witness = lambda_maps(graph, n)[1]
        for target in targets:
            assert is_strict(_chain_embedding(target).compose(witness), graph, target), (graph, target)
            assert count_homs(graph, target, strict=True) > 0


def test_in_Chn__diamond_receives_the_two_chain():
    diamond = poset(4, (0, 1), (0, 2), (1, 3), (2, 3))
    assert in_Chn(diamond, 2)
    witness = lambda_maps(chain(2), 2)[1]
    assert witness.image == (0, 1, 2)
    embedded = _chain_embedding(diamond).compose(witness)
    assert is_strict(embedded, chain(2), diamond)
