import pytest

from homlab.digraph import Subgraph, chain
from homlab.errors import PreconditionError
from homlab.maps import VertexMap
from homlab.verifier import CheckReport, Universe, Violation, build_witness, digraph_detail, witness_nu
from tests.helpers import digraph

C1_FAMILY = [Subgraph.whole(chain(1))]


def test_universe_describe():
    assert Universe("Ta", 4).describe() == "sources=Ta<=4"
    assert Universe("Ta", 4, "Chn", 3).describe() == "sources=Ta<=4 targets=Chn<=3"


def test_violation_render():
    violation = Violation("counts differ", (digraph_detail("G", chain(0)),))
    assert violation.render(2) == "violation 2: counts differ\n  G:\n    digraph 1\n    0 0"


def test_check_report_render():
    report = CheckReport("prop1", Universe("Ta", 2))
    report.merge(3, [Violation("first")], ["a note"])
    report.merge(2, [])
    report.elapsed = 1.5
    assert not report.passed
    assert report.render() == (
        "check prop1\nuniverse sources=Ta<=2\nviolation 1: first\nnote: a note\nviolations=1 instances=5\n"
    )


def test_check_report_passed():
    report = CheckReport("engine", Universe("random", 3, "random", 3))
    report.merge(4, [])
    assert report.passed
    assert report.summary() == "violations=0 instances=4"


def test_build_witness():
    witness = build_witness(chain(1), chain(2), chain(1), VertexMap((0, 2), 3), C1_FAMILY)
    assert witness.nu == 0
    assert witness.weight.as_dict() == {(0, 1): 3}
    assert witness.graph == chain(1)
    assert (witness.first_count, witness.second_count) == (6, 3)
    assert witness.counted_directly
    assert witness.separates
    assert witness.details()[1] == ("counts", "nu=0 first=6 second=3")


def test_build_witness__poset_variant():
    witness = build_witness(chain(1), chain(2), chain(1), VertexMap((0, 2), 3), C1_FAMILY, poset_variant=True)
    assert witness.poset_variant
    assert witness.separates


def test_build_witness__counted_by_formula(settings):
    settings.HOMLAB = {"WITNESS_DIRECT_MAX_VERTICES": 1}
    witness = build_witness(chain(1), chain(2), chain(1), VertexMap((0, 2), 3), C1_FAMILY)
    assert not witness.counted_directly
    assert (witness.first_count, witness.second_count) == (6, 3)


def test_build_witness__poset_variant_needs_posets():
    second = digraph(2, (0, 1), (1, 0), loops=True)
    with pytest.raises(PreconditionError, match="poset targets"):
        build_witness(chain(1), chain(2), second, VertexMap((0, 2), 3), C1_FAMILY, poset_variant=True)


def test_witness_nu__never():
    assert witness_nu(chain(1), chain(1), chain(2), VertexMap((0, 1), 2), C1_FAMILY) is None
    assert build_witness(chain(1), chain(1), chain(2), VertexMap((0, 1), 2), C1_FAMILY) is None


def test_witness_nu__needs_maximal_map():
    with pytest.raises(PreconditionError, match="does not attain"):
        witness_nu(chain(1), chain(2), chain(1), VertexMap((0, 1), 3), C1_FAMILY)
