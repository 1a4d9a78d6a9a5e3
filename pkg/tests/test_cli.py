import json

import pytest

from homlab import cli
from homlab.digraph import chain
from homlab.verifier import CheckReport, Universe, Violation
from homlab.weights import ArcWeight
from tests.helpers import poset

ANCHOR = poset(5, (0, 1), (1, 2), (2, 3), (0, 4), (4, 3))


def test_count(write_digraph, c1, capsys):
    path = str(write_digraph("c1.dg", c1))
    assert cli.main(["count", "--from", path, "--to", path]) == cli.EXIT_OK
    assert capsys.readouterr().out == "3\n"

    assert cli.main(["count", "--from", path, "--to", path, "--strict"]) == cli.EXIT_OK
    assert capsys.readouterr().out == "1\n"


def test_enumerate(write_digraph, c1, capsys):
    path = str(write_digraph("c1.dg", c1))
    assert cli.main(["enumerate", "--from", path, "--to", path]) == cli.EXIT_OK
    assert capsys.readouterr().out == "map 0->0 1->0\nmap 0->0 1->1\nmap 0->1 1->1\n"


def test_expand(write_digraph, write_weight, c1, tmp_path):
    graph = str(write_digraph("c1.dg", c1))
    weight = str(write_weight("c1.w", ArcWeight.from_mapping(c1, {(0, 1): 1})))
    out = tmp_path / "expanded.dg"
    assert cli.main(["expand", "--graph", graph, "--weight", weight, "--nu", "1", "--out", str(out)]) == cli.EXIT_OK
    assert out.read_text(encoding="utf-8") == "digraph 3\n0 0\n0 1\n0 2\n1 1\n2 1\n"


def test_classify(write_digraph, c3, capsys):
    path = str(write_digraph("c3.dg", c3))
    assert cli.main(["classify", "--graph", path, "--method", "direct"]) == cli.EXIT_OK
    record = json.loads(capsys.readouterr().out)
    assert record["poset"] is True
    assert record["height"] == 3
    assert record["in_R"] is True
    assert record["in_Chn"] is True


def test_shells_and_phi(write_digraph, capsys):
    path = str(write_digraph("anchor.dg", ANCHOR))
    assert cli.main(["shells", "--graph", path]) == cli.EXIT_OK
    assert capsys.readouterr().out.startswith("component 4\nbounds 0 3 length 3\n")

    assert cli.main(["phi", "--graph", path, "--strategy", "full"]) == cli.EXIT_OK
    assert capsys.readouterr().out == "1/2\n"


def test_shells__no_capsule(write_digraph, capsys):
    path = str(write_digraph("hanging.dg", poset(4, (0, 1), (1, 2), (3, 2))))
    assert cli.main(["shells", "--graph", path]) == cli.EXIT_OK
    assert capsys.readouterr().out == "no capsule\n"

    assert cli.main(["phi", "--graph", path]) == cli.EXIT_USAGE
    assert "without capsule bounds" in capsys.readouterr().err


def test_catalog_gen(capsys, tmp_path):
    assert cli.main(["catalog", "gen", "--kind", "posets", "--max-n", "2"]) == cli.EXIT_OK
    assert capsys.readouterr().out.startswith("catalog posets 2 3\n")

    out = tmp_path / "chn.cat"
    assert cli.main(["catalog", "gen", "--kind", "Chn:1", "--max-n", "2", "--out", str(out)]) == cli.EXIT_OK
    assert out.read_text(encoding="utf-8").startswith("catalog Chn:1 2 1\n")


def test_catalog_gen__unknown_kind(capsys):
    assert cli.main(["catalog", "gen", "--kind", "lattices", "--max-n", "2"]) == cli.EXIT_USAGE
    assert "Unknown catalog kind" in capsys.readouterr().err


def test_verify(tmp_path):
    report = tmp_path / "prop1.txt"
    argv = ["verify", "--check", "prop1", "--max-n", "2", "--report", str(report), "--jobs", "1"]
    assert cli.main(argv) == cli.EXIT_OK
    assert report.read_text(encoding="utf-8").startswith("check prop1\n")


def test_verify__violations(monkeypatch, capsys):
    failing = CheckReport("prop1", Universe("reflexive Ta", 2), instances=1, violations=[Violation("broken")])
    monkeypatch.setattr(cli, "run_check", lambda check_id, **options: failing)
    assert cli.main(["verify", "--check", "prop1"]) == cli.EXIT_VIOLATIONS
    assert "violation 1: broken" in capsys.readouterr().out


def test_missing_file(capsys, tmp_path):
    missing = str(tmp_path / "missing.dg")
    assert cli.main(["count", "--from", missing, "--to", missing]) == cli.EXIT_USAGE
    assert "homlab: " in capsys.readouterr().err


def test_malformed_file(capsys, tmp_path):
    path = tmp_path / "bad.dg"
    path.write_text("digraph 2\n0 5\n", encoding="utf-8")
    assert cli.main(["classify", "--graph", str(path)]) == cli.EXIT_USAGE
    assert "leaves the vertex set" in capsys.readouterr().err


def test_unknown_check():
    with pytest.raises(SystemExit) as error:
        cli.main(["verify", "--check", "thm9"])
    assert error.value.code == cli.EXIT_USAGE


def test_expand__negative_exponent(write_digraph, write_weight, c1, capsys):
    graph = str(write_digraph("c1.dg", c1))
    weight = str(write_weight("c1.w", ArcWeight.zero(c1)))
    assert cli.main(["expand", "--graph", graph, "--weight", weight, "--nu", "-1"]) == cli.EXIT_USAGE
    assert "non-negative" in capsys.readouterr().err


def test_chain_fixture_matches_file(write_digraph, c3):
    assert write_digraph("c3.dg", c3).read_text(encoding="utf-8").startswith("digraph 4\n0 0\n0 1\n")
    assert chain(3) == c3
