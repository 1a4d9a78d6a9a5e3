import pytest

from homlab.digraph import chain
from homlab.errors import FormatError
from homlab.formats import (
    format_catalog_header,
    format_digraph,
    format_weight,
    parse_catalog_header,
    parse_digraph,
    parse_digraphs,
    parse_weight,
    read_digraph,
    read_weight,
    to_dot,
)
from homlab.weights import ArcWeight
from tests.helpers import digraph


def test_format_digraph():
    assert format_digraph(chain(1)) == "digraph 2\n0 0\n0 1\n1 1\n"


def test_parse_digraph__comments_and_blank_lines():
    text = "# the arc\n\ndigraph 2\n  0 1  \n# done\n"
    assert parse_digraph(text) == digraph(2, (0, 1))


def test_parse_digraph__isolated_vertices():
    assert parse_digraph("digraph 3\n") == digraph(3)


def test_parse_digraphs():
    graphs = parse_digraphs(format_digraph(chain(0)) + format_digraph(chain(1)))
    assert graphs == [chain(0), chain(1)]


@pytest.mark.parametrize(
    ("text", "message"),
    [
        ("0 1\n", "expected a 'digraph <n>' header"),
        ("digraph 2\n0\n", "expected 2 integers"),
        ("digraph 2\n0 a\n", "expected integers"),
        ("digraph 2\n0 2\n", "leaves the vertex set"),
        ("digraph 0\n", "at least one vertex"),
        ("digraph 1\ndigraph 1\n", "exactly one digraph record"),
    ],
)
def test_parse_digraph__errors(text, message):
    with pytest.raises(FormatError, match=message):
        parse_digraph(text)


def test_weight_text():
    alpha = ArcWeight.from_mapping(chain(2), {(0, 2): 2, (1, 2): 1})
    assert format_weight(alpha) == "weight\n0 2 2\n1 2 1\n"
    assert parse_weight("weight\n# only one arc\n0 2 2\n", chain(2)).as_dict() == {(0, 1): 0, (0, 2): 2, (1, 2): 0}


@pytest.mark.parametrize(
    ("text", "message"),
    [
        ("0 1 1\n", "'weight' header"),
        ("", "'weight' header"),
        ("weight\n1 1 2\n", "proper arcs"),
        ("weight\n0 1\n", "expected 3 integers"),
    ],
)
def test_parse_weight__errors(text, message):
    with pytest.raises(FormatError, match=message):
        parse_weight(text, chain(1))


def test_catalog_header():
    assert format_catalog_header("Chn:2", 5, 12) == "catalog Chn:2 5 12"
    assert parse_catalog_header("catalog Chn:2 5 12") == ("Chn:2", 5, 12)
    with pytest.raises(FormatError, match="Malformed"):
        parse_catalog_header("catalog Chn:2 five 12")


def test_read_files(write_digraph, write_weight, c1):
    graph_path = write_digraph("c1.dg", c1)
    weight_path = write_weight("c1.w", ArcWeight.from_mapping(c1, {(0, 1): 3}))
    assert read_digraph(graph_path) == c1
    assert read_weight(weight_path, c1).support_items() == (((0, 1), 3),)


def test_to_dot():
    assert to_dot(digraph(2, (0, 1)), highlight=[1]) == 'digraph G {\n  0;\n  1 [style="filled"];\n  0 -> 1;\n}\n'
