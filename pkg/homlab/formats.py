"""
Plain text forms of digraphs, arc weights and catalogs.

A digraph is written as a `digraph <n>` header followed by one `u v` line per arc in ascending
order. An arc weight is a `weight` header followed by `u v k` lines for its positive entries.
Lines starting with `#` and blank lines are ignored when reading.
"""

from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING

from .digraph import Digraph
from .errors import FormatError
from .weights import ArcWeight

if TYPE_CHECKING:
    from .typing import Iterable, Iterator, Union


__all__ = [
    "format_catalog_header",
    "format_digraph",
    "format_weight",
    "parse_catalog_header",
    "parse_digraph",
    "parse_digraphs",
    "parse_weight",
    "read_digraph",
    "read_weight",
    "to_dot",
]


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            yield number, stripped


def _integers(line: str, number: int, count: int) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        msg = f"Line {number}: expected {count} integers, got {line!r}."
        raise FormatError(msg)
    try:
        return [int(part) for part in parts]
    except ValueError as error:
        msg = f"Line {number}: expected integers, got {line!r}."
        raise FormatError(msg) from error


def format_digraph(graph: Digraph) -> str:
    lines = [f"digraph {graph.n}"]
    lines.extend(f"{u} {v}" for u, v in graph.sorted_arcs)
    return "\n".join(lines) + "\n"


def parse_digraphs(text: str) -> list[Digraph]:
    """Read consecutive digraph records. Anything before the first header is an error."""
    records: list[tuple[int, list[tuple[int, int]]]] = []
    for number, line in _content_lines(text):
        if line.startswith("digraph"):
            (n,) = _integers(line[len("digraph") :], number, 1)
            records.append((n, []))
        elif not records:
            msg = f"Line {number}: expected a 'digraph <n>' header, got {line!r}."
            raise FormatError(msg)
        else:
            u, v = _integers(line, number, 2)
            records[-1][1].append((u, v))

    graphs = []
    for n, arcs in records:
        try:
            graphs.append(Digraph(n=n, arcs=frozenset(arcs)))
        except ValueError as error:
            raise FormatError(str(error)) from error
    return graphs


def parse_digraph(text: str) -> Digraph:
    graphs = parse_digraphs(text)
    if len(graphs) != 1:
        msg = f"Expected exactly one digraph record, found {len(graphs)}."
        raise FormatError(msg)
    return graphs[0]


def format_weight(alpha: ArcWeight) -> str:
    lines = ["weight"]
    lines.extend(f"{u} {v} {k}" for (u, v), k in alpha.support_items())
    return "\n".join(lines) + "\n"


def parse_weight(text: str, host: Digraph) -> ArcWeight:
    lines = list(_content_lines(text))
    if not lines or lines[0][1] != "weight":
        msg = "An arc weight must start with a 'weight' header."
        raise FormatError(msg)

    values: dict[tuple[int, int], int] = {}
    for number, line in lines[1:]:
        u, v, k = _integers(line, number, 3)
        values[(u, v)] = k
    try:
        return ArcWeight.from_mapping(host, values)
    except ValueError as error:
        raise FormatError(str(error)) from error


def format_catalog_header(kind: str, max_n: int, count: int) -> str:
    return f"catalog {kind} {max_n} {count}"


def parse_catalog_header(line: str) -> tuple[str, int, int]:
    parts = line.split()
    if len(parts) != 4 or parts[0] != "catalog":
        msg = f"Malformed catalog header {line!r}."
        raise FormatError(msg)
    try:
        return parts[1], int(parts[2]), int(parts[3])
    except ValueError as error:
        msg = f"Malformed catalog header {line!r}."
        raise FormatError(msg) from error


def read_digraph(path: Union[str, Path]) -> Digraph:
    return parse_digraph(Path(path).read_text(encoding="utf-8"))


def read_weight(path: Union[str, Path], host: Digraph) -> ArcWeight:
    return parse_weight(Path(path).read_text(encoding="utf-8"), host)


def to_dot(graph: Digraph, *, name: str = "G", highlight: Iterable[int] = ()) -> str:
    """DOT source for inspection with graphviz. Highlighted vertices are drawn filled."""
    marked = set(highlight)
    lines = [f"digraph {name} {{"]
    for v in graph.vertices:
        style = ' [style="filled"]' if v in marked else ""
        lines.append(f"  {v}{style};")
    lines.extend(f"  {u} -> {v};" for u, v in graph.sorted_arcs)
    lines.append("}")
    return "\n".join(lines) + "\n"
