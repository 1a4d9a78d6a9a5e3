from homlab.digraph import Digraph
from homlab.typing import NamedTuple, TypedDict, TypeVar

__all__ = [
    "digraph",
    "parametrize_helper",
    "poset",
]


TNamedTuple = TypeVar("TNamedTuple", bound=NamedTuple)


class ParametrizeArgs(TypedDict):
    argnames: list[str]
    argvalues: list[TNamedTuple]
    ids: list[str]


def parametrize_helper(__tests: dict[str, TNamedTuple], /) -> ParametrizeArgs:
    """Construct parametrize input while setting test IDs."""
    assert __tests, "I need some tests, please!"  # noqa: S101
    values = list(__tests.values())
    try:
        return ParametrizeArgs(
            argnames=list(values[0].__class__.__annotations__),
            argvalues=values,
            ids=list(__tests),
        )
    except AttributeError as error:
        msg = "Improper configuration. Did you use a NamedTuple for TNamedTuple?"
        raise RuntimeError(msg) from error


def digraph(n: int, *arcs: tuple[int, int], loops: bool = False) -> Digraph:
    """Digraph on `0..n-1` with the given arcs, and a loop at every vertex if `loops`."""
    arc_set = set(arcs)
    if loops:
        arc_set |= {(v, v) for v in range(n)}
    return Digraph(n=n, arcs=frozenset(arc_set))


def poset(n: int, *covers: tuple[int, int]) -> Digraph:
    """The poset on `0..n-1` generated by the given cover relations."""
    below = {v: {v} for v in range(n)}
    changed = True
    while changed:
        changed = False
        for u, v in covers:
            if not below[u] <= below[v]:
                below[v] |= below[u]
                changed = True
    return Digraph(n=n, arcs=frozenset((u, v) for v in range(n) for u in below[v]))
