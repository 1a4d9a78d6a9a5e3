import factory
from factory import fuzzy
from factory.random import randgen

from homlab.digraph import Digraph

__all__ = [
    "DigraphFactory",
]


def _arcs(obj) -> frozenset[tuple[int, int]]:
    arcs = set()
    for u in range(obj.n):
        for v in range(obj.n):
            if u == v:
                continue
            if obj.acyclic and u > v:
                continue
            if randgen.random() < obj.density:
                arcs.add((u, v))
    for v in range(obj.n):
        if obj.reflexive or (not obj.irreflexive and randgen.random() < obj.density):
            arcs.add((v, v))
    return frozenset(arcs)


class DigraphFactory(factory.Factory):
    """Random digraphs on `0..n-1`, drawn from factory-boy's seeded generator."""

    class Meta:
        model = Digraph

    class Params:
        density = fuzzy.FuzzyFloat(0.0, 1.0)
        acyclic = False
        reflexive = False
        irreflexive = False

    n = factory.Faker("pyint", min_value=1, max_value=4)
    arcs = factory.LazyAttribute(_arcs)
