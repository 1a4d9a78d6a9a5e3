from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from .errors import FormatError, PreconditionError

if TYPE_CHECKING:
    from .digraph import Digraph
    from .typing import Image, Iterable, Sequence


__all__ = [
    "VertexMap",
    "is_homomorphism",
    "is_strict",
]


@dataclass(frozen=True, order=True)
class VertexMap:
    """
    Total map from the vertices `0..len(image)-1` of a source digraph to `0..codomain_size-1`.

    Ordering compares image tuples lexicographically.
    """

    image: Image
    codomain_size: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "image", tuple(self.image))
        if any(not 0 <= w < self.codomain_size for w in self.image):
            msg = f"Image {self.image} leaves the codomain of size {self.codomain_size}."
            raise PreconditionError(msg)

    @classmethod
    def identity(cls, n: int) -> VertexMap:
        return cls(image=tuple(range(n)), codomain_size=n)

    @classmethod
    def constant(cls, n: int, value: int, codomain_size: int) -> VertexMap:
        return cls(image=(value,) * n, codomain_size=codomain_size)

    @property
    def domain_size(self) -> int:
        return len(self.image)

    def __call__(self, vertex: int) -> int:
        return self.image[vertex]

    def __len__(self) -> int:
        return len(self.image)

    def compose(self, inner: VertexMap) -> VertexMap:
        """The map `self ∘ inner`, i.e. `inner` is applied first."""
        if inner.codomain_size != self.domain_size:
            msg = f"Cannot compose: inner codomain {inner.codomain_size} != outer domain {self.domain_size}."
            raise PreconditionError(msg)
        return VertexMap(image=tuple(self.image[w] for w in inner.image), codomain_size=self.codomain_size)

    def restrict(self, vertices: Sequence[int]) -> VertexMap:
        """Restriction to `vertices`, relabelled by position in the given sequence."""
        return VertexMap(image=tuple(self.image[v] for v in vertices), codomain_size=self.codomain_size)

    def agrees_on(self, other: VertexMap, vertices: Iterable[int]) -> bool:
        return all(self.image[v] == other.image[v] for v in vertices)

    def image_mask(self) -> int:
        mask = 0
        for w in self.image:
            mask |= 1 << w
        return mask

    def to_text(self) -> str:
        return "map " + " ".join(f"{v}->{w}" for v, w in enumerate(self.image))

    def __str__(self) -> str:
        return self.to_text()

    @classmethod
    def from_text(cls, text: str, codomain_size: int) -> VertexMap:
        parts = text.split()
        if not parts or parts[0] != "map":
            msg = f"Vertex map must start with 'map': {text!r}"
            raise FormatError(msg)

        assignment: dict[int, int] = {}
        for part in parts[1:]:
            try:
                source, target = (int(x) for x in part.split("->"))
            except ValueError as error:
                msg = f"Malformed assignment {part!r}."
                raise FormatError(msg) from error
            assignment[source] = target

        if sorted(assignment) != list(range(len(assignment))):
            msg = f"Vertex map is not total on 0..{len(assignment) - 1}: {text!r}"
            raise FormatError(msg)
        return cls(image=tuple(assignment[v] for v in range(len(assignment))), codomain_size=codomain_size)


def is_homomorphism(xi: VertexMap, source: Digraph, target: Digraph) -> bool:
    if xi.domain_size != source.n or xi.codomain_size != target.n:
        return False
    image = xi.image
    return all((image[v], image[w]) in target.arcs for v, w in source.arcs)


def is_strict(xi: VertexMap, source: Digraph, target: Digraph) -> bool:
    """Homomorphism that maps every proper arc to a proper arc."""
    if not is_homomorphism(xi, source, target):
        return False
    image = xi.image
    return all(image[v] != image[w] for v, w in source.arcs if v != w)
