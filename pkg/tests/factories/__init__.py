from .digraph import DigraphFactory

__all__ = [
    "DigraphFactory",
]
