from __future__ import annotations

__all__ = [
    "CatalogError",
    "FormatError",
    "HomLabError",
    "InvariantViolation",
    "PreconditionError",
]


class HomLabError(Exception):
    """Expected error raised by the homomorphism laboratory."""


class PreconditionError(HomLabError, ValueError):
    """An operation was called outside of its domain, e.g. reduction of a digraph with a cycle."""


class InvariantViolation(HomLabError, AssertionError):  # noqa: N818
    """A structural self-check that must always hold has failed. Always an implementation bug."""


class FormatError(HomLabError, ValueError):
    """Malformed text input for a digraph, arc weight, vertex map or catalog file."""


class CatalogError(HomLabError):
    """Catalog kind is unknown or the requested size is above the configured cap."""
