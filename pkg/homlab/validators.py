from __future__ import annotations

from .settings import homlab_settings
from .typing import Collection, Optional

__all__ = [
    "validate_check_id",
    "validate_jobs",
    "validate_max_n",
    "validate_nu",
    "validate_vertex_count",
]


def validate_max_n(max_n: int, *, cap: Optional[int] = None) -> int:
    """
    Validate a catalog size bound.

    :param max_n: Largest vertex count requested.
    :param cap: Upper limit. Defaults to the `MAX_CATALOG_N` setting.
    :raises ValueError: Validation error.
    """
    if cap is None:
        cap = homlab_settings.MAX_CATALOG_N

    if not isinstance(max_n, int) or isinstance(max_n, bool) or max_n < 1:
        msg = "Argument 'max_n' must be a positive integer."
        raise ValueError(msg)

    if max_n > cap:
        msg = f"Requesting digraphs with {max_n} vertices exceeds the cap of {cap}."
        raise ValueError(msg)

    return max_n


def validate_nu(nu: int) -> int:
    """
    Validate an expansion exponent.

    :raises ValueError: Validation error.
    """
    if not isinstance(nu, int) or isinstance(nu, bool) or nu < 0:
        msg = "Argument 'nu' must be a non-negative integer."
        raise ValueError(msg)
    return nu


def validate_jobs(jobs: Optional[int]) -> Optional[int]:
    if jobs is not None and (not isinstance(jobs, int) or jobs < 0):
        msg = "Argument 'jobs' must be a non-negative integer."
        raise ValueError(msg)
    return jobs


def validate_vertex_count(n: int) -> int:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        msg = f"A digraph needs at least one vertex, got {n!r}."
        raise ValueError(msg)
    return n


def validate_check_id(check_id: str, choices: Collection[str]) -> str:
    """
    Validate a verifier check name.

    :raises ValueError: Validation error.
    """
    if check_id not in choices:
        msg = f"Unknown check {check_id!r}. Choices: {', '.join(sorted(choices))}."
        raise ValueError(msg)
    return check_id
