from __future__ import annotations

from typing import TYPE_CHECKING

from django.test.signals import setting_changed  # type: ignore[attr-defined]
from settings_holder import SettingsHolder, reload_settings

from .typing import NamedTuple

if TYPE_CHECKING:
    from .typing import Any, Union


__all__ = [
    "homlab_settings",
]


SETTING_NAME: str = "HOMLAB"


class DefaultSettings(NamedTuple):
    MAX_CATALOG_N: int = 7
    """Hard cap on the vertex count of generated catalogs."""

    MAX_CANONICAL_N: int = 9
    """Largest digraph the exact canonical form is computed for."""

    MAX_SUM_CONDITION_N: int = 8
    """Largest digraph the path-sum membership test for the class R enumerates all paths of."""

    VERIFY_NU_CAP: int = 2
    """Largest expansion exponent used by brute-force extension count checks."""

    WITNESS_SCAN_LIMIT: int = 10_000
    """Upper bound for the exponent scan when searching for a separating expansion."""

    WITNESS_DIRECT_MAX_VERTICES: int = 40
    """Separating expansions up to this size are re-counted directly instead of via the class formula."""

    JOBS: int = 0
    """Worker processes for catalog sweeps. Zero means all available CPUs, one disables multiprocessing."""

    RANDOM_SEED: int = 20240101
    """Seed for the randomized engine oracle check."""

    ENGINE_ORACLE_INSTANCES: int = 500
    """Number of random instances compared against the naive all-maps counter."""

    CHECK_MAX_N: int = 4
    """Default vertex bound for source digraphs in verifier sweeps."""

    CHECK_TARGET_MAX_N: int = 3
    """Default vertex bound for target digraphs in verifier sweeps."""

    SHELL_STRATEGY: str = "frontier"
    """Default shell construction used for capsule data, either 'frontier' or 'full'."""

    BOUNDS_STRATEGY: str = "first"
    """Which admissible capsule bound pair is chosen, either 'first' or 'last' in lexicographic order."""


DEFAULTS: dict[str, Any] = DefaultSettings()._asdict()
IMPORT_STRINGS: set[Union[bytes, str]] = set()
REMOVED_SETTINGS: set[str] = {
    "MAX_N",
    "NU_CAP",
}

homlab_settings = SettingsHolder(
    setting_name=SETTING_NAME,
    defaults=DEFAULTS,
    import_strings=IMPORT_STRINGS,
    removed_settings=REMOVED_SETTINGS,
)

reload_my_settings = reload_settings(SETTING_NAME, homlab_settings)
setting_changed.connect(reload_my_settings)
