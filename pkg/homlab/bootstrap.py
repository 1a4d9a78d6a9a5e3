from __future__ import annotations

import os
from typing import TYPE_CHECKING

import django
from django.conf import settings

from .logformat import build_logging_config
from .utils import homlab_logger

if TYPE_CHECKING:
    from .typing import Any, Optional


__all__ = [
    "MAX_N_ENV",
    "setup",
]


MAX_N_ENV = "HOMLAB_MAX_N"


def _env_overrides() -> dict[str, Any]:
    value = os.environ.get(MAX_N_ENV)
    if value is None:
        return {}
    try:
        max_n = int(value)
    except ValueError:
        homlab_logger.warning(f"Ignoring {MAX_N_ENV}={value!r}: not an integer.")
        return {}
    return {"MAX_CATALOG_N": max_n, "MAX_CANONICAL_N": max(max_n, 1)}


def setup(*, log_level: str = "INFO", overrides: Optional[dict[str, Any]] = None) -> None:
    """
    Configure Django settings for standalone use (command line, scripts, notebooks).

    Does nothing to the settings when they have already been configured, e.g. by a Django
    project or by `DJANGO_SETTINGS_MODULE`. The environment variable `HOMLAB_MAX_N`
    overrides the size caps in either case, with a warning.

    :param log_level: Level for the `homlab` logger.
    :param overrides: Values for the `HOMLAB` setting.
    """
    env = _env_overrides()

    if not settings.configured and not os.environ.get("DJANGO_SETTINGS_MODULE"):
        homlab = {**(overrides or {}), **env}
        settings.configure(
            HOMLAB=homlab,
            LOGGING=build_logging_config(log_level),
            USE_TZ=True,
        )
        django.setup()
    elif env:
        # The settings holder only reloads on this signal.
        from django.test.signals import setting_changed  # type: ignore[attr-defined]

        current = {**getattr(settings, "HOMLAB", {}), **(overrides or {}), **env}
        settings.HOMLAB = current
        setting_changed.send(sender=None, setting="HOMLAB", value=current, enter=True)

    if env:
        homlab_logger.warning(f"{MAX_N_ENV} overrides size caps: {env}")
