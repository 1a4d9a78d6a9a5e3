from __future__ import annotations

import logging
from pathlib import Path
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .typing import Any


__all__ = [
    "DotPathFormatter",
    "build_logging_config",
]


BASE_PATH = str(Path(__file__).resolve().parent.parent)


class DotPathFormatter(logging.Formatter):
    """Formatter that shows the full dot import path of the module the record was logged in."""

    def format(self, record: logging.LogRecord) -> str:
        record.module = self.get_dotpath(record)
        return super().format(record)

    def get_dotpath(self, record: logging.LogRecord) -> str:
        # Installed package
        split_path = record.pathname.split("site-packages")
        if len(split_path) > 1:
            return self.format_dotpath(split_path[-1][1:])

        # Source checkout
        split_path = record.pathname.split(BASE_PATH)
        if len(split_path) > 1:
            return self.format_dotpath(split_path[-1][1:])

        return record.module

    @staticmethod
    def format_dotpath(path: str) -> str:
        if path.endswith(".py"):
            path = path[:-3]
        return path.replace("/", ".").replace("\\", ".")


def build_logging_config(level: str = "INFO") -> dict[str, Any]:
    """
    Logging configuration in `logging.config.dictConfig` form.

    :param level: Level for the `homlab` logger. The root logger stays at WARNING.
    """
    return {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {
            "common": {
                "()": DotPathFormatter,
                "format": "{asctime} | {levelname} | {module}.{funcName}:{lineno} | {message}",
                "datefmt": "%Y-%m-%dT%H:%M:%S%z",
                "style": "{",
            },
        },
        "handlers": {
            "stderr": {
                "class": "logging.StreamHandler",
                "formatter": "common",
                "stream": "ext://sys.stderr",
            },
        },
        "loggers": {
            "homlab": {
                "handlers": ["stderr"],
                "level": level.upper(),
                "propagate": False,
            },
        },
        "root": {
            "level": "WARNING",
            "handlers": ["stderr"],
        },
    }
