from __future__ import annotations

from typing import TYPE_CHECKING

import pytest
from factory.random import reseed_random

from homlab.digraph import chain
from homlab.formats import format_digraph, format_weight

if TYPE_CHECKING:
    from pathlib import Path

    from homlab.digraph import Digraph
    from homlab.typing import Callable
    from homlab.weights import ArcWeight


@pytest.fixture(autouse=True)
def _seeded_factories() -> None:
    reseed_random(20240101)


@pytest.fixture()
def write_digraph(tmp_path: Path) -> Callable[[str, Digraph], Path]:
    def func(name: str, graph: Digraph) -> Path:
        path = tmp_path / name
        path.write_text(format_digraph(graph), encoding="utf-8")
        return path

    return func


@pytest.fixture()
def write_weight(tmp_path: Path) -> Callable[[str, ArcWeight], Path]:
    def func(name: str, alpha: ArcWeight) -> Path:
        path = tmp_path / name
        path.write_text(format_weight(alpha), encoding="utf-8")
        return path

    return func


@pytest.fixture()
def c1() -> Digraph:
    return chain(1)


@pytest.fixture()
def c3() -> Digraph:
    return chain(3)
