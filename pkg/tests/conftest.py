import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gcospec.graph import (  # noqa: E402
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    path_graph,
    star_graph,
)

DATA = Path(__file__).parent / "data"


@pytest.fixture
def named():
    return {
        "K1": complete_graph(1),
        "K2": complete_graph(2),
        "K3": complete_graph(3),
        "K4": complete_graph(4),
        "P3": path_graph(3),
        "P4": path_graph(4),
        "C4": cycle_graph(4),
        "C5": cycle_graph(5),
        "K14": star_graph(4),
        "C4K1": disjoint_union(cycle_graph(4), complete_graph(1)),
        "E2": empty_graph(2),
        "E3": empty_graph(3),
    }


@pytest.fixture
def data_dir():
    return DATA
