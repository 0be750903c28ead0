from pathlib import Path

import pytest

from egostat import read_edge_list

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def karate():
    return read_edge_list(DATA / "karate.txt")


@pytest.fixture(params=["numba", "numpy"])
def backend(request):
    return request.param
