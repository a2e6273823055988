import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from singular_bruhat import CoxeterGroup  # noqa: E402
from oracles import Model, element_map  # noqa: E402

SMALL = ["A1xA1", "A2", "B2", "I2(5)", "I2(7)", "A3", "B3"]


@lru_cache(maxsize=None)
def group(name: str) -> CoxeterGroup:
    return CoxeterGroup.from_preset(name)


@lru_cache(maxsize=None)
def model(name: str) -> Model:
    return Model.for_preset(name)


@lru_cache(maxsize=None)
def images(name: str) -> list:
    return element_map(group(name), model(name))


@pytest.fixture
def A2():
    return group("A2")


@pytest.fixture
def B2():
    return group("B2")


@pytest.fixture
def A3():
    return group("A3")


@pytest.fixture
def B3():
    return group("B3")


@pytest.fixture
def H3():
    return group("H3")


# acceptance lines, printed at the end of the run whatever the capture mode
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
