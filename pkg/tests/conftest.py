import numpy as np
import pytest

from polyreach import fixtures
from polyreach.variation import VariationModel, synthetic_model


@pytest.fixture(scope="session")
def model() -> VariationModel:
    return synthetic_model(0)


@pytest.fixture(scope="session")
def nets():
    return {name: fixtures.build_network(name) for name in fixtures.FIXTURE_NAMES}


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
