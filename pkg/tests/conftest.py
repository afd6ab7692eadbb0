import pytest

from thermocasimir.dielectric import aluminum_drude, aluminum_plasma
from thermocasimir.engine import QuadratureConfig


@pytest.fixture(scope="session")
def cfg():
    return QuadratureConfig()


@pytest.fixture(scope="session")
def drude():
    return aluminum_drude()


@pytest.fixture(scope="session")
def plasma():
    return aluminum_plasma()


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("]", 1)[1].split(".", 1)[0])):
            terminalreporter.write_line(line)
