from fractions import Fraction

import pytest

from latshadow.exactgeom import build_edge_graph
from latshadow.polygen import GenSpec, generate

ACCEPTANCE_LINES: list[str] = []


def record(line: str) -> None:
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def F(*xs):
    return tuple(Fraction(x) for x in xs)


@pytest.fixture(scope="session")
def p5():
    p = generate(GenSpec.parse("family=polygon,n=2,k=2,variant=p5"))
    return p, build_edge_graph(p)


@pytest.fixture(scope="session")
def cube3():
    p = generate(GenSpec("cube", 3))
    return p, build_edge_graph(p)


@pytest.fixture(scope="session")
def square():
    p = generate(GenSpec("cube", 2))
    return p, build_edge_graph(p)


@pytest.fixture(scope="session")
def half_cross3():
    p = generate(GenSpec("cross_polytope", 3, variant="half"))
    return p, build_edge_graph(p)
