import pytest

from nakajima_hall.nakajima import NakajimaSetup, a1_bridgeland, build_orbit_quiver, exa1, exa2


def _setup(fixture, p=None):
    cat, F, C = fixture(p or 3)
    oq = build_orbit_quiver(cat, F, C)
    return NakajimaSetup(oq) if p is None else NakajimaSetup(oq, p=p)


@pytest.fixture(scope="session")
def exa2_setup():
    return _setup(exa2)


@pytest.fixture(scope="session")
def exa1_setup():
    return _setup(exa1)


@pytest.fixture(scope="session")
def a1_setup():
    return _setup(a1_bridgeland)


@pytest.fixture(scope="session")
def exa2_small():
    return _setup(exa2, 3)


@pytest.fixture(scope="session")
def exa1_small():
    return _setup(exa1, 3)


@pytest.fixture(scope="session")
def a1_small():
    return _setup(a1_bridgeland, 3)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for number in sorted(lines):
            terminalreporter.write_line(lines[number])
