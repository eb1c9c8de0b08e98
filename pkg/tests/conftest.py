import pytest

from arborrep.families import (DefiningVector, dihedral_build, ggs_build, gl_build,
                               s3_regular_wreath)


@pytest.fixture(scope="session")
def ggs3():
    """GGS group for p = 3, e = (1, 2, 0) on the ternary tree of depth 3."""
    return ggs_build(DefiningVector(3, 1, (1, 2, 0)), 3)


@pytest.fixture(scope="session")
def ggs3_deep():
    return ggs_build(DefiningVector(3, 1, (1, 2, 0)), 4)


@pytest.fixture(scope="session")
def dihedral4():
    return dihedral_build(4)


@pytest.fixture(scope="session")
def s3wreath():
    return s3_regular_wreath(2)


@pytest.fixture(scope="session")
def gl_padic():
    return gl_build(3, 1, 3, "p-adic")


@pytest.fixture(scope="session")
def gl_laurent():
    return gl_build(3, 1, 3, "laurent")


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
