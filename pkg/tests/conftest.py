import pytest

from prhs.centralizer import centralizer_algebra
from prhs.groups import build_example

# per-criterion PASS/FAIL lines from the acceptance gate; printed in the
# terminal summary so they stay visible under output capture
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def gamma44():
    return build_example("gamma44")


@pytest.fixture(scope="session")
def gamma77():
    return build_example("gamma77")


@pytest.fixture(scope="session")
def cent44(gamma44):
    G, _ = gamma44
    return centralizer_algebra(G)


@pytest.fixture(scope="session")
def cent77(gamma77):
    G, _ = gamma77
    return centralizer_algebra(G)
