import pytest

from dirichlet_biquad.kernels import available_backends

BACKENDS = available_backends()


@pytest.fixture(params=sorted(BACKENDS))
def kern(request):
    """Each available kernel implementation in turn."""
    return BACKENDS[request.param]


# acceptance criteria report one line each at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def acceptance_lines():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
