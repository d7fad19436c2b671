import pytest


def pytest_addoption(parser):
    parser.addoption("--update-golden", action="store_true", default=False,
                     help="rewrite tests/golden/*.json from the current build")


@pytest.fixture
def update_golden(request):
    return request.config.getoption("--update-golden")


_CRITERIA: dict = {}


@pytest.fixture
def criterion():
    """Record the one-line verdict for an acceptance criterion."""
    def record(n, ok, detail):
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}"
        _CRITERIA[n] = line
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(_CRITERIA[n])
