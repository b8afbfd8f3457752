import pytest

_CRITERIA: dict = {}


@pytest.fixture
def criterion(request):
    """Record the outcome of one acceptance criterion under the test's ``n`` marker."""
    n = request.node.get_closest_marker("criterion").args[0]
    _CRITERIA[n] = "FAIL"

    def done(ok: bool):
        _CRITERIA[n] = "PASS" if ok else "FAIL"
        return ok

    return done


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {n:2d}: {_CRITERIA[n]}")
