import pytest


def pytest_configure(config):
    config._criterion_lines = []


@pytest.fixture
def criterion_log(request):
    """Sink for acceptance verdicts, echoed after the run escapes capture."""
    return request.config._criterion_lines


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_criterion_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
