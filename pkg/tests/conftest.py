import pytest

from fziplab import ParabolicData, builtin, builtin_names

_acceptance_lines = []


def record_acceptance(line: str):
    """Stash a criterion summary line for the end-of-run report."""
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def catalog():
    """Every built-in parabolic datum, constructed once per run."""
    out = {}
    for name in builtin_names():
        datum, mu = builtin(name)
        out[name] = ParabolicData(datum, mu)
    return out
