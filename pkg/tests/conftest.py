import pytest

_acceptance = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_acceptance] = []


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_acceptance, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip("."))):
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance_log(request):
    return request.config.stash[_acceptance]
