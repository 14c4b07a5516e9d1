import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

# the dense oracles are slow on long chains
settings.register_profile("wahlkit", deadline=None)
settings.load_profile("wahlkit")

_LINES = pytest.StashKey[list]()


@pytest.fixture
def acceptance_lines(request) -> list:
    return request.config.stash.setdefault(_LINES, [])


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
