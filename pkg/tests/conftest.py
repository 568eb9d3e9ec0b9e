import json
from pathlib import Path

import pytest

from covstat.tiled import TiledSurface

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# filled by test_acceptance, printed once at the end of the run
ACCEPTANCE_LINES = {}


def load_fixture(name):
    with open(FIXTURES / f"{name}.json") as fh:
        return TiledSurface.from_json(json.load(fh))


@pytest.fixture
def fixture_surface():
    return load_fixture


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
