import sys
from pathlib import Path

import pytest

from mfccdtw import kernels

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    with kernels.backend(request.param):
        yield request.param


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
