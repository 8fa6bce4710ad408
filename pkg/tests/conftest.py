import sys
import warnings
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from metrized.admissible import NegativeMeasureWarning  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture(autouse=True)
def _quiet_signed_measures():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NegativeMeasureWarning)
        yield


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
