import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from eqsamp.sensing import build_dictionary  # noqa: E402
from eqsamp.signal_model import make_monocycle  # noqa: E402


@pytest.fixture(scope="session")
def template256():
    return make_monocycle(2e9, 16e9, 256)


@pytest.fixture(scope="session")
def dict256(template256):
    return build_dictionary(template256)


@pytest.fixture
def rng():
    return np.random.default_rng(20090101)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "CRITERIA_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
