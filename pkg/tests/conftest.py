# tests/conftest.py
# Shared fixtures; session log files are disabled for test runs.

import os

os.environ.setdefault("RMSCAT_LOG_DIR", "")

import pytest  # noqa: E402

from physics.rosenmorse import RMParams  # noqa: E402
from utils.config import default_config  # noqa: E402


@pytest.fixture
def config():
    """Built-in defaults, independent of the local settings.py."""
    return default_config()


@pytest.fixture
def well():
    """Asymmetric well with two bound states and a barrier threshold at k = 2."""
    return RMParams(2.5, 1.0)


@pytest.fixture(autouse=True)
def _clear_stop_flag():
    from utils.helpers import STOP_EVT
    STOP_EVT.clear()
    yield
    STOP_EVT.clear()
