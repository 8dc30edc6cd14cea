import sys
from pathlib import Path

import pytest

from morphdes import fixtures

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def smart_home():
    return fixtures.load_smart_home()


@pytest.fixture(scope="session")
def smart_home_full():
    return fixtures.load_smart_home(full=True)


@pytest.fixture(scope="session")
def fixture_path():
    return str(fixtures.fixture_path("smart_home"))
